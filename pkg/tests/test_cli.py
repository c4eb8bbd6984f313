import json

import pytest

from sfclust.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_map_cell_to_rank(capsys):
    code, out, _ = run_cli(capsys, "map", "onion2d", "--side", "4", "--cell", "1,1")
    assert code == 0 and out.strip() == "12"


def test_map_rank_to_cell(capsys):
    code, out, _ = run_cli(capsys, "map", "onion2d", "--side", "4", "--rank", "12")
    assert code == 0 and out.strip() == "1,1"


def test_map_requires_power_of_two_for_hilbert(capsys):
    code, _, err = run_cli(capsys, "map", "hilbert2d", "--side", "6", "--cell", "1,1")
    assert code == 2
    assert "power of two" in err


def test_map_needs_exactly_one_input(capsys):
    code, _, err = run_cli(capsys, "map", "onion2d", "--side", "4")
    assert code == 2


def test_cluster_json(capsys):
    code, out, _ = run_cli(
        capsys, "cluster", "onion2d", "--side", "8", "--origin", "0,1", "--lengths", "7,7",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["count"] == 1
    assert payload["intervals"] == [[15, 63]]


def test_cluster_whole_universe_csv(capsys):
    code, out, _ = run_cli(
        capsys, "cluster", "z2d", "--side", "4", "--origin", "0,0", "--lengths", "4,4",
        "--format", "csv",
    )
    assert code == 0
    assert "0,15" in out and "# clusters: 1" in out


def test_cluster_z_small_query(capsys):
    code, out, _ = run_cli(
        capsys, "cluster", "z2d", "--side", "4", "--origin", "1,1", "--lengths", "2,2",
    )
    payload = json.loads(out)
    assert payload["count"] == 4
    assert payload["intervals"] == [[3, 3], [6, 6], [9, 9], [12, 12]]


def test_cluster_out_of_bounds(capsys):
    code, _, err = run_cli(
        capsys, "cluster", "onion2d", "--side", "8", "--origin", "5,5", "--lengths", "4,4",
    )
    assert code == 2 and "does not fit" in err


def test_verify_identity_scope(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "lemma1", "--max-side", "6")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["passed"] is True
    assert all(c["passed"] for c in report["checks"])


def test_verify_formula_scope(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "thm1", "--sides", "8")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True


def test_verify_soundness_scope(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "soundness", "--max-side", "8")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True


def test_verify_closed_form_scope_reports_known_defect(capsys):
    # the quadrant closed form diverges from the definitional minimum on
    # extreme shapes; the verify report must surface that honestly (exit 1)
    code, out, _ = run_cli(capsys, "verify", "--scope", "lambda", "--max-side", "8")
    report = json.loads(out)
    assert code == 1 and report["passed"] is False
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["neighbor-crossing minimum: exact vs brute"]["passed"] is True
    assert by_name["neighbor-crossing minimum: closed form vs brute"]["passed"] is False
    assert by_name["any-cell minimum within [half, full] of neighbor minimum"]["passed"] is True


def test_bounds_json_case_label(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--d", "2", "--side", "256", "-l", "91,91")
    assert code == 0
    payload = json.loads(out)
    assert payload["growth_case"]["case"] == "III"
    assert payload["growth_case"]["eta_bound"] == pytest.approx(2.32, abs=0.005)
    values = payload["values"]
    assert {"onion_mean_formula", "lower_bound_continuous", "lower_bound_general"} <= set(values)
    lb = values["lower_bound_general"]
    assert lb["num"] / lb["den"] == pytest.approx(float(lb["value"]), rel=1e-4)


def test_bounds_3d_cube(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--d", "3", "--side", "64", "-l", "60")
    assert code == 0
    payload = json.loads(out)
    assert payload["lengths"] == [60, 60, 60]
    assert "onion_mean_formula" in payload["values"]
    assert "continuous_bound_closed_form" in payload["values"]


def test_bounds_rejects_out_of_range(capsys):
    code, _, err = run_cli(capsys, "bounds", "--d", "2", "--side", "8", "-l", "9,2")
    assert code == 2 and "outside [1, 8]" in err


def test_bench_csv_round_trip(tmp_path, capsys):
    args = [
        "bench", "--experiment", "random-cubes", "--d", "2", "--side", "32",
        "--sizes", "29,16", "--count", "8", "--seed", "7",
        "--out-dir", str(tmp_path / "a"),
    ]
    code, out, _ = run_cli(capsys, *args)
    assert code == 0
    rows = (tmp_path / "a" / "random_cubes_rows.csv").read_text()
    stats = (tmp_path / "a" / "random_cubes_stats.csv").read_text()
    assert rows.splitlines()[0] == "curve,d,side,l1,l2,l3,ox,oy,oz,clusters"
    assert stats.splitlines()[0] == "curve,d,side,l1,l2,l3,min,q1,median,q3,max,mean,count"
    assert len(rows.splitlines()) == 1 + 2 * 2 * 8

    args[-1] = str(tmp_path / "b")
    code, _, _ = run_cli(capsys, *args)
    assert code == 0
    assert (tmp_path / "b" / "random_cubes_rows.csv").read_text() == rows
    assert (tmp_path / "b" / "random_cubes_stats.csv").read_text() == stats


def test_bench_json_schema(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--experiment", "random-corners", "--d", "2", "--side", "16",
        "--count", "10", "--seed", "1", "--format", "json",
        "--out-dir", str(tmp_path),
    )
    assert code == 0
    payload = json.loads((tmp_path / "random_corners.json").read_text())
    assert payload["schema_version"] == 1
    assert len(payload["rows"]) == 2 * 10
    assert payload["stats"][0]["lengths"] is None


def test_bench_fixed_ratio_needs_ratio(capsys):
    code, _, err = run_cli(
        capsys, "bench", "--experiment", "fixed-ratio", "--d", "2", "--side", "16",
    )
    assert code == 2 and "ratio" in err


def test_bench_fixed_ratio_runs(tmp_path, capsys):
    code, _, _ = run_cli(
        capsys, "bench", "--experiment", "fixed-ratio", "--d", "2", "--side", "16",
        "--ratio", "2", "--step", "4", "--samples-per-size", "3",
        "--out-dir", str(tmp_path),
    )
    assert code == 0
    rows = (tmp_path / "fixed_ratio_rows.csv").read_text().splitlines()
    assert len(rows) > 1
