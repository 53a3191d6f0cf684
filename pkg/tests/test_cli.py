import json
import math

import pytest

from turanian import cli
from turanian.delta import delta_direct
from turanian.scalar import ConvergenceError


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def csv_rows(text):
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


# ---- eval ---------------------------------------------------------------------

def test_eval_series_at_origin(capsys):
    rc, out, _ = run(capsys, "eval", "--nu", "0", "--x", "0",
                     "--method", "series")
    assert rc == 0
    rows = csv_rows(out)
    assert len(rows) == 1
    assert float(rows[0]["value"]) == 1.0
    assert rows[0]["method"] == "series_integer"


def test_eval_all_four_routes_agree(capsys):
    rc, out, _ = run(capsys, "eval", "--nu", "2", "--x", "3", "--method", "all")
    assert rc == 0
    rows = csv_rows(out)
    assert len(rows) == 4
    values = [float(r["value"]) for r in rows]
    assert max(values) - min(values) < 1e-11
    assert {r["method"] for r in rows} == {"direct", "series_integer",
                                           "fourier", "neumann"}


def test_eval_auto_default_method(capsys):
    rc, out, _ = run(capsys, "eval", "--nu", "0.3", "--x", "1.5")
    assert rc == 0
    assert csv_rows(out)[0]["method"] in ("direct", "series_real")


def test_eval_domain_violation_exits_2(capsys):
    rc, _, err = run(capsys, "eval", "--nu", "-0.6", "--x", "1",
                     "--method", "neumann")
    assert rc == 2
    assert err.startswith("error:") and err.count("\n") == 1


def test_eval_fourier_needs_integer_order(capsys):
    rc, _, _ = run(capsys, "eval", "--nu", "1.5", "--x", "1",
                   "--method", "fourier")
    assert rc == 2


def test_eval_json_format(capsys):
    rc, out, _ = run(capsys, "eval", "--nu", "1", "--x", "2",
                     "--method", "direct", "--format", "json")
    assert rc == 0
    payload = json.loads(out)
    assert payload["rows"][0]["method"] == "direct"


def test_eval_csv_round_trips_bit_identically(capsys):
    rc, out, _ = run(capsys, "eval", "--nu", "2", "--x", "3", "--method", "all")
    assert rc == 0
    exact = delta_direct(2.0, 3.0, 1e-12).value
    parsed = {r["method"]: float(r["value"]) for r in csv_rows(out)}
    assert parsed["direct"] == exact  # 17 significant digits round-trip


# ---- bounds --------------------------------------------------------------------

def test_bounds_integer_point(capsys):
    rc, out, _ = run(capsys, "bounds", "--nu", "1", "--x", "2")
    assert rc == 0
    rows = csv_rows(out)
    assert len(rows) == 5
    assert all(r["satisfied"] == "true" for r in rows)


def test_bounds_real_order_point(capsys):
    rc, out, _ = run(capsys, "bounds", "--nu", "0.5", "--x", "1")
    assert rc == 0
    assert [r["bound_id"] for r in csv_rows(out)] == ["lower_one_term",
                                                      "lower_two_term"]


def test_bounds_grid_mode(capsys):
    rc, out, _ = run(capsys, "bounds", "--grid", "default")
    assert rc == 0
    rows = csv_rows(out)
    assert len(rows) == 4575  # 61 x-points, 38 lower + 37 upper entries per x
    assert all(r["satisfied"] == "true" for r in rows)


def test_bounds_requires_point_or_grid(capsys):
    rc, _, err = run(capsys, "bounds")
    assert rc == 2 and "grid" in err


# ---- certify -------------------------------------------------------------------

def test_certify_single_suite_clean(capsys):
    rc, out, err = run(capsys, "certify", "--suite", "genfun")
    assert rc == 0
    rows = csv_rows(out)
    assert rows[0]["property_id"] == "generating_function"
    assert rows[0]["failure_count"] == "0"
    assert "0 failures" in err


def test_certify_zero_sum_point(capsys):
    rc, out, _ = run(capsys, "certify", "--suite", "zeros",
                     "--nu", "0", "--x", "1", "--count", "200")
    assert rc == 0
    assert csv_rows(out)[0]["property_id"] == "zero_sums"


def test_certify_all_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    rc1, out1, _ = run(capsys, "certify", "--suite", "all", "--seed", "7",
                       "--format", "json", "--out", str(a))
    rc2, out2, _ = run(capsys, "certify", "--suite", "all", "--seed", "7",
                       "--format", "json", "--out", str(b))
    assert rc1 == rc2 == 0
    assert a.read_bytes() == b.read_bytes()
    assert "0 failures" in out1 and out1 == out2
    payload = json.loads(a.read_text())
    assert payload["suite"] == "all"
    assert {r["property_id"] for r in payload["results"]} == {
        "cross_method", "bounds", "j_comparison", "zero_sums",
        "monotonicity", "generating_function"}
    assert payload["failures"] == []


def test_certify_seed_changes_grid(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "certify", "--suite", "genfun", "--seed", "1",
        "--format", "json", "--out", str(a))
    run(capsys, "certify", "--suite", "genfun", "--seed", "2",
        "--format", "json", "--out", str(b))
    assert a.read_bytes() != b.read_bytes()  # grid extras differ


def test_certify_degenerate_zero_point_exits_2(capsys):
    rc, _, err = run(capsys, "certify", "--suite", "zeros",
                     "--nu", "0", "--x", "2.404825557695773", "--count", "50")
    assert rc == 2 and "error:" in err


# ---- table ---------------------------------------------------------------------

def test_table_rho(capsys):
    rc, out, _ = run(capsys, "table", "--kind", "rho", "--n", "1..5")
    assert rc == 0
    rows = csv_rows(out)
    assert len(rows) == 5
    assert float(rows[0]["value"]) == 0.25
    assert rows[2]["peak_m"] == "17"


def test_table_tcoeff_unimodal(capsys):
    rc, out, _ = run(capsys, "table", "--kind", "tcoeff",
                     "--n", "1", "--m", "1..10")
    assert rc == 0
    values = [float(r["value"]) for r in csv_rows(out)]
    assert values[0] == max(values)  # peak at m = 2n^2 - 1 = 1
    assert values[1:] == sorted(values[1:], reverse=True)


def test_table_asymp_n_ratio_decreasing(capsys):
    rc, out, _ = run(capsys, "table", "--kind", "asymp-n",
                     "--n", "1..12", "--x", "1")
    ratios = [float(r["ratio"]) for r in csv_rows(out)]
    assert rc == 0
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert all(r > 1.0 for r in ratios)


def test_table_asymp_nu_adjudication(capsys):
    rc, out, _ = run(capsys, "table", "--kind", "asymp-nu",
                     "--x", "1", "--nu", "5,10,20,40", "--mode", "both")
    assert rc == 0
    rows = csv_rows(out)
    assert "ratio_as_printed" in rows[0] and "ratio_squared" in rows[0]
    last = rows[-1]
    assert abs(float(last["ratio_squared"]) - 1.0) < 0.02
    assert abs(float(last["ratio_as_printed"]) - 1.0) > 0.02


def test_table_single_mode(capsys):
    rc, out, _ = run(capsys, "table", "--kind", "asymp-nu",
                     "--x", "1", "--nu", "10", "--mode", "squared")
    rows = csv_rows(out)
    assert rc == 0
    assert "ratio_squared" in rows[0] and "ratio_as_printed" not in rows[0]


def test_table_bad_range_exits_2(capsys):
    rc, _, _ = run(capsys, "table", "--kind", "rho", "--n", "5..1")
    assert rc == 2


# ---- zeros ----------------------------------------------------------------------

def test_zeros_half_order(capsys):
    rc, out, _ = run(capsys, "zeros", "--nu", "0.5", "--count", "4")
    assert rc == 0
    rows = csv_rows(out)
    for row in rows:
        assert float(row["value"]) == pytest.approx(
            int(row["k"]) * math.pi, abs=1e-10)


def test_zeros_out_file(tmp_path, capsys):
    path = tmp_path / "zeros.csv"
    rc, out, _ = run(capsys, "zeros", "--nu", "0", "--count", "2",
                     "--out", str(path))
    assert rc == 0 and out == ""
    assert path.read_text().startswith("nu,k,value\n")


def test_zeros_domain_violation(capsys):
    rc, _, _ = run(capsys, "zeros", "--nu", "0", "--count", "1001")
    assert rc == 2
    rc, _, _ = run(capsys, "zeros", "--nu", "51", "--count", "5")
    assert rc == 2


def test_convergence_failure_maps_to_3(monkeypatch, capsys):
    def boom(nu, count):
        raise ConvergenceError("synthetic")
    monkeypatch.setattr(cli, "bessel_j_zeros", boom)
    rc, _, err = run(capsys, "zeros", "--nu", "0", "--count", "5")
    assert rc == 3 and "synthetic" in err


# ---- parsing and serialization helpers ----------------------------------------------

def test_parse_int_range():
    assert cli.parse_int_range("3") == [3]
    assert cli.parse_int_range("1..4") == [1, 2, 3, 4]
    assert cli.parse_int_range("2,5,7") == [2, 5, 7]


def test_parse_float_list():
    assert cli.parse_float_list("1.5,2") == [1.5, 2.0]


def test_render_json_is_valid_json():
    text = cli.render_json({"a": [1.5, 2], "b": {"c": True, "d": None},
                            "s": 'quote " and backslash \\'})
    parsed = json.loads(text)
    assert parsed["a"] == [1.5, 2]
    assert parsed["b"] == {"c": True, "d": None}
    assert parsed["s"] == 'quote " and backslash \\'


def test_render_json_nonfinite_as_strings():
    parsed = json.loads(cli.render_json({"v": math.inf}))
    assert parsed["v"] == "inf"


def test_missing_subcommand_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
