"""End-to-end CLI tests: selectors, formats, exit codes, report round-trips."""

import json

import pytest

from seqfam.cli import main, parse_families, parse_m_range, parse_range

from grids import FIBONACCI_GRID, POCHHAMMER_GRID, POWER0_GRID


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- parsing helpers --

def test_parse_range():
    assert parse_range("1..7") == (1, 7)
    assert parse_range("-8..8") == (-8, 8)
    with pytest.raises(Exception):
        parse_range("7..1")
    with pytest.raises(Exception):
        parse_range("1-7")


def test_parse_m_range_symbolic():
    assert parse_m_range("n..20") == ("n", 20)
    assert parse_m_range("-3..n") == (-3, "n")


def test_parse_families_selector_grammar():
    from fractions import Fraction
    labels = [f.label() for f in parse_families("power,power:1/2,pochhammer,fib,lucas:2")]
    assert labels == ["power:0", "power:1/2", "pochhammer", "lucas:-1", "lucas:2"]
    assert len(parse_families("all")) == 10
    assert parse_families("power:1/2")[0].c == Fraction(1, 2)


# -- table --

def test_table_fibonacci_json(capsys):
    code, out, _ = run(capsys, "table", "--family", "fib", "--n", "1..7",
                       "--m", "0..7", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["values"] == [[str(v) for v in row] for row in FIBONACCI_GRID]


def test_table_pochhammer_json(capsys):
    code, out, _ = run(capsys, "table", "--family", "pochhammer", "--n", "1..7",
                       "--m", "0..7", "--format", "json")
    assert json.loads(out)["values"] == [[str(v) for v in row] for row in POCHHAMMER_GRID]


def test_table_single_cell(capsys):
    code, out, _ = run(capsys, "table", "--family", "power:0", "--n", "1..1", "--m", "0..0")
    assert code == 0
    assert out.splitlines()[-1].split()[-1] == "0"


def test_table_text_layout(capsys):
    code, out, _ = run(capsys, "table", "--family", "power:0", "--n", "1..7", "--m", "0..7")
    lines = out.strip().splitlines()
    assert lines[0].split() == ["n\\m", "0", "1", "2", "3", "4", "5", "6", "7"]
    assert len(lines) == 8  # header + 7 member rows
    assert lines[3].split() == ["3"] + [str(v) for v in POWER0_GRID[2]]


def test_table_csv_lossless(capsys):
    code, out, _ = run(capsys, "table", "--family", "fib", "--n", "1..7",
                       "--m", "0..7", "--format", "csv")
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["n"] + [str(m) for m in range(8)]
    parsed = [[int(v) for v in row[1:]] for row in rows[1:]]
    assert parsed == FIBONACCI_GRID


def test_table_rational_family(capsys):
    code, out, _ = run(capsys, "table", "--family", "power:1/2", "--n", "2..2",
                       "--m", "0..1", "--format", "json")
    assert json.loads(out)["values"] == [["1/4", "9/4"]]


def test_table_rejects_multiple_families(capsys):
    code, _, err = run(capsys, "table", "--family", "fib,pochhammer", "--n", "1..2", "--m", "0..2")
    assert code == 2 and "exactly one family" in err


# -- verify --

def test_verify_passes_and_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "all", "--family", "fib",
                       "--n", "1..10", "--m", "-6..6")
    assert code == 0
    assert "(0 failed)" in out


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "REC_M,L1", "--family",
                       "power:2,pochhammer", "--n", "1..6", "--m", "-4..4",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "identity-sweep"
    assert payload["failure_count"] == 0
    assert payload["total_checks"] == 2 * (6 * 9 + 6)  # REC_M grid + L1 per family


def test_verify_json_round_trips(capsys):
    _, out, _ = run(capsys, "verify", "--identity", "L1", "--family", "fib",
                    "--n", "1..5", "--format", "json")
    assert json.dumps(json.loads(out), indent=2) == out.strip()


def test_verify_empty_domain_warns_and_exits_zero(capsys):
    code, out, err = run(capsys, "verify", "--identity", "L2_SCALE", "--family", "fib",
                         "--n", "1..5", "--m", "0..0")
    assert code == 0
    assert "no admissible points" in err


def test_verify_symbolic_m_bound(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "EXPL_POS", "--family", "power:2",
                       "--n", "1..10", "--m", "n..20", "--format", "json")
    assert code == 0
    assert json.loads(out)["total_checks"] == sum(21 - n for n in range(1, 11))


def test_verify_workers_content_identical(capsys):
    args = ["verify", "--identity", "all", "--family", "fib,power:1", "--n", "1..8",
            "--m", "-5..5", "--format", "json"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--workers", "3")
    a, b = json.loads(serial), json.loads(parallel)
    a.pop("wall_time_s"), b.pop("wall_time_s")
    assert a == b


def test_verify_unknown_identity_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--identity", "NOPE", "--family", "fib")
    assert code == 2 and "unknown identity" in err


# -- float-check --

def test_float_check_passes(capsys):
    code, out, _ = run(capsys, "float-check", "--family", "fib", "--n", "1..25",
                       "--m", "-10..10")
    assert code == 0
    assert "worst relative error" in out


def test_float_check_impossible_tolerance_fails(capsys):
    code, out, _ = run(capsys, "float-check", "--family", "lucas:2", "--n", "1..20",
                       "--m", "-5..5", "--tol", "1e-18")
    assert code == 1
    assert "FAIL" in out


def test_float_check_json(capsys):
    code, out, _ = run(capsys, "float-check", "--family", "lucas:2", "--n", "1..20",
                       "--m", "-5..5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["failure_count"] == 0
    assert payload["max_relative_error"] < 1e-9


# -- oeis --

def test_oeis_fibonacci_column(capsys):
    code, out, _ = run(capsys, "oeis", "--family", "fib", "--column", "1",
                       "--n", "0..11", "--offline")
    assert code == 0 and "A000045" in out


def test_oeis_cubic_row(capsys):
    code, out, _ = run(capsys, "oeis", "--family", "fib", "--row", "3",
                       "--m", "0..9", "--offline", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] is True
    assert payload["terms"][:4] == [0, 3, 12, 33]


def test_oeis_fifth_powers_row(capsys):
    code, out, _ = run(capsys, "oeis", "--family", "power:0", "--row", "5",
                       "--m", "0..9", "--offline")
    assert code == 0 and "A000584" in out


def test_oeis_no_match_exits_one(capsys):
    code, out, _ = run(capsys, "oeis", "--family", "lucas:3", "--row", "5",
                       "--m", "0..9", "--offline")
    assert code == 1
    assert "NO MATCH" in out


def test_oeis_network_error_exits_three(capsys, monkeypatch, tmp_path):
    import seqfam.cli as cli_mod
    from seqfam.oeis import OeisClient, TransportError

    def broken_transport(url):
        raise TransportError("unreachable")

    real_init = OeisClient.__init__

    def patched_init(self, *args, **kwargs):
        kwargs["transport"] = broken_transport
        kwargs["min_interval"] = 0.0
        real_init(self, *args, **kwargs)

    monkeypatch.setattr(cli_mod.OeisClient, "__init__", patched_init)
    # terms that miss every fixture, forcing the (broken) network path
    code, _, err = run(capsys, "oeis", "--family", "lucas:3", "--row", "5",
                       "--m", "0..9", "--cache-dir", str(tmp_path))
    assert code == 3 and "network error" in err


def test_oeis_requires_exactly_one_axis(capsys):
    code, _, err = run(capsys, "oeis", "--family", "fib", "--offline")
    assert code == 2 and "--row N or --column M" in err
    code, _, err = run(capsys, "oeis", "--family", "fib", "--row", "2",
                       "--column", "1", "--offline")
    assert code == 2


# -- shared plumbing --

def test_unknown_family_is_usage_error(capsys):
    code, _, err = run(capsys, "table", "--family", "mystery", "--n", "1..2", "--m", "0..2")
    assert code == 2 and "unknown family" in err


def test_bad_range_is_usage_error(capsys):
    code, _, err = run(capsys, "table", "--family", "fib", "--n", "5..2", "--m", "0..2")
    assert code == 2


def test_missing_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, "nonsense")
    assert code == 2


def test_roots_file_family(tmp_path, capsys):
    roots = {"label": "halves", "roots": {"1": ["1/2"], "2": ["1/2", "1/2"], "3": ["1/2"] * 3}}
    path = tmp_path / "halves.json"
    path.write_text(json.dumps(roots))
    code, out, _ = run(capsys, "table", "--family", f"roots:{path}", "--n", "1..3",
                       "--m", "0..2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    # literal products of (m + 1/2)^n
    assert payload["values"][1] == ["1/4", "9/4", "25/4"]

    code, _, _ = run(capsys, "verify", "--identity", "L1,REC_M", "--family",
                     f"roots:{path}", "--n", "1..3", "--m", "-2..2")
    assert code == 0


def test_roots_file_validation(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"roots": {"2": ["1"]}}))  # wrong arity
    code, _, err = run(capsys, "table", "--family", f"roots:{path}", "--n", "2..2", "--m", "0..0")
    assert code == 2 and "exactly" in err
