"""Command-line interface: exit codes, output determinism, JSON schema."""
import json

import pytest

from lerchkit.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def test_eval_ok(capsys):
    rc = main(["eval", "--z", "0.5", "--s", "1", "--u", "1", "--digits", "20"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "1.3862943611" in out          # 2 ln 2
    assert "method" in out


def test_eval_complex_z(capsys):
    rc = main(["eval", "--z=-0.25+0.25j", "--s", "2.5", "--u", "0.75"])
    assert rc == EXIT_OK
    assert "value (im)" in capsys.readouterr().out


def test_eval_pole_is_usage_error(capsys):
    rc = main(["eval", "--z", "1", "--s", "1", "--u", "1"])
    assert rc == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_eval_bad_number(capsys):
    assert main(["eval", "--z", "nope", "--s", "2", "--u", "1"]) == EXIT_USAGE


def test_parse_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE


def test_constant_oracle_and_series(capsys):
    assert main(["constant", "pi", "--digits", "25"]) == EXIT_OK
    assert "3.14159265358979" in capsys.readouterr().out
    assert main(["constant", "pi", "--method", "series"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "series" in out and "|diff|" in out


def test_constant_unknown(capsys):
    assert main(["constant", "zeta_of_everything"]) == EXIT_USAGE


def test_constant_product_trajectory(capsys):
    rc = main(["constant", "somos_sigma", "--method", "product:eq59",
               "--N", "40", "--digits", "20"])
    assert rc == EXIT_OK
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    # header + oracle line + one row per trajectory point (8, 16, 32, 40)
    assert len(lines) >= 5


def test_verify_filter_passes(capsys):
    rc = main(["verify", "--filter", "ex3.5*", "--precision-bits", "132"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "PASS" in out and "FAIL" not in out


def test_verify_empty_filter(capsys):
    assert main(["verify", "--filter", "does-not-match-*"]) == EXIT_OK


def test_verify_forced_failure(capsys, monkeypatch):
    monkeypatch.setenv("LERCHKIT_FORCE_FAIL", "1")
    rc = main(["verify", "--filter", "ex3.5a", "--precision-bits", "132"])
    out = capsys.readouterr().out
    assert rc == EXIT_FAIL
    assert "zz-forced-failure" in out


def test_verify_json_schema_and_determinism(capsys):
    argv = ["verify", "--filter", "ex4.*", "--format", "json",
            "--precision-bits", "132"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    report = json.loads(first)
    assert report["schema_version"] == "1"
    assert report["summary"]["failed"] == 0
    assert report["summary"]["total"] == len(report["cases"])
    for case in report["cases"]:
        assert {"id", "lhs", "rhs", "abs_err", "tol", "pass", "seconds",
                "route"} <= set(case)
        assert case["seconds"] == "0"


def test_precision_env_override(capsys, monkeypatch):
    monkeypatch.setenv("LERCHKIT_PRECISION_BITS", "not-a-number")
    assert main(["eval", "--z", "0.5", "--s", "2", "--u", "1"]) == EXIT_USAGE
    monkeypatch.setenv("LERCHKIT_PRECISION_BITS", "96")
    assert main(["eval", "--z", "0.5", "--s", "2", "--u", "1"]) == EXIT_OK
