import json

import pytest

from cong13.cli import (
    EXIT_FAIL,
    EXIT_INDETERMINATE,
    EXIT_PASS,
    EXIT_USAGE,
    CliConfig,
    UsageError,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pn(capsys):
    code, out, _ = run(capsys, "pn", "--n", "4")
    assert code == EXIT_PASS and out.strip() == "5"
    code, out, _ = run(capsys, "pn", "--n", "100", "--modexp", "3")
    assert code == EXIT_PASS and out.strip() == str(190569292 % 13**3)


def test_bigp(capsys):
    code, out, _ = run(capsys, "bigp", "--N", "10")
    assert code == EXIT_PASS and out.strip() == "0"
    code, out, _ = run(capsys, "bigp", "--N", "95")
    assert code == EXIT_PASS and out.strip() == "5"
    code, out, _ = run(capsys, "bigp", "--N", "-49")
    assert code == EXIT_PASS and out.strip() == "0"


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--eta", "13^2/1^2", "--prec", "100")
    assert code == EXIT_PASS
    assert out.splitlines()[0] == "24/24\t1"
    assert out.splitlines()[1] == "48/24\t2"
    code, _, err = run(capsys, "expand", "--eta", "13^2/1^2")
    assert code == EXIT_USAGE and "--prec" in err


def test_k1_table(capsys):
    code, out, _ = run(capsys, "k1-table")
    assert code == EXIT_PASS
    assert "K1_TABLE" in out and "PASS" in out


def test_verify_conjecture_json(capsys, cache_dir):
    code, out, _ = run(
        capsys,
        "verify", "conjecture", "--alpha", "1", "--prime", "5",
        "--nmax", "300", "--format", "json", "--cache-dir", cache_dir,
    )
    assert code == EXIT_PASS
    data = json.loads(out)
    assert data["claim"] == "CONJECTURE"
    assert data["status"] == "pass"
    assert data["constants"]["k"]["value"] == 10


def test_verify_eigen_csv(capsys, cache_dir):
    code, out, _ = run(
        capsys,
        "verify", "eigen", "--alpha-max", "1", "--prime", "5",
        "--nmax", "300", "--format", "csv", "--cache-dir", cache_dir,
    )
    assert code == EXIT_PASS
    assert out.splitlines()[0] == "claim,name,value,modulus"


def test_usage_errors(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == EXIT_USAGE and err
    code, _, err = run(capsys, "pn")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "pn", "--n", "4", "--wat")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "verify")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "pn", "--n", "4", "--modexp", "0")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "pn", "--n", "4", "--threads", "0")
    assert code == EXIT_USAGE


def test_indeterminate_exit(capsys, cache_dir):
    code, out, _ = run(
        capsys,
        "verify", "conjecture", "--alpha", "1", "--prime", "5",
        "--nmax", "5", "--cache-dir", cache_dir,
    )
    assert code == EXIT_INDETERMINATE
    assert "INDETERMINATE" in out.upper()


def test_cache_env_fallback(monkeypatch, tmp_path):
    monkeypatch.setenv("CF13_CACHE_DIR", str(tmp_path))
    cfg = CliConfig()
    assert cfg.cache == str(tmp_path)
    monkeypatch.delenv("CF13_CACHE_DIR")
    assert "cong13" in CliConfig().cache
    assert CliConfig(cache_dir="/x/y").cache == "/x/y"


def test_cli_config_validation():
    with pytest.raises(UsageError):
        CliConfig(format="yaml")
    with pytest.raises(UsageError):
        CliConfig(prec=0)


def test_fail_exit_via_corrupted_check(capsys, monkeypatch, cache_dir):
    # force a failing report through the CLI to pin the exit code
    from cong13 import verify as V

    def fake_check(alpha, nmax, cache_dir=None):
        return V.Report(
            V.CLAIM_THEOREM, {}, V.FAIL,
            counterexamples=[{"witness": {"N": 1}, "expected": "x", "observed": "y"}],
        )

    monkeypatch.setattr("cong13.cli.V.check_theorem_aob", fake_check)
    code, out, _ = run(capsys, "verify", "theorem", "--alpha", "1", "--nmax", "10")
    assert code == EXIT_FAIL
    assert "counterexample" in out


def test_verify_hecke_cli(capsys):
    code, out, _ = run(capsys, "verify", "hecke", "--prime", "5", "--modexp", "6")
    assert code == EXIT_PASS
    assert "H_VALUATIONS" in out and "NEWMAN_POLES" in out


def test_verify_valuations_cli(capsys):
    code, out, _ = run(
        capsys, "verify", "valuations", "--alpha-max", "1", "--rmax", "6", "--modexp", "6"
    )
    assert code == EXIT_PASS and "VAL_LEMMAS" in out


def test_verify_mu_gamma_cli(capsys):
    code, out, _ = run(
        capsys, "verify", "mu-gamma", "--alpha-max", "1", "--stmax", "5", "--modexp", "6"
    )
    assert code == EXIT_PASS and "MU_GAMMA" in out


def test_selftest_threads_deterministic(capsys):
    code1, out1, _ = run(capsys, "selftest", "--format", "json")
    code2, out2, _ = run(capsys, "selftest", "--format", "json", "--threads", "2")
    assert code1 == code2 == EXIT_PASS
    strip = lambda s: json.dumps(
        [{k: v for k, v in r.items() if k != "runtime_ms"} for r in json.loads(s)]
    )
    assert strip(out1) == strip(out2)
