import json

from coxlat.cli import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    SCHEMA_VERSION,
    main,
)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(argv, capsys):
    code, out = run(argv + ["--format", "json"], capsys)
    return code, json.loads(out)


def test_bounds_all_pass(capsys):
    code, payload = run_json(["bounds", "--type", "D", "--m", "4", "--kappa", "2"], capsys)
    assert code == EXIT_OK
    assert payload["pass"] is True
    assert payload["version"] == SCHEMA_VERSION


def test_bounds_missing_rank_is_config_error(capsys):
    code = main(["bounds", "--type", "D"])
    assert code == EXIT_CONFIG_ERROR


def test_invalid_kappa_is_config_error(capsys):
    code = main(["bounds", "--type", "B", "--m", "3", "--kappa", "7"])
    assert code == EXIT_CONFIG_ERROR


def test_fixed_point_origin(capsys):
    code, payload = run_json(["fixed-point", "--type", "B", "--m", "3", "--kappa", "0"], capsys)
    assert code == EXIT_OK
    assert payload["coordinates"] == ["0", "0", "0"]


def test_filtration_2a(capsys):
    code, payload = run_json(["filtration", "--type", "2A", "--n", "7"], capsys)
    assert code == EXIT_OK
    assert payload["depth"] == 5
    assert payload["pass"] is True


def test_newton_and_kottwitz(capsys):
    code, payload = run_json(["newton", "--type", "C", "--m", "2", "--kappa", "1"], capsys)
    assert code == EXIT_OK
    assert payload["slope"] == "1/2" and payload["basic"] is True
    code, payload = run_json(["kottwitz", "--type", "C", "--m", "2", "--kappa", "1"], capsys)
    assert code == EXIT_OK
    assert payload["class"] != [0]


def test_tori_preset(capsys):
    code, payload = run_json(["tori", "--preset", "sl2xsl2", "--b", "b0"], capsys)
    assert code == EXIT_OK
    assert payload["rational_classes"] == 2
    code, payload = run_json(["tori", "--preset", "sl2xsl2", "--b", "b1"], capsys)
    assert payload["rational_classes"] == 1


def test_tori_adjoint(capsys):
    code, payload = run_json(
        ["tori", "--type", "A", "--n", "3", "--isogeny", "adjoint", "--b", "b1"], capsys)
    assert code == EXIT_OK
    assert payload["rational_classes"] == 1


def test_isocrystal_subcommand(capsys):
    code, payload = run_json(
        ["isocrystal", "--slope-n", "3", "--slope-k", "1", "--q", "3", "--trials", "10"], capsys)
    assert code == EXIT_OK
    assert payload["pass"] is True


def test_lang_lift_subcommand(capsys):
    code, payload = run_json(["lang-lift", "--trials", "8"], capsys)
    assert code == EXIT_OK
    assert payload["solved"] == 8


def test_report_small_and_deterministic(capsys, tmp_path):
    args = ["report", "--max-rank", "4", "--trials", "4", "--mutations", "30",
            "--random-lifts", "5", "--format", "json"]
    code, payload = run_json(args[:-2] + ["--format", "json"], capsys)
    assert code == EXIT_OK
    assert payload["summary"]["failed"] == 0
    # schema of check records
    for rec in payload["checks"]:
        assert set(rec) == {"id", "paper_ref", "provenance", "expected", "computed", "pass"}
        assert rec["provenance"] in ("PAPER", "TRIVIAL", "DERIVED")
    # byte-identical on re-run with the same config
    _, payload2 = run_json(args[:-2] + ["--format", "json"], capsys)
    assert payload == payload2


def test_report_fault_injection(capsys):
    code, payload = run_json(
        ["report", "--max-rank", "4", "--trials", "2", "--mutations", "10",
         "--random-lifts", "3", "--fail-check", "pi1/A4"], capsys)
    assert code == EXIT_CHECK_FAILED
    bad = [rec for rec in payload["checks"] if not rec["pass"]]
    assert [rec["id"] for rec in bad] == ["pi1/A4"]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code = main(["fixed-point", "--type", "A", "--n", "3", "--kappa", "1",
                 "--format", "json", "--out", str(target)])
    assert code == EXIT_OK
    payload = json.loads(target.read_text())
    assert payload["matches_closed_form"] is True
