import json
from pathlib import Path

import pytest

from qtelescope.cli import SERIES_NAMES, named_series, run
from qtelescope.telescoping import VerificationReport

GOLDEN = Path(__file__).parent / "testdata" / "golden_series.json"
GAUSS_NS = (0, 1, 2, 3, 4, 6)


def _out(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_verify_watson_json(capsys):
    code, cap = _out(capsys, ["verify", "watson", "--q-order", "25", "--a-order", "10", "--json"])
    assert code == 0
    d = json.loads(cap.out)
    assert d["status"] == "ok"
    assert d["version"] and d["options"]["q_order"] == 25 and d["options"]["a_order"] == 10
    assert VerificationReport.from_dict(d).to_dict() == d


def test_verify_gauss_odd(capsys):
    code, cap = _out(capsys, ["verify", "gauss", "--n", "3", "--json"])
    assert code == 0
    d = json.loads(cap.out)
    assert d["cells"][0]["counts"]["lhs_is_zero"] == 1


@pytest.mark.parametrize("ident", ["sylvester", "schur", "rr1", "rr2"])
def test_verify_others(capsys, ident):
    code, cap = _out(capsys, ["verify", ident])
    assert code == 0 and "status: ok" in cap.out


def test_rr_note_in_report(capsys):
    _, cap = _out(capsys, ["verify", "rr2", "--json"])
    assert "literature-standard" in json.loads(cap.out)["notes"][0]


def test_check_bijection_text(capsys):
    code, cap = _out(capsys, ["check-bijection", "watson", "--n-max", "6", "--k-max", "3", "--max-weight", "14"])
    assert code == 0
    assert "domain=" in cap.out and "status: ok" in cap.out


@pytest.mark.parametrize(
    "argv",
    [
        ["check-telescoping", "gauss", "--n", "3", "--q-order", "14"],
        ["check-telescoping", "sylvester", "--n-max", "2", "--q-order", "14", "--a-order", "4"],
        ["check-involution", "watson", "--n-max", "4", "--max-weight", "12"],
        ["check-certificate", "sylvester", "--k-max", "4"],
        ["check-certificate", "watson", "--q-order", "20", "--a-order", "8"],
    ],
)
def test_other_checks_pass(capsys, argv):
    code, _ = _out(capsys, argv)
    assert code == 0


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    assert run(["verify", "schur", "--json", "-o", str(dest)]) == 0
    assert json.loads(dest.read_text())["status"] == "ok"
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "no-such-series"],
        ["verify", "gauss", "--a-order", "3"],
        ["verify", "nonsense"],
        ["check-bijection", "schur"],
        ["check-certificate", "gauss"],
        ["expand", "gauss-lhs"],
        ["expand", "rr1-sum", "--a-order", "2"],
        ["verify", "watson", "--q-order", "-1"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_verification_failure_exits_1(monkeypatch, capsys):
    import qtelescope.cli as cli

    monkeypatch.setattr(cli, "rr_product", lambda which, N: cli.rr_sum(which, N) + cli.QSeries.monomial(5, N))
    code, cap = _out(capsys, ["verify", "rr1", "--json"])
    assert code == 1
    d = json.loads(cap.out)
    assert d["status"] == "fail"
    assert d["cells"][0]["failures"][0]["detail"]["q_exp"] == 5


def _expand(capsys, *argv):
    code, cap = _out(capsys, ["expand", *argv])
    assert code == 0
    return json.loads(cap.out)


def test_expand_examples(capsys):
    d = _expand(capsys, "rr1-sum", "--q-order", "6")
    assert d["rows"] == [["1", "1", "1", "1", "2", "2", "3"]]
    d = _expand(capsys, "schur-bilateral", "--q-order", "7")
    assert [int(c) for c in d["rows"][0]] == [1, 0, -1, -1, 0, 0, 0, 0]
    d = _expand(capsys, "watson-rhs", "--q-order", "5", "--a-order", "2")
    assert d["rows"][0] == ["1", "0", "0", "0", "0", "0"]
    d = _expand(capsys, "gauss-lhs", "--n", "2", "--q-order", "4")
    assert d["n"] == 2 and d["rows"] == [["1", "0", "1", "0", "1"]]


def _golden_now():
    out = {}
    for name in SERIES_NAMES:
        if name.startswith("gauss"):
            for n in GAUSS_NS:
                out[f"{name}/n={n}"] = named_series(name, 30, 12, n).to_json_dict()
        else:
            out[name] = named_series(name, 30, 12).to_json_dict()
    return out


def test_golden_series(regen_golden):
    now = _golden_now()
    if regen_golden:
        GOLDEN.write_text(json.dumps(now, indent=1, sort_keys=True) + "\n")
    assert GOLDEN.exists(), "golden file missing; run pytest --regen-golden once"
    pinned = json.loads(GOLDEN.read_text())
    assert set(pinned) == set(now)
    for key, val in now.items():
        assert all(len(r) == 31 for r in val["rows"])
        assert pinned[key] == val, key
