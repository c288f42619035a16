import json

import pytest

from twoquadrics.cli import _perm_cycles, main, run_report
from twoquadrics.cyclo import CycNum, ONE, zeta
from twoquadrics.errors import SchemaError
from twoquadrics.jsonio import (
    cycnum_from_json,
    cycnum_to_json,
    mat_from_json,
    mat_to_json,
    parse_job,
    pencil_from_json,
    pencil_to_json,
    relation_from_json,
    relation_to_json,
    signedperm_from_json,
)
from twoquadrics.matrices import Mat

try:
    from importlib import resources

    def fixture_text(name):
        return (resources.files("twoquadrics") / "fixtures" / name).read_text()
except ImportError:  # pragma: no cover
    fixture_text = None


def test_cycnum_roundtrip():
    for x in (zeta(8) + zeta(8, 3), CycNum.from_rational(7), -zeta(12)):
        assert cycnum_from_json(cycnum_to_json(x)) == x
    assert cycnum_from_json(5) == CycNum.from_rational(5)
    assert cycnum_from_json([3, 2]) * cycnum_from_json(2) == CycNum.from_rational(3)


def test_cycnum_schema_errors():
    with pytest.raises(SchemaError):
        cycnum_from_json(True)
    with pytest.raises(SchemaError):
        cycnum_from_json([1, 0])
    with pytest.raises(SchemaError):
        cycnum_from_json({"order": 8})
    # phi(8) = 4, so three coefficients is malformed
    with pytest.raises(SchemaError) as exc:
        cycnum_from_json({"order": 8, "coeffs": [[1, 1], [0, 1], [0, 1]]}, "$.x")
    assert "$.x" in str(exc.value)
    with pytest.raises(SchemaError):
        cycnum_from_json({"order": 8, "coeffs": [[1, 1], [0, 1], [0, 1], "no"]})


def test_mat_roundtrip_and_errors():
    m = Mat([[ONE, zeta(8)], [CycNum.from_rational(0), -ONE]])
    assert mat_from_json(mat_to_json(m)) == m
    with pytest.raises(SchemaError):
        mat_from_json({"rows": 2, "cols": 2, "entries": [[1, 2]]})
    with pytest.raises(SchemaError):
        mat_from_json([1, 2])


def test_pencil_json():
    obj = {"diag1": [1, 1, 1, 1, 1, 1], "diag2": [0, 1, 2, 3, 4, 5]}
    p = pencil_from_json(obj)
    assert p.g == 2 and p.size == 6
    assert pencil_from_json(pencil_to_json(p)).q1.gram == p.q1.gram
    with pytest.raises(SchemaError):
        pencil_from_json({"diag1": [1, 1], "diag2": [1, 1]})
    with pytest.raises(SchemaError):
        pencil_from_json({"diag1": [1] * 6, "diag2": [1] * 5})
    with pytest.raises(SchemaError):
        pencil_from_json({"g": 2, "diag1": [1] * 4, "diag2": [0, 1, 2, 3]})


def test_relation_json():
    r = relation_from_json({"word": [["sigma", 6]]})
    assert r.target == "identity"
    r = relation_from_json({"word": [["t", 1], ["s", -1]], "target": {"central": "iota"}})
    assert r.target == ("central", "iota")
    assert relation_from_json(relation_to_json(r)) == r
    with pytest.raises(SchemaError):
        relation_from_json({"word": []})
    with pytest.raises(SchemaError):
        relation_from_json({"word": [["a", 1]], "target": "nonsense"})


def test_signedperm_json():
    s = signedperm_from_json({"perm": [1, 3, 4, 5, 2], "signs": [1, 1, 1, -1, -1]})
    assert s.order() == 4
    with pytest.raises(SchemaError):
        signedperm_from_json({"perm": [1, 1, 3, 4, 5], "signs": [1] * 5})
    with pytest.raises(SchemaError):
        signedperm_from_json({"perm": [1, 2, 3, 4, 5]})


def test_parse_job_fixture_roundtrip():
    job = parse_job(fixture_text("example_7_5.json"))
    assert job.pencil.g == 2
    assert job.group is not None
    assert job.branch is not None and len(job.branch.roots) == 6
    full = parse_job(fixture_text("example_7_5_full.json"))
    assert full.moebius_generators


def test_parse_job_errors():
    with pytest.raises(SchemaError):
        parse_job("{not json")
    with pytest.raises(SchemaError):
        parse_job({})
    with pytest.raises(SchemaError):
        parse_job({"pencil": {"diag1": [1] * 6, "diag2": [0, 1, 2, 3, 4, 5]},
                   "generators": [{"label": "g"}]})


def test_perm_cycles():
    assert _perm_cycles((1, 2, 4, 5, 6, 3)) == "(3 4 5 6)"
    assert _perm_cycles((1, 2, 3)) == "()"
    assert _perm_cycles((2, 1, 4, 3)) == "(1 2)(3 4)"


def test_run_report_verdicts():
    assert run_report(parse_job(fixture_text("example_7_5.json")))["status"] == (
        "LINEARIZABLE_CERTIFIED"
    )
    full = run_report(parse_job(fixture_text("example_7_5_full.json")))
    assert full["status"] == "OBSTRUCTED"
    assert any(e.get("stage") == 5 and e.get("fixed_odd_classes") == []
               for e in full["evidence"])
    stage4 = run_report(parse_job(fixture_text("example_7_3.json")))
    assert stage4["status"] == "OBSTRUCTED"
    assert any(e.get("free_two_torsion") for e in stage4["evidence"])


def test_cli_exit_codes(capsys):
    assert main(["report", "--fixture", "example_7_5.json"]) == 0
    out = capsys.readouterr().out
    assert "LINEARIZABLE_CERTIFIED" in out
    assert main(["report", "--fixture", "no_such.json"]) == 2
    assert main(["report", "/nonexistent/path.json"]) == 2
    assert main(["report"]) == 2


def test_cli_json_format(capsys):
    assert main(["report", "--fixture", "example_7_3.json", "--format", "json"]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["status"] == "OBSTRUCTED"
    assert verdict["soundness_conditions"]


def test_cli_dp4_and_theta(capsys):
    assert main(["dp4", "--fixture", "example_dp4_involutions.json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["m1"]["invariant_lines"] == [[0, 0, 0, 0, 0, 1], [1, -1, 0, 0, 0, -1]]
    assert out["gamma1"]["orbit_sizes"] == [4, 4, 4, 4]
    reg = out["regressions"]["gamma_tilde_fourth_power"]
    assert reg["power_diagonal"] == [1, -1, -1, -1, -1, 1]
    assert reg["matches_expected"] is False
    assert main(["theta", "--fixture", "example_7_5_full.json"]) == 0
    theta = json.loads(capsys.readouterr().out)
    assert theta["empty"]


def test_cli_lift(capsys):
    assert main(["lift", "--fixture", "example_7_4.json",
                 "--scalar-order", "24"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["V"]["lift"] is not None and not out["V"]["obstructed"]
    assert out["W"]["lift"] is None and out["W"]["obstructed"]
