import json
import random

import pytest
from hypothesis import given, strategies as st

from hopfdeform.cli import emit_report, main, parse_datum, run
from hopfdeform.errors import InputError
from hopfdeform.hopfcore import parse_pbw_element
from hopfdeform.liftings import LiftingParams, build_lifting, taft_lifting_datum
from hopfdeform.scalars import get_field

TAFT = {"group": [6], "generators": [{"g": [1], "chi": [2]}]}
PLANE = {"group": [9], "generators": [{"g": [1], "chi": [3]}, {"g": [1], "chi": [-3]}]}


def write(tmp_path, doc, name="datum.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def invoke(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if "--format" not in argv or "json" in argv else out)


def test_minimal_rank_one_file_gives_the_taft_datum():
    D = parse_datum(json.dumps(TAFT))
    assert D.cyclotomic_order == 6 and D.datum.N == (3,)
    assert D.echo()["datum"]["cyclotomic_order"] == 6


def test_root_literals_enlarge_the_field():
    doc = dict(TAFT, params={"diag": [[{"root": [4, 1]}, "1/2"]]})
    D = parse_datum(json.dumps(doc))
    F = get_field()
    assert D.cyclotomic_order == 12
    assert D.params.diag[0] == F.root(3) + F.coerce(1) / 2


def test_quantum_linear_space_violation_names_the_pair():
    doc = {"group": [4], "generators": [{"g": [1], "chi": [1]}, {"g": [2], "chi": [1]}]}
    with pytest.raises(InputError, match=r"pair \(1,2\)"):
        parse_datum(json.dumps(doc))


@pytest.mark.parametrize("doc,pointer", [
    (dict(TAFT, colour=1), "/colour"),
    ({"group": [6], "generators": [{"g": [1], "chi": [2], "h": 0}]}, "/generators/0/h"),
    (dict(TAFT, params={"diag": [1], "extra": []}), "/params/extra"),
    (dict(TAFT, options={"verify_mode": "fast"}), "/options/verify_mode"),
    (dict(TAFT, params={"diag": [{"root": [0, 1]}]}), "/params/diag/0/root"),
    (dict(TAFT, params={"diag": [True]}), "/params/diag/0"),
    ({"generators": []}, "/group"),
])
def test_schema_violations_carry_json_pointers(doc, pointer):
    with pytest.raises(InputError) as exc:
        parse_datum(json.dumps(doc))
    assert exc.value.pointer == pointer


def test_syntax_errors_report_line_and_column():
    with pytest.raises(InputError, match="line 2 column"):
        parse_datum('{"group": [6],\n "generators": [}')


def test_forced_zero_exits_2(tmp_path, capsys):
    path = write(tmp_path, {"group": [3], "generators": [{"g": [1], "chi": [1]}], "params": {"diag": [1]}})
    code, rep = invoke(capsys, ["build", "--input", path])
    assert code == 2 and "forced zero: g^n = 1" in rep["error"]["message"]


def test_build_and_verify_exit_0_and_echo_conventions(tmp_path, capsys):
    path = write(tmp_path, dict(TAFT, params={"diag": [1]}))
    code, rep = invoke(capsys, ["verify", "--input", path])
    assert code == 0 and rep["ok"]
    assert rep["schema"] == "hopfdeform.report/1"
    assert rep["results"]["coradical_filtration"] == [6, 12, 18]
    conv = rep["conventions"]
    assert {"sign_convention", "retraction", "verify_mode"} <= set(conv)
    assert rep["certificates"]["verification"]["mode"] == "full"


def test_property_failure_exits_1(capsys):
    code, rep = invoke(capsys, ["fixtures", "--example", "dual-deform"])
    assert code == 1 and rep["ok"] is False
    assert rep["results"]["dual-deform"]["failed_checks"]["coassociativity"]["args"]


def test_budget_exits_3(tmp_path, capsys):
    path = write(tmp_path, PLANE)
    code, rep = invoke(capsys, ["nichols", "--input", path, "--budget", "2"])
    assert code == 3 and rep["error"]["kind"] == "BudgetError"


def test_budget_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HOPF_DEFORM_BUDGET", "2")
    code, _ = invoke(capsys, ["nichols", "--input", write(tmp_path, PLANE)])
    assert code == 3


def test_missing_input_and_unknown_example_exit_2(capsys):
    assert invoke(capsys, ["build"])[0] == 2
    assert invoke(capsys, ["fixtures", "--example", "nope"])[0] == 2


def test_same_seed_gives_byte_identical_json(tmp_path):
    path = write(tmp_path, dict(TAFT, params={"diag": [1]}))
    argv = ["verify", "--input", path, "--verify-mode", "sampled", "--seed", "5"]
    a, _ = run(argv)
    b, _ = run(argv)
    assert emit_report(a) == emit_report(b)
    assert a["certificates"]["verification"]["seed"] == 5


def test_empty_results_are_valid_json(tmp_path, capsys):
    code, rep = invoke(capsys, ["nichols", "--input", write(tmp_path, TAFT), "--max-degree", "2"])
    assert code == 0 and rep["results"]["degrees"][0]["kernel_basis"] == []


def test_text_format_renders_pbw_monomials(tmp_path, capsys):
    path = write(tmp_path, dict(TAFT, cocycle={"kind": "unit-plus-zeta", "scales": [2]}))
    code, out = invoke(capsys, ["deform-mult", "--input", path, "--format", "text"])
    assert code == 0
    assert "results.relations.x1^3: [2] 1 + [-2] g^3" in out


def test_deform_mult_reproduces_the_lifting_under_the_sign_convention(tmp_path, capsys):
    path = write(tmp_path, TAFT)
    code, rep = invoke(capsys, ["deform-mult", "--input", path, "--cocycle", "unit+zeta:-3"])
    assert code == 0 and rep["results"]["equals_lifting_with_a_ii_=_-scale"] is True


def test_delta_and_theta_commands(tmp_path, capsys):
    path = write(tmp_path, dict(TAFT, params={"diag": [2]}))
    code, rep = invoke(capsys, ["delta", "--input", path])
    assert code == 0 and rep["results"]["class_nonzero"]
    assert set(rep["results"]["cocycle"].values()) == {"-2"}
    code, rep = invoke(capsys, ["theta", "--input", path])
    assert code == 0 and rep["certificates"]["U_vs_H"]["structure_constants_equal"]


def test_cohomology_and_dual_commands(tmp_path, capsys):
    code, rep = invoke(capsys, ["cohomology", "--truncated", "3", "--max-degree", "3"])
    assert code == 0 and rep["results"]["dims"] == [1, 1, 1, 1]
    linked = dict(PLANE, params={"diag": [1, 1], "link": [[1, 2, 1]]})
    code, rep = invoke(capsys, ["dual", "--input", write(tmp_path, linked)])
    assert code == 0
    assert rep["results"]["grouplikes_of_dual"] == 1 and rep["results"]["dual_pointed"] is False


def test_irreps_command(capsys):
    code, rep = invoke(capsys, ["irreps", "--prime", "3"])
    assert code == 0 and [r["r"] for r in rep["results"]["representations"]] == [1, 2, 3]


@given(st.integers(0, 10 ** 6))
def test_rendered_elements_round_trip_through_the_pbw_parser(seed):
    rng = random.Random(seed)
    d = taft_lifting_datum(3, 2)
    d.activate()
    H = build_lifting(d, LiftingParams([1]), verify=False)
    F = get_field()
    v = {}
    for _ in range(rng.randint(0, 5)):
        c = F.coerce(rng.randint(-3, 3)) + F.root(rng.randrange(6)) * rng.randint(-2, 2)
        if c:
            v[rng.randrange(H.dim)] = c
    assert parse_pbw_element(H.render(v), H) == v
