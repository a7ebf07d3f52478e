import io
import json

import pytest

from tiltfactor import kernels
from tiltfactor.cli import JobSpec, UsageError, main, parse_combo, parse_weight, run


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_describe_human(capsys):
    code, out, _ = call(capsys, "describe", "--type", "A", "--rank", "2")
    assert code == 0
    assert out.strip() == "A2: N=3, |W|=6, h=3, rho=(1,1)"


def test_describe_json_deterministic(capsys):
    _, first, _ = call(capsys, "describe", "--type", "E", "--rank", "6", "--json")
    _, second, _ = call(capsys, "describe", "--type", "E", "--rank", "6", "--json")
    assert first == second
    obj = json.loads(first)
    assert obj["weyl_order"] == 51840 and obj["coxeter_number"] == 12
    assert list(obj) == sorted(obj)


def test_char_and_tensor(capsys):
    code, out, _ = call(capsys, "char", "--type", "A", "--rank", "1", "--weight", "4", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["weyl_dimension"] == 5
    code, out, _ = call(capsys, "tensor", "--type", "A", "--rank", "2", "--weight", "2,0", "--weight", "1,0",
                        "--json")
    obj = json.loads(out)
    assert code == 0 and obj["weyl"] == [[[3, 0], 1], [[1, 1], 1]]


def test_char_tilting_reports_route(capsys):
    code, out, _ = call(capsys, "char", "--kind", "tilting", "--type", "A", "--rank", "1", "--p", "2",
                        "--weight", "4", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["route"] == "proposition" and obj["weyl"] == [[[4], 1], [[2], 1]]


def test_minuscule_and_expand(capsys):
    _, out, _ = call(capsys, "minuscule", "--type", "E", "--rank", "8", "--json")
    assert json.loads(out)["minuscule"] == []
    _, out, _ = call(capsys, "expand", "--type", "A", "--rank", "1", "--p", "2", "--weight", "5", "--json")
    assert json.loads(out)["digits_little_endian"] == [[1], [0], [1]]


def test_verify_exit_codes(capsys):
    code, out, _ = call(capsys, "verify", "lemma", "--type", "A", "--rank", "1", "--p", "3", "--weight", "1")
    assert code == 0 and "lemma: PASS" in out
    code, out, _ = call(capsys, "verify", "supplied", "--type", "A", "--rank", "1", "--p", "3",
                        "--target", "2", "--left", "1", "--right", "1", "--tilt", "2")
    assert code == 1 and "FAIL" in out
    code, out, _ = call(capsys, "verify", "supplied", "--type", "A", "--rank", "2", "--p", "3",
                        "--target", "3,0", "--left", "2,0", "--right", "1,0", "--tilt", "3,0;1,1", "--json")
    assert code == 0 and json.loads(out)["witnesses"]["dimensions"] == {"lhs": 18, "rhs": 18}


def test_verify_proposition_with_mu(capsys):
    code, out, _ = call(capsys, "verify", "proposition", "--type", "A", "--rank", "2", "--p", "3",
                        "--r", "1", "--mu", "1,0", "--weight", "0,0", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["inputs"]["target"] == [5, 2]


@pytest.mark.parametrize("argv,msg", [
    (["expand", "--type", "A", "--rank", "1", "--p", "4", "--weight", "3"], "prime"),
    (["char", "--type", "A", "--rank", "2", "--weight", "1,x"], "malformed weight"),
    (["char", "--type", "A", "--rank", "2", "--weight", "1,0,0"], "coordinates"),
    (["describe", "--type", "G", "--rank", "3"], "rank"),
    (["suite", "nope"], "unknown suite"),
    (["verify", "lemma", "--type", "F", "--rank", "4", "--p", "2", "--weight", "0,0,0,0"], "no minuscule"),
    (["char", "--kind", "simple", "--type", "A", "--rank", "2", "--p", "3", "--weight", "2,0"], "digit"),
    (["tensor", "--type", "A", "--rank", "1", "--weight", "3", "--weight", "3", "--budget", "5"], "budget"),
])
def test_usage_errors_exit_2(capsys, argv, msg):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert msg in err


def test_factorize(capsys):
    code, out, _ = call(capsys, "factorize", "--type", "A", "--rank", "1", "--p", "2", "--r", "2",
                        "--mu", "1", "--weight", "1", "--json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 2
    assert all(r["character_ok"] for r in rows)


def test_suite_supplied_data(capsys):
    code, out, _ = call(capsys, "suite", "remark3")
    assert code == 0 and "remark3: 1/1 passed" in out


def test_suite_table1_json(capsys):
    code, out, _ = call(capsys, "suite", "table1", "--json", "--jobs", "3")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[-1] == {"suite": "table1", "passed": 9, "total": 9}
    assert [x["case"] for x in lines[:-1]] == ["A_n", "B_n", "C_n", "D_n", "E6", "E7", "E8", "F4", "G2"]


def test_backend_info(capsys):
    code, out, _ = call(capsys, "--backend-info")
    assert code == 0 and out.strip() == kernels.BACKEND


def test_jobspec_round_trip():
    job = JobSpec("verify", "A", 2, 3, 1, [[1, 0]], {"claim": "lemma", "json": True})
    again = JobSpec.from_dict(json.loads(json.dumps(job.to_dict())))
    assert again == job
    out, err = io.StringIO(), io.StringIO()
    assert run(again, out, err) == 0
    assert json.loads(out.getvalue())["passed"]


def test_parsers():
    assert parse_weight("2, 0") == [2, 0]
    assert parse_combo("3,0;1,1:2") == [[[3, 0], 1], [[1, 1], 2]]
    with pytest.raises(UsageError):
        parse_weight("")
    with pytest.raises(UsageError):
        parse_combo("1,0:x")
