import io
import json
import subprocess
import sys

import pytest

from catdeform import data_path
from catdeform.category import load_category
from catdeform.cli import run


def cli(*argv):
    buf = io.StringIO()
    code, report = run([str(a) for a in argv], buf)
    if report is not None:
        assert json.loads(buf.getvalue()) == report
    return code, report


def cat(name):
    return data_path(name)


def grp(name):
    return data_path(f"group_{name}")


# -- validate ----------------------------------------------------------------

def test_validate_ok():
    code, rep = cli("validate", cat("vec_z2_omega"))
    assert code == 0 and rep["status"] == "ok" and rep["result"]["ok"]
    assert len(rep["inputs"]["category"]) == 64


def test_validate_corrupt(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"field": "Q",\n "simples": [\n')
    code, rep = cli("validate", p)
    assert code == 2 and "line" in rep["error"]


def test_validate_pentagon_violation(tmp_path):
    data = json.loads(cat("vec_z2_omega").read_text())
    for e in data["F"]:
        if (e["i"], e["j"], e["k"]) == (1, 1, 1):
            e["matrix"] = [["2"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, rep = cli("validate", p)
    assert code == 1
    fails = rep["result"]["pentagon"]["failures"]
    assert fails and "tuple" in fails[0]


def test_missing_file_and_usage():
    assert cli("validate", "/nonexistent.json")[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("cohomology", cat("vec_z3"), "--max-degree", "9")[0] == 2


# -- cohomology --------------------------------------------------------------

def dims(rep):
    return [e["dim_H"] for e in rep["result"]["degrees"]]


def test_cohomology_examples():
    code, rep = cli("cohomology", cat("vec_z2_trivial"), "--field", "F2")
    assert code == 0 and dims(rep) == [1, 1, 1]
    code, rep = cli("cohomology", cat("fibonacci"))
    assert code == 0 and rep["result"]["delta_squared_zero"]
    code, rep = cli("cohomology", cat("vec_z3"))
    assert dims(rep) == [0, 0, 0]


def test_emitted_representatives_reload(tmp_path):
    from catdeform.coherence import TreeEngine
    from catdeform.complex import TensorComplex, is_closed, load_cochain

    code, rep = cli("cohomology", cat("vec_z2_trivial"), "--field", "F2", "--emit-representatives", "--out", tmp_path)
    assert code == 0 and rep["result"]["files"]
    cx = TensorComplex(TreeEngine(load_category(cat("vec_z2_trivial"), field="F2")))
    c = load_cochain(cx.space(3), tmp_path / "rep_degree3_0.json")
    assert is_closed(cx, c) and not c.is_zero()


# -- deform ------------------------------------------------------------------

def test_deform_zero_cocycle(tmp_path):
    p = tmp_path / "zero.json"
    p.write_text(json.dumps({"degree": 3, "components": []}))
    code, rep = cli("deform", cat("vec_z3"), "--cocycle", p, "--order", 2)
    assert code == 0 and rep["result"]["extended"]
    assert all(o["zero"] for o in rep["result"]["residual"])


def test_deform_class_order_one(tmp_path):
    out = tmp_path / "def.json"
    code, rep = cli("deform", cat("vec_z2_trivial"), "--field", "F2", "--class", 0, "--order", 1, "--out", out)
    assert code == 0 and [o["zero"] for o in rep["result"]["residual"]] == [True, True]
    from catdeform.complex import load_deformation

    d, cx, terms = load_deformation(out)
    assert len(terms) == 1 and not terms[0].is_zero()


def test_deform_class_order_two():
    code, rep = cli("deform", cat("vec_z2_trivial"), "--field", "F2", "--class", 0, "--order", 2)
    assert code == 0
    ob = rep["result"]["obstructions"][0]
    assert isinstance(ob["closed"], bool) and isinstance(ob["exact"], bool)
    comps = {tuple(c["tuple"]): c["matrix"] for c in ob["obstruction"]["components"]}
    assert comps[(1, 1, 1, 1)] == [["1"]]


def test_deform_rejects_non_cocycle(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"degree": 3, "components": [{"tuple": [0, 1, 1], "matrix": [["1"]]}]}))
    code, rep = cli("deform", cat("vec_z2_trivial"), "--field", "F2", "--cocycle", p, "--order", 2)
    assert code == 1
    assert cli("deform", cat("vec_z2_trivial"), "--order", 2)[0] == 2


# -- bicomplex ---------------------------------------------------------------

def gen_file(tmp_path, kind, group, field):
    out = tmp_path / f"{kind}_{group}_{field}.json"
    code, _ = cli("gen", kind, grp(group), "--field", field, "--out", out)
    assert code == 0
    return out


def test_bicomplex_grouplike(tmp_path):
    f = gen_file(tmp_path, "grouplike", "z2", "F2")
    code, rep = cli("bicomplex", f, "--max", 4, 4, "--solve", "d1", "--solve", "d2", "--total", 3)
    assert code == 0 and rep["result"]["identities"]["ok"]
    assert rep["result"]["d1"]["dim"] == 3
    assert all(c["verdict"]["ok"] for c in rep["result"]["d1"]["candidates"])


def test_bicomplex_function_and_trivial(tmp_path):
    code, rep = cli("bicomplex", gen_file(tmp_path, "function", "z2", "Q"), "--max", 3, 3)
    assert code == 0 and rep["result"]["identities"]["ok"]
    code, rep = cli("bicomplex", gen_file(tmp_path, "grouplike", "z1", "Q"), "--max", 3, 3)
    assert code == 0 and all(e["dim"] == 1 for e in rep["result"]["dims"])


def test_bicomplex_needs_bitensor():
    assert cli("bicomplex", cat("vec_z2_trivial"))[0] == 2


# -- oracle and gen ----------------------------------------------------------

@pytest.mark.parametrize("group,field,want", [("z2", "F2", [1, 1, 1]), ("z2", "Q", [0, 0, 0]), ("klein", "F2", [2, 3, 4])])
def test_oracle(group, field, want):
    code, rep = cli("oracle", grp(group), "--field", field)
    assert code == 0 and rep["result"]["dims_H"] == want


def test_gen_pointed_matches_bundled(tmp_path):
    for omega, name in [(None, "vec_z2_trivial"), (data_path("omega_z2"), "vec_z2_omega")]:
        out = tmp_path / "g.json"
        extra = ["--omega", omega] if omega else []
        code, _ = cli("gen", "pointed", grp("z2"), "--field", "Q", "--out", out, *extra)
        assert code == 0
        assert load_category(out).F == load_category(cat(name)).F


def test_gen_function_z3(tmp_path):
    out = gen_file(tmp_path, "function", "z3", "F3")
    d = load_category(out)
    assert d.biunital and d.unit == (1, 1, 1)


def test_gen_bad_omega(tmp_path):
    p = tmp_path / "w.json"
    vals = [{"g": g, "h": h, "k": k, "value": "-1" if (g, h, k) == (1, 0, 1) else "1"}
            for g in range(2) for h in range(2) for k in range(2)]
    p.write_text(json.dumps({"group_order": 2, "values": vals}))
    assert cli("gen", "pointed", grp("z2"), "--field", "Q", "--omega", p)[0] == 1


# -- determinism -------------------------------------------------------------

DETERMINISM = [
    ["validate", cat("fibonacci")],
    ["cohomology", cat("rep_s3"), "--emit-representatives"],
    ["deform", cat("vec_z2_trivial"), "--field", "F2", "--class", "0", "--order", "2"],
    ["oracle", grp("s3"), "--field", "F3"],
    ["gen", "function", grp("z3"), "--field", "F3"],
]


@pytest.mark.parametrize("argv", DETERMINISM, ids=lambda a: a[0])
def test_threads_do_not_change_results(argv):
    _, one = cli(*argv, "--threads", 1)
    _, many = cli(*argv, "--threads", 4)
    assert json.dumps(one["result"]) == json.dumps(many["result"])
    assert one["command"] == many["command"]


def test_pretty_and_entry_point():
    buf = io.StringIO()
    code, _ = run(["oracle", str(grp("z2")), "--field", "F2", "--pretty"], buf)
    assert code == 0 and buf.getvalue().startswith("oracle: ok")
    proc = subprocess.run([sys.executable, "-m", "catdeform", "oracle", str(grp("z2")), "--field", "F2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["dims_H"] == [1, 1, 1]
