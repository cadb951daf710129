import json
import random
from fractions import Fraction

import pytest

from catdeform import data_path
from catdeform.algebra import QQ, CyclotomicField, PrimeField
from catdeform.category import (
    BitensorDatum,
    CocycleError,
    DatumError,
    FusionDatum,
    ParseError,
    ValidationError,
    category_to_json,
    cyclic,
    dims_report,
    direct_product,
    gauge_twist,
    gen_function_bitensor,
    gen_grouplike_bitensor,
    gen_pointed,
    klein,
    load_category,
    parse_category,
    pointed_omega,
    random_gauge,
    symmetric,
    validate,
    validate_pentagon,
)

from .conftest import BUNDLED, F2, F3, bundled

omega_sign = lambda a, b, c: Fraction(-1 if a * b * c else 1)


def test_vec_z2_trivial_loads():
    d = bundled("vec_z2_trivial")
    assert isinstance(d, FusionDatum) and d.n == 2
    assert all(blk == [[1]] for blk in d.F.values())


def test_vec_z2_omega_pentagon_count():
    rep = validate_pentagon(bundled("vec_z2_omega"))
    assert rep["ok"] and rep["instances"] == 16


def test_patched_file_names_failing_instance(tmp_path):
    data = json.loads(data_path("vec_z2_omega").read_text())
    for e in data["F"]:
        if (e["i"], e["j"], e["k"]) == (1, 1, 1):
            e["matrix"] = [["2"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(ValidationError) as err:
        load_category(p)
    assert "pentagon" in str(err.value)
    fails = err.value.report["pentagon"]["failures"]
    assert fails and all(len(f["tuple"]) == 4 for f in fails)
    assert any(1 in f["tuple"] for f in fails)


def test_parse_error_has_line(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"field": "Q",\n "simples": [1,\n')
    with pytest.raises(ParseError) as err:
        load_category(p)
    assert "line" in str(err.value)


def test_missing_key_is_parse_error():
    with pytest.raises(ParseError):
        parse_category({"field": "Q", "simples": ["a"]})


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_valid_and_roundtrip(name):
    d = bundled(name)
    assert validate(d)["ok"]
    again = parse_category(json.loads(json.dumps(category_to_json(d))))
    assert again.F == d.F and again.fusion == d.fusion and again.field == d.field


def test_fibonacci_field():
    d = bundled("fibonacci")
    assert d.field == CyclotomicField(5)
    assert validate_pentagon(d)["ok"]


def test_gen_pointed_examples():
    triv = gen_pointed(cyclic(2), QQ)
    assert triv.F == bundled("vec_z2_trivial").F
    om = gen_pointed(cyclic(2), QQ, omega_sign)
    assert om.F == bundled("vec_z2_omega").F and validate(om)["ok"]
    z3 = gen_pointed(cyclic(3), F3)
    assert z3.n == 3 and len(z3.F) == 27 and all(b == [[1]] for b in z3.F.values())


def test_gen_pointed_rejects_non_cocycle():
    bad = lambda a, b, c: Fraction(-1 if (a, b, c) == (1, 0, 1) else 1)
    with pytest.raises(CocycleError):
        gen_pointed(cyclic(2), QQ, bad)


def test_grouplike_examples():
    d = gen_grouplike_bitensor(cyclic(2), QQ)
    assert isinstance(d, BitensorDatum) and d.n == 2
    assert [d.coproducts(g) for g in range(2)] == [[(0, 0, 1)], [(1, 1, 1)]]
    d3 = gen_grouplike_bitensor(cyclic(3), F3)
    blocks = list(d3.coF.values()) + list(d3.kappa.values())
    assert d3.n == 3 and all(b == [[1]] for b in blocks)
    assert gen_grouplike_bitensor(cyclic(1), QQ).n == 1


def test_function_examples():
    d = gen_function_bitensor(cyclic(2), QQ)
    assert d.unit == (1, 1)
    d3 = gen_function_bitensor(cyclic(3), QQ)
    assert all(len(d3.coproducts(g)) == 3 for g in range(3))
    t = gen_function_bitensor(cyclic(1), QQ)
    g = gen_grouplike_bitensor(cyclic(1), QQ)
    assert (t.delta, t.counit, t.unit, t.base.fusion) == (g.delta, g.counit, g.unit, g.base.fusion)


def test_gauge_twist_examples():
    d = bundled("vec_z2_trivial")
    same = gauge_twist(d, lambda a, b: Fraction(1))
    assert same.F == d.F
    beta = lambda a, b: Fraction(-1 if a * b else 1)
    tw = gauge_twist(d, beta)
    assert validate(tw)["ok"]
    back = gauge_twist(tw, lambda a, b: 1 / beta(a, b))
    assert back.F == d.F


def test_random_gauge_keeps_cocycle():
    rng = random.Random(5)
    d = bundled("vec_z3")
    g = cyclic(3)
    for _ in range(3):
        d = gauge_twist(d, random_gauge(g, d.field, rng))
        assert validate(d)["ok"]
    w = pointed_omega(d)
    assert all(not d.field.is_zero(w(a, b, c)) for a in range(3) for b in range(3) for c in range(3))


def test_dims_report_examples():
    assert dims_report(bundled("vec_z2_trivial"), 3)["dim_X"][3] == 8
    fib = dims_report(bundled("fibonacci"), 3)["dim_X"]
    assert fib[2] == 5 and fib[3] == 15


def test_structural_errors():
    with pytest.raises(DatumError):
        FusionDatum(QQ, ["1", "x"], 0, [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], {(1, 1, 1, 1): [[0, 0], [0, 0]]})
    base = gen_pointed(cyclic(2), QQ)
    with pytest.raises(DatumError):
        BitensorDatum(base, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]])


def test_bitensor_roundtrip():
    d = gen_function_bitensor(cyclic(2), F2)
    again = parse_category(json.loads(json.dumps(category_to_json(d))))
    assert isinstance(again, BitensorDatum)
    assert again.delta == d.delta and again.counit == d.counit and again.kappa == d.kappa


def test_groups():
    assert klein().order == 4 and symmetric(3).order == 6
    assert direct_product(cyclic(2), cyclic(3)).order == 6
