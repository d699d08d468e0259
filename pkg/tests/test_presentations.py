import pytest

from twokgen.errors import ArityMismatch
from twokgen.gf import field_create
from twokgen.genpair import make_pair
from twokgen.grouporder import verdict
from twokgen.linalg import Matrix
from twokgen.words import evaluate, parse_word
from twokgen.presentations import (
    case_entry,
    check_fixture,
    check_images,
    check_presentation,
    identify_quotient,
    presentations,
    rejected_readings,
    verify_case,
)


@pytest.mark.parametrize("pid", ["A5", "L27_a", "L27_b", "L34", "A6", "A7"])
def test_fixture_groups_satisfy_relators_with_target_order(pid):
    ok, order = check_fixture(pid)
    assert ok and order == presentations()[pid].order


def test_rejected_readings_fail_on_fixture():
    pres = presentations()["L34"]
    fx = pres.fixture
    perms = {g: tuple(fx["generators"][g]) for g in pres.generators}
    ident = tuple(range(fx["degree"]))

    def mul(a, b):
        return tuple(b[i] for i in a)

    def inv(a):
        out = [0] * len(a)
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    readings = rejected_readings("L34")
    assert readings
    for reading in readings:
        values = [evaluate(parse_word(r), perms, mul, inv, ident) for r in reading]
        assert any(v != ident for v in values)


def test_alt5_pair_certified_and_proper():
    f = field_create(7)
    pair = make_pair(f, 3, 1, 0, 1, 0, 1)
    pc = check_presentation("A5", {"S": "x", "T": "y"}, pair)
    assert pc.certified and pc.projective_order == 60
    assert verdict(pair, "SL4").result == "proper"


def test_certification_declined_on_trivial_group():
    f = field_create(5)
    I = Matrix.identity(f, 4)
    pc = check_images("A5", {"S": I, "T": I})
    assert pc.holds and not pc.nontrivial and not pc.certified


def test_relators_fail_for_generating_pair():
    pair = make_pair(field_create(7), 3, 1, 0, 0, 0, 1)
    assert not check_presentation("A5", {"S": "x", "T": "y"}, pair).holds


def test_check_presentation_is_conjugation_invariant():
    f = field_create(7)
    pair = make_pair(f, 3, 1, 0, 1, 0, 1)
    c = Matrix(f, [[1, 2, 0, 0], [0, 1, 3, 0], [0, 0, 1, 4], [1, 0, 0, 1]])
    assert c.det()
    ci = c.inverse()
    conj = {"x": ci * pair.x * c, "y": ci * pair.y * c}
    a = check_presentation("A5", {"S": "x", "T": "y"}, pair)
    b = check_presentation("A5", {"S": "x", "T": "y"}, conj)
    assert (a.holds, a.certified) == (b.holds, b.certified)


def test_arity_mismatch():
    pair = make_pair(field_create(7), 3, 1, 0, 1, 0, 1)
    with pytest.raises(ArityMismatch):
        check_presentation("A6", {"S": "x", "T": "y"}, pair)


@pytest.mark.parametrize("label,expected", [("2.2.3", 128), ("2.2.4", 2304), ("2.2.5", 2304)])
def test_case_orders(label, expected):
    outs = verify_case(case_entry(label))
    assert outs and all(o.ok and o.detail["order"] == expected for o in outs)


@pytest.mark.parametrize("label", ["2.2.1", "2.5.1", "2.2.7"])
def test_case_presentations(label):
    assert all(o.ok for o in verify_case(case_entry(label)))


def test_identify_quotient_names():
    f = field_create(7)
    assert identify_quotient(make_pair(f, 3, 1, 0, 1, 0, 1)).name == "Alt(5)"
    assert identify_quotient(make_pair(f, 3, -1, 0, -3, 0, 3)).name == "PSL2(7)"
