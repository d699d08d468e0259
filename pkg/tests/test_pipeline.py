import pytest

from twokgen.errors import TooLarge
from twokgen.gf import field_create
from twokgen.genpair import make_pair
from twokgen.grouporder import classical_order
from twokgen.linalg import find_invariant_subspace
from twokgen.pipeline import VERDICTS, classify, subfield_realization, summarize, sweep, sweep_tuples


@pytest.mark.parametrize(
    "d,r,label",
    [
        (1, (0, 0, 0, 1), "FullGroup(SL4)"),
        (-1, (0, 0, 0, 1), "FullGroup(SL4)"),
        (1, (0, 1, 0, 1), "Exceptional(alt5: Alt(5))"),
        (-1, (0, 1, 0, 1), "FixesForm(symmetric)"),
        (1, (0, -3, 0, 3), "FixesForm(skew (multipliers -1,1))"),
        (-1, (0, -3, 0, 3), "Exceptional(a7: PSL2(7))"),
    ],
)
def test_classify_examples_over_gf7(d, r, label):
    c = classify(make_pair(field_create(7), 3, d, *r))
    assert c.label == label
    assert c.verdict in VERDICTS


def test_full_group_evidence_matches_classical_order():
    c = classify(make_pair(field_create(7), 3, 1, 0, 0, 0, 1))
    assert c.evidence["order"]["order"] == classical_order("SL4", 7)


def test_reducible_verdict_has_subspace_witness(gf9):
    base = make_pair(gf9, 4, 1, 0, 0, 0, 1)
    pair = make_pair(gf9, 4, 1, 0, -base.eps * gf9.gen, 0, gf9.gen)
    c = classify(pair)
    assert c.verdict == "Reducible"
    assert find_invariant_subspace([pair.x, pair.y]) is not None


def test_subfield_defined(gf9):
    pair = make_pair(gf9, 4, 1, 0, 0, 0, gf9.gen**2)
    assert subfield_realization(pair) == 1
    assert classify(pair).label == "SubfieldDefined(GF(3^1))"


def test_sweep_sl4_family_over_gf3():
    records = sweep(field_create(3), 3, 1, "r2=0")
    assert [r.params["r"] for r in records] == [["0", "0", "0", "1"], ["0", "0", "0", "-1"]]
    assert summarize(records) == {"FullGroup": 2}


def test_sweep_sp4_family_over_gf5():
    records = sweep(field_create(5), 3, -1, "r2=-r4")
    assert summarize(records) == {"FullGroup": 4}
    assert all(r.classification.detail == "Sp4" for r in records)


def test_sweep_unitary_family_over_gf9_never_generates(gf9):
    for d in (1, -1):
        records = sweep(gf9, 3, d, "r2=d*r4^q")
        assert records and "FullGroup" not in summarize(records)


def test_sweep_is_deterministic_across_worker_counts():
    f = field_create(5)
    one = [r.to_dict() for r in sweep(f, 4, 1, "r2=0")]
    two = [r.to_dict() for r in sweep(f, 4, 1, "r2=0", jobs=2)]
    strip = lambda rows: [(r["params"], r["label"]) for r in rows]  # noqa: E731
    assert strip(one) == strip(two)


def test_sweep_caps_and_bad_input():
    with pytest.raises(TooLarge):
        list(sweep_tuples(field_create(11), 1, "all"))
    with pytest.raises(ValueError):
        list(sweep_tuples(field_create(7), 1, "r2=d*r4^q"))
    with pytest.raises(ValueError):
        list(sweep_tuples(field_create(7), 1, "bogus"))
    with pytest.raises(TooLarge):
        sweep(field_create(2, 5), 3, 1, "r2=0")


def test_order_cap_gives_undetermined():
    c = classify(make_pair(field_create(7), 3, 1, 0, 0, 0, 1), max_points=1000)
    assert c.label == "Undetermined(order computation capped)"
