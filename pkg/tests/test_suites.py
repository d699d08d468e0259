from twokgen.gf import field_create
from twokgen.suites import SUITES, s_values, tuples_48_54, verify


def test_registry_covers_every_suite_name():
    assert set(SUITES) == {
        "nr-i", "nr-ii", "nr-iii", "nr-iv", "sl3-su9-not23", "sl-not24", "psu-not24",
        "sl4", "sp4", "su4", "su4-2", "lemma26", "table4", "table5", "tuples-48-54",
    }


def test_s_values():
    assert [str(s) for s in s_values(field_create(7), 7)] == ["2"]
    assert [str(s) for s in s_values(field_create(7), 14)] == ["-2"]
    assert [str(s) for s in s_values(field_create(7), 3)] == ["-1"]
    assert len(s_values(field_create(2, 2), 5)) == 2


def test_48_and_54_tuples_two_routes(gf9):
    assert len(tuples_48_54(gf9, 1, use_oracle=False)) == 48
    assert len(tuples_48_54(gf9, -1, use_oracle=True)) == 54


def test_fast_suites_pass():
    for name in ("lemma26", "nr-iii", "table4"):
        rep = verify(name)
        assert rep.passed, [c.to_dict() for c in rep.claims if c.passed is False]
