import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twokgen.errors import DegenerateY, OrderUnavailable
from twokgen.gf import FieldElement, field_create
from twokgen.genpair import admissible_k, make_pair
from twokgen.forms import (
    char2_bound_check,
    classic_necessary,
    conj_action_trace,
    explicit_classic_form,
    explicit_form_det,
    fixform_bound_check,
    orthogonal_trap,
    pair_forms,
    scott,
    solve_forms,
)
from twokgen.linalg import enveloping_dim

ODD = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)]


def specialized_pair(p, a, seed, lam):
    f = field_create(p, a)
    rng = random.Random(seed)
    while True:
        k = rng.choice(admissible_k(f.q, p))
        d = rng.choice([1, -1])
        r4 = FieldElement(f, rng.randrange(1, f.q))
        try:
            pair = make_pair(f, k, d, 0, lam * r4, 0, r4)
        except (DegenerateY, OrderUnavailable):
            continue
        if lam == 1 and pair.s == -2:
            continue
        return pair


@settings(max_examples=80, deadline=None)
@given(fa=st.sampled_from(ODD), seed=st.integers(0, 10**6), lam=st.sampled_from([1, -1]))
def test_explicit_form_relations_and_determinant(fa, seed, lam):
    pair = specialized_pair(*fa, seed, lam)
    J, got = explicit_classic_form(pair)
    assert got == lam
    f = pair.field
    assert pair.x.T * J * pair.x == f(lam * pair.d) * J
    assert pair.y.T * J * pair.y == J
    assert J.det() == explicit_form_det(pair, lam)
    assert (J.T == J) if lam == 1 else (J.T == -J)


def test_forms_found_by_solver_hold_for_generators():
    f = field_create(7)
    sym = make_pair(f, 3, -1, 0, 1, 0, 1)
    kinds = {F.kind for F in solve_forms([sym.x, sym.y]).forms}
    assert "symmetric" in kinds
    skew = make_pair(f, 3, 1, 0, -3, 0, 3)
    sols = solve_forms([skew.x, skew.y])
    assert any(F.kind == "skew" and [str(m) for m in F.multipliers] == ["-1", "1"] for F in sols.forms)
    for F in sols.forms:
        assert F.holds_for([skew.x, skew.y])


def test_hermitian_form_for_unitary_pair(gf9):
    z = gf9.gen
    pair = make_pair(gf9, 6, 1, z, z, z**7, 0)
    sols = pair_forms(pair, hermitian=True, multiplier_scan=[(gf9.one, gf9.one)])
    assert sols.forms and sols.forms[0].kind == "hermitian"


def test_classic_necessary_conditions():
    f = field_create(7)
    assert classic_necessary(make_pair(f, 3, 1, 0, 2, 0, 2)) == {"CO/CSp"}
    assert classic_necessary(make_pair(f, 3, 1, 0, 2, 0, 3)) == set()


@pytest.mark.parametrize("p,a", [(3, 1), (5, 1), (2, 2)])
def test_scott_counts_on_absolutely_irreducible_pairs(p, a):
    f = field_create(p, a)
    rng = random.Random(0)
    seen = 0
    for _ in range(60):
        try:
            pair = make_pair(f, rng.choice(admissible_k(f.q, p)), 1,
                             *(FieldElement(f, rng.randrange(f.q)) for _ in range(4)))
        except (DegenerateY, OrderUnavailable):
            continue
        if enveloping_dim([pair.x, pair.y]) < 16:
            continue
        rep = scott(pair)
        assert (rep.d_x, rep.d_y, rep.d_xy, rep.sum, rep.rigid) == (8, 6, 4, 18, True)
        seen += 1
    assert seen > 0


def test_orthogonal_trap_over_f2():
    f = field_create(2)
    for r in ((1, 0, 0, 0), (0, 1, 0, 1), (0, 0, 1, 1)):
        assert orthogonal_trap(make_pair(f, 3, 1, *r))
    assert not orthogonal_trap(make_pair(field_create(7), 3, 1, 0, 0, 0, 1))


@pytest.mark.parametrize("p,a", [(5, 1), (7, 1), (3, 2)])
def test_conjugation_traces_of_specialized_pairs(p, a):
    f = field_create(p, a)
    for k in admissible_k(f.q, p)[:3]:
        for d in (1, -1):
            for r2 in list(f.elements())[:5]:
                for r4 in list(f.elements())[:5]:
                    try:
                        pair = make_pair(f, k, d, 0, r2, 0, r4)
                    except (DegenerateY, OrderUnavailable):
                        continue
                    s, D = pair.s, f(d)
                    assert conj_action_trace(pair.y) == (s + 2) ** 2
                    assert conj_action_trace(pair.xy) == D * r2 * r4
                    expected = r2**2 * r4**2 + 2 * D * s * (r2**2 + r4**2) + 4 * s**2
                    assert conj_action_trace(pair.xy * pair.xy) == expected


def test_symmetric_square_bounds():
    f = field_create(7)
    pair = make_pair(f, 3, 1, 0, 3, 0, 3)
    J, _ = explicit_classic_form(pair)
    assert J.det()
    chk = fixform_bound_check(pair.y, J, 1)
    assert chk.holds
    pair2 = make_pair(field_create(2, 2), 3, 1, 0, 1, 0, 1)
    assert char2_bound_check(pair2.xy).holds
