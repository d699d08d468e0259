import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_pairs
from twokgen.errors import DegenerateY, OrderUnavailable, RequiresSpecialization
from twokgen.gf import FieldElement, field_create
from twokgen.genpair import (
    EXCEPTIONS,
    admissible_k,
    exception_witness,
    exceptional_match,
    field_lower_bound,
    make_pair,
    parse_pair,
    reducibility,
    xy_char_poly_closed,
    xy_inv_char_poly_closed,
    y_eigenvector,
)
from twokgen.linalg import Matrix, char_poly, enveloping_dim

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)]


def random_pair(p, a, seed):
    f = field_create(p, a)
    rng = random.Random(seed)
    ks = admissible_k(f.q, p)
    while True:
        k = rng.choice(ks)
        d = rng.choice([1] if p == 2 else [1, -1])
        try:
            return make_pair(f, k, d, *(FieldElement(f, rng.randrange(f.q)) for _ in range(4)))
        except (DegenerateY, OrderUnavailable):
            continue


@settings(max_examples=60, deadline=None)
@given(fa=st.sampled_from(FIELDS), seed=st.integers(0, 10**6))
def test_generator_shapes(fa, seed):
    pair = random_pair(*fa, seed)
    f = pair.field
    assert pair.x * pair.x == Matrix.scalar(f, 4, pair.d)
    assert pair.x.det() == 1 and pair.y.det() == 1
    yk = pair.y ** pair.k
    assert yk.is_scalar() is not None
    assert all((pair.y**h).is_scalar() is None for h in range(1, pair.k))


@settings(max_examples=60, deadline=None)
@given(fa=st.sampled_from(FIELDS), seed=st.integers(0, 10**6))
def test_closed_char_polys_match_direct_computation(fa, seed):
    pair = random_pair(*fa, seed)
    assert xy_char_poly_closed(pair) == char_poly(pair.xy)
    assert xy_inv_char_poly_closed(pair) == char_poly(pair.xy.inverse())


@settings(max_examples=30, deadline=None)
@given(fa=st.sampled_from([(5, 1), (7, 1), (3, 2)]), seed=st.integers(0, 10**6))
def test_y_eigenvectors(fa, seed):
    pair = random_pair(*fa, seed)
    if pair.eps == 1 or pair.eps == -1:
        return
    for j in (1, -1):
        y_eigenvector(pair, j)  # asserts y u = eps^j u internally


def test_admissible_k_by_definition():
    assert admissible_k(7, 7) == [3, 4, 6, 7, 8, 14]
    assert admissible_k(2, 2) == [3, 4]
    assert admissible_k(4, 2) == [3, 4, 5]
    for q, p in ((9, 3), (25, 5), (8, 2)):
        for k in admissible_k(q, p):
            assert (q - 1) % k == 0 or (q + 1) % k == 0 or k in (p, 2 * p)


def test_degenerate_and_unavailable_inputs():
    f = field_create(5)
    with pytest.raises(DegenerateY):
        make_pair(f, 5, 1, 1, 1, 2, 2)
    with pytest.raises(OrderUnavailable):
        make_pair(f, 7, 1, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        make_pair(f, 3, 2, 0, 0, 0, 1)


def test_parse_pair():
    pair = parse_pair("q=3^2 k=4 d=-1 r=0,z,0,z^3")
    assert pair.field.q == 9 and pair.k == 4 and pair.d == -1
    assert pair.r2 == pair.field.gen and pair.r4 == pair.field.gen ** 3


@pytest.mark.parametrize("p,a", [(2, 1), (3, 1)])
def test_reducibility_conditions_match_enveloping_algebra(p, a):
    for pair in all_pairs(field_create(p, a)):
        assert reducibility(pair).reducible == (enveloping_dim([pair.x, pair.y]) < 16)


def test_specialized_reducible_condition_over_gf9(gf9):
    base = make_pair(gf9, 4, 1, 0, 0, 0, 1)
    eps = base.eps
    r4 = gf9.gen
    r2 = -eps * r4
    pair = make_pair(gf9, 4, 1, 0, r2, 0, r4)
    rep = reducibility(pair)
    assert rep.reducible and rep.newreducible["r2=-eps^(+-1)r4"]


def test_field_lower_bound(gf9):
    assert field_lower_bound(make_pair(gf9, 4, 1, 0, 1, 0, 1)) == 1
    assert field_lower_bound(make_pair(gf9, 4, 1, 0, 0, 0, gf9.gen)) == 2


@pytest.mark.parametrize("row", [r.id for r in EXCEPTIONS[2:]])
def test_each_exceptional_row_has_a_matching_witness(row):
    pair = exception_witness(row)
    assert pair is not None
    assert row in [m.row.id for m in exceptional_match(pair)]


def test_exceptional_match_needs_specialized_pair():
    pair = make_pair(field_create(7), 3, 1, 1, 0, 0, 1)
    with pytest.raises(RequiresSpecialization):
        exceptional_match(pair)
