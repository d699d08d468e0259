import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twokgen.gf import field_create
from twokgen.linalg import (
    Matrix,
    Poly,
    RowSpace,
    brute_force_invariant_subspaces,
    centralizer_dim,
    char_poly,
    enveloping_dim,
    find_invariant_subspace,
    invariant_subspace,
    is_invariant,
    min_poly,
    nullspace,
    rref,
    similarity_invariants,
)

PRIMES = [2, 3, 5, 7]


def random_matrix(f, n, rng):
    return Matrix(f, [[rng.randrange(f.q) for _ in range(n)] for _ in range(n)])


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from(PRIMES), seed=st.integers(0, 10**6))
def test_char_poly_and_det_match_sympy(p, seed):
    f = field_create(p)
    rng = random.Random(seed)
    M = random_matrix(f, 4, rng)
    t = sympy.symbols("t")
    S = sympy.Matrix([[M[i, j].as_int() for j in range(4)] for i in range(4)])
    ref = sympy.Poly(S.charpoly(t).as_expr(), t, modulus=p)
    ours = char_poly(M)
    assert [ours.coeff(i).as_int() % p for i in range(5)] == [
        int(c) % p for c in reversed(ref.all_coeffs())
    ]
    assert M.det().as_int() == int(S.det()) % p


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from(PRIMES + [4, 9]), seed=st.integers(0, 10**6))
def test_inverse_and_cayley_hamilton(p, seed):
    f = field_create(*( (2, 2) if p == 4 else (3, 2) if p == 9 else (p, 1)))
    rng = random.Random(seed)
    M = random_matrix(f, 4, rng)
    cp = char_poly(M)
    acc = Matrix.zeros(f, 4)
    for i in range(5):
        acc = acc + cp.coeff(i) * M**i
    assert acc == Matrix.zeros(f, 4)
    if M.det():
        assert (M * M.inverse()).is_identity()
        assert M.rank() == 4
    else:
        assert M.rank() < 4


@pytest.mark.parametrize("p", PRIMES)
def test_rref_and_nullspace(p):
    f = field_create(p)
    rng = random.Random(p)
    for _ in range(20):
        rows = [[rng.randrange(p) for _ in range(5)] for _ in range(3)]
        R, piv = rref(rows, f)
        K = nullspace(rows, f, 5)
        assert len(piv) + len(K) == 5
        for v in K:
            for r in rows:
                acc = 0
                for a, b in zip(r, v):
                    acc = f.add(acc, f.mul(a, b))
                assert acc == 0


def test_rowspace_membership():
    f = field_create(5)
    sp = RowSpace(f, 3)
    assert sp.add([1, 2, 3])
    assert not sp.add([2, 4, 1])
    assert [3, 1, 4] in sp
    assert [0, 0, 1] not in sp
    assert sp.dim == 1


def test_poly_arithmetic():
    f = field_create(7)
    t = Poly.t(f)
    one = Poly.const(f, 1)
    a = t * t - one
    q, r = divmod(a, t - one)
    assert q == t + one and r.is_zero()
    assert sorted(x.as_int() for x in a.roots()) == [1, 6]


def test_similarity_invariants_of_scalar_and_companion():
    f = field_create(3)
    I = Matrix.identity(f, 4)
    inv = similarity_invariants(2 * I)
    assert inv.degrees == [1, 1, 1, 1]
    J = Matrix(f, [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    assert similarity_invariants(J).degrees == [4]
    assert min_poly(J) == char_poly(J)


def test_centralizer_dimensions():
    f = field_create(5)
    assert centralizer_dim(Matrix.identity(f, 4)) == 16
    D = Matrix(f, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 4]])
    assert centralizer_dim(D) == 4


def test_enveloping_dim_of_reducible_and_irreducible_sets():
    f = field_create(3)
    upper = [Matrix(f, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])]
    assert enveloping_dim(upper) == 2
    perm = Matrix(f, [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    diag = Matrix(f, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert enveloping_dim([perm, diag]) == 16


def test_invariant_subspace_witnesses_agree_with_brute_force():
    f = field_create(2)
    g = Matrix(f, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    h = Matrix(f, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    for dim in (1, 2, 3):
        w = invariant_subspace([g, h], dim)
        brute = brute_force_invariant_subspaces([g, h], dim)
        assert (w is not None) == bool(brute)
        if w is not None:
            F, basis = w
            assert is_invariant([g.lift(F), h.lift(F)], basis)
    assert find_invariant_subspace([g, h]) is not None
