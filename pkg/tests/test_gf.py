import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twokgen.errors import NonPrime, ParseError
from twokgen.gf import (
    FieldElement,
    count_defective,
    embedding,
    extension,
    field_create,
    generated_subfield,
    lift,
    parse_field,
    root_of_unity,
    subfields_bound,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2)]


def elements(p, a):
    f = field_create(p, a)
    return st.integers(0, f.q - 1).map(lambda c: FieldElement(f, c))


@pytest.mark.parametrize("p,a", FIELDS)
def test_multiplicative_group_is_cyclic_of_full_order(p, a):
    f = field_create(p, a)
    assert f.gen.order() == f.q - 1
    assert len({(f.gen**i).code for i in range(f.q - 1)}) == f.q - 1


@pytest.mark.parametrize("p,a", FIELDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(p, a, data):
    x, y, z = (data.draw(elements(p, a)) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (x / x) == 1
    assert x**x.spec.q == x
    assert (x + y).frobenius() == x.frobenius() + y.frobenius()


@pytest.mark.parametrize("p,a", [(2, 3), (3, 2), (5, 2), (2, 4)])
def test_multiplication_matches_sympy_polynomial_arithmetic(p, a):
    f = field_create(p, a)
    t = sympy.symbols("t")
    mod = sympy.Poly(list(reversed(f.modulus)), t, modulus=p)

    def to_poly(x):
        return sympy.Poly(list(reversed(x.coeffs)), t, modulus=p)

    for u in range(0, f.q, max(1, f.q // 9)):
        for v in range(1, f.q, max(1, f.q // 7)):
            x, y = FieldElement(f, u), FieldElement(f, v)
            prod = (to_poly(x) * to_poly(y)).rem(mod)
            assert prod == to_poly(x * y)


@pytest.mark.parametrize("p,a", FIELDS)
def test_format_parse_round_trip(p, a):
    f = field_create(p, a)
    for x in f.elements():
        assert f(f.format_code(x.code)) == x


def test_parse_field_forms():
    assert parse_field("3^2").q == 9
    assert parse_field("9") == field_create(3, 2)
    f = parse_field("3^2:2,2,1")
    assert f.q == 9 and f.modulus == (2, 2, 1)
    with pytest.raises(ParseError):
        parse_field("6")
    with pytest.raises(ParseError):
        field_create(3, 2)("z^")


def test_non_prime_characteristic_is_rejected():
    with pytest.raises(NonPrime):
        field_create(4, 1)


def test_gf9_generator_satisfies_its_modulus(gf9):
    z = gf9.gen
    assert z * z == z + 1


@pytest.mark.parametrize("p,a,m", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 2, 3)])
def test_embedding_is_a_ring_homomorphism(p, a, m):
    f = field_create(p, a)
    big, emb = extension(f, m)
    for x in f.elements():
        for y in f.elements():
            assert emb(x + y) == emb(x) + emb(y)
            assert emb(x * y) == emb(x) * emb(y)
        assert emb.pullback(emb(x)) == x
        assert lift(x, big) == emb(x)
    assert embedding(f, big) is emb


@pytest.mark.parametrize("p,a,k", [(7, 1, 3), (7, 1, 6), (5, 2, 8), (3, 1, 3), (3, 1, 6)])
def test_root_of_unity_order(p, a, k):
    f = field_create(p, a)
    eps = root_of_unity(f, k)
    if k == p:
        assert eps == 1
    elif k == 2 * p:
        assert eps == -1
    else:
        assert eps.order() == k


@pytest.mark.parametrize("p,a", [(2, 4), (3, 3), (5, 2), (2, 6)])
def test_generated_subfield_matches_orbit_size(p, a):
    f = field_create(p, a)
    for x in f.elements():
        orbit = {x.frobenius(i) for i in range(a)}
        assert generated_subfield(f, [x]) == len(orbit)


@pytest.mark.parametrize("p,a", [(2, 2), (3, 2), (2, 3), (5, 2), (2, 4), (3, 3)])
def test_count_defective_by_enumeration_and_bound(p, a):
    f = field_create(p, a)
    brute = sum(1 for r in f.nonzero() if generated_subfield(f, [r * r]) < a)
    assert count_defective(f) == brute <= subfields_bound(p, a)
