import pytest
from hypothesis import given
from hypothesis import strategies as st

from twokgen.errors import ParseError
from twokgen.words import evaluate, inverse, letters, parse_word, power


def perm_mul(a, b):
    return tuple(b[i] for i in a)


def perm_inv(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def test_parse_basic_forms():
    assert parse_word("S^2") == (("S", 2),)
    assert parse_word("(ST)^2") == (("S", 1), ("T", 1), ("S", 1), ("T", 1))
    assert parse_word("[S,T]") == (("S", -1), ("T", -1), ("S", 1), ("T", 1))
    assert parse_word("T1T2^-1T2") == (("T1", 1),)
    assert letters(parse_word("xy^-1g3")) == {"x", "y", "g3"}


@pytest.mark.parametrize("bad", ["S^", "(ST", "[S T]", "S)"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_word(bad)


words = st.lists(st.tuples(st.sampled_from("ST"), st.integers(-3, 3)), max_size=8)


@given(words, st.integers(-3, 3))
def test_inverse_and_power_evaluate_consistently(raw, e):
    w = tuple((n, k) for n, k in raw if k)
    images = {"S": (1, 0, 2, 3, 4), "T": (1, 2, 3, 4, 0)}
    ident = tuple(range(5))

    def ev(word):
        return evaluate(word, images, perm_mul, perm_inv, ident)

    assert perm_mul(ev(w), ev(inverse(w))) == ident
    expected = ident
    for _ in range(abs(e)):
        expected = perm_mul(expected, ev(w) if e > 0 else ev(inverse(w)))
    assert ev(power(w, e)) == expected


def test_missing_image():
    with pytest.raises(KeyError):
        evaluate(parse_word("U"), {"S": 1}, lambda a, b: a, lambda a: a, 0)
