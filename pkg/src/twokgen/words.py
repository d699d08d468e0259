"""Group words: parsing and evaluation.

Grammar (letters are generator names such as S, T, T1, x, y, g3):

    word   := factor*
    factor := atom ('^' int)?
    atom   := NAME | '(' word ')' | '[' word ',' word ']'

[a, b] is the commutator a^-1 b^-1 a b.  Parsed words are tuples of
(name, exponent) pairs after free reduction.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping, TypeVar

from .errors import ParseError

E = TypeVar("E")
Word = tuple[tuple[str, int], ...]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][0-9]*)|(?P<int>-?\d+)|(?P<sym>[\^\(\)\[\],]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad word {text!r} at {pos}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def _reduce(word: list[tuple[str, int]]) -> Word:
    out: list[tuple[str, int]] = []
    for name, e in word:
        if out and out[-1][0] == name:
            e += out.pop()[1]
        if e:
            out.append((name, e))
    return tuple(out)


def inverse(word: Word) -> Word:
    return tuple((name, -e) for name, e in reversed(word))


def power(word: Word, e: int) -> Word:
    base = word if e >= 0 else inverse(word)
    return _reduce(list(base) * abs(e))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, sym: str) -> None:
        if self.peek() != ("sym", sym):
            raise ParseError(f"expected {sym!r} in {self.text!r}")
        self.i += 1

    def word(self) -> Word:
        parts: list[tuple[str, int]] = []
        while True:
            kind, val = self.peek()
            if kind == "name" or (kind == "sym" and val in "(["):
                parts.extend(self.factor())
            else:
                return _reduce(parts)

    def factor(self) -> Word:
        kind, val = self.peek()
        if kind == "name":
            self.i += 1
            atom: Word = ((val, 1),)
        elif val == "(":
            self.i += 1
            atom = self.word()
            self.take(")")
        elif val == "[":
            self.i += 1
            a = self.word()
            self.take(",")
            b = self.word()
            self.take("]")
            atom = _reduce(list(inverse(a) + inverse(b) + a + b))
        else:
            raise ParseError(f"unexpected token in {self.text!r}")
        if self.peek() == ("sym", "^"):
            self.i += 1
            kind, val = self.peek()
            if kind != "int":
                raise ParseError(f"exponent expected in {self.text!r}")
            self.i += 1
            atom = power(atom, int(val))
        return atom


def parse_word(text: str) -> Word:
    p = _Parser(text)
    w = p.word()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    return w


def letters(word: Word) -> set[str]:
    return {name for name, _ in word}


def evaluate(
    word: Word,
    images: Mapping[str, E],
    mul: Callable[[E, E], E],
    inv: Callable[[E], E],
    identity: E,
) -> E:
    """Evaluate a word by repeated multiplication (left to right)."""
    inverses: dict[str, E] = {}
    acc = identity
    for name, e in word:
        if name not in images:
            raise KeyError(f"no image for generator {name!r}")
        if e < 0:
            if name not in inverses:
                inverses[name] = inv(images[name])
            g = inverses[name]
        else:
            g = images[name]
        for _ in range(abs(e)):
            acc = mul(acc, g)
    return acc
