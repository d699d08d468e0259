"""Exact arithmetic in GF(p^a).

Elements are stored as integer codes: the residue c_0 + c_1 t + ... + c_{a-1} t^{a-1}
modulo the field's modulus is encoded as sum(c_i * p**i).  The modulus is always
primitive, so the class of t (written ``z``) generates the multiplicative group and
multiplication runs through log/antilog tables.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DegreeTooLarge,
    FieldMismatch,
    NonPrime,
    NoPrimitivePolynomial,
    NotPrimitive,
    OrderUnavailable,
    ParseError,
)

MAX_DEGREE = 12
MAX_ORDER = 2**24
# Fields up to this size get full q x q addition and multiplication tables.
FULL_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _balanced(c: int, p: int) -> int:
    return c if c <= p // 2 else c - p


# --- polynomials over F_p as coefficient lists (constant first), used only while
# choosing and validating moduli.

def _pmulmod(u: Sequence[int], v: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = len(f) - 1
    prod = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                prod[i + j] = (prod[i + j] + ui * vj) % p
    # f is monic
    for k in range(len(prod) - 1, a - 1, -1):
        c = prod[k]
        if c:
            for j in range(a + 1):
                prod[k - a + j] = (prod[k - a + j] - c * f[j]) % p
    prod = prod[:a] + [0] * max(0, a - len(prod))
    return prod


def _ppowmod(e: int, f: Sequence[int], p: int) -> list[int]:
    """t**e modulo f."""
    a = len(f) - 1
    result = [1] + [0] * (a - 1)
    base = ([0, 1] + [0] * (a - 2)) if a > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive_modulus(f: Sequence[int], p: int) -> bool:
    """True iff t generates the unit group of F_p[t]/(f).

    If t has order p^a - 1 then every nonzero residue is a power of t, so the
    quotient ring is a field and f is irreducible as well.
    """
    a = len(f) - 1
    if a < 1 or f[-1] % p != 1 or f[0] % p == 0:
        return False
    n = p**a - 1
    one = [1] + [0] * (a - 1)
    if _ppowmod(n, f, p) != one:
        return False
    return all(_ppowmod(n // r, f, p) != one for r in prime_factors(n))


def canonical_modulus(p: int, a: int) -> tuple[int, ...]:
    """Least primitive monic polynomial of degree a, constant term first.

    Coefficients are compared as balanced residues in (-p/2, p/2], so GF(9)
    gets t^2 - t - 1.
    """
    order = sorted(range(p), key=lambda c: _balanced(c, p))
    for low in itertools.product(order, repeat=a):
        f = tuple(low) + (1,)
        if is_primitive_modulus(f, p):
            return f
    raise NoPrimitivePolynomial(f"no primitive polynomial of degree {a} over F_{p}")


class FieldSpec:
    """The field F_p[t]/(modulus) with tables for fast code arithmetic."""

    def __init__(self, p: int, a: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if a < 1 or a > MAX_DEGREE or p**a > MAX_ORDER:
            raise DegreeTooLarge(f"GF({p}^{a}) exceeds the caps a <= {MAX_DEGREE}, q <= 2^24")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != a + 1 or not is_primitive_modulus(modulus, p):
            raise NotPrimitive(f"{list(modulus)} is not a primitive degree-{a} polynomial mod {p}")
        self.p = p
        self.a = a
        self.q = p**a
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, a, q = self.p, self.a, self.q
        n = q - 1
        codes = np.arange(q, dtype=np.int64)
        pw = p ** np.arange(a, dtype=np.int64)
        digits = (codes[:, None] // pw) % p
        self._pw = pw
        self._digits = digits
        # multiplication by t as a map on codes
        top = digits[:, a - 1]
        shifted = np.zeros_like(digits)
        shifted[:, 1:] = digits[:, :-1]
        mod_low = np.array(self.modulus[:a], dtype=np.int64)
        shifted = (shifted - top[:, None] * mod_low[None, :]) % p
        times_t = (shifted @ pw).tolist()
        exp = [0] * n
        c = 1
        for i in range(n):
            exp[i] = c
            c = times_t[c]
        log = [-1] * q
        for i, c in enumerate(exp):
            log[c] = i
        self.exp = exp
        self.log = log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)
        self.neg_table = ((-digits) % p @ pw).tolist()
        plus_one = digits.copy()
        plus_one[:, 0] = (plus_one[:, 0] + 1) % p
        plus_one_codes = plus_one @ pw
        # zech[k] = log(1 + z^k), -1 when 1 + z^k = 0
        self.zech = self._log_np[plus_one_codes[self._exp_np]].tolist()
        self.full_tables = q <= FULL_TABLE_LIMIT
        if self.full_tables:
            self.add_np = ((digits[:, None, :] + digits[None, :, :]) % p) @ pw
            lg = self._log_np
            s = (lg[:, None] + lg[None, :]) % n
            mul = self._exp_np[s]
            mul[0, :] = 0
            mul[:, 0] = 0
            self.mul_np = mul
            self.add_table = self.add_np.tolist()
            self.mul_table = mul.tolist()

    # ---- identity
    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.a})" if self.a > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_from_modulus, (self.p, self.modulus))

    # ---- code-level arithmetic
    def add(self, u: int, v: int) -> int:
        if self.full_tables:
            return self.add_table[u][v]
        if u == 0:
            return v
        if v == 0:
            return u
        n = self.q - 1
        lu = self.log[u]
        z = self.zech[(self.log[v] - lu) % n]
        return 0 if z < 0 else self.exp[(lu + z) % n]

    def neg(self, u: int) -> int:
        return self.neg_table[u]

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg_table[v])

    def mul(self, u: int, v: int) -> int:
        if self.full_tables:
            return self.mul_table[u][v]
        if u == 0 or v == 0:
            return 0
        return self.exp[(self.log[u] + self.log[v]) % (self.q - 1)]

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("division by zero in " + repr(self))
        return self.exp[(-self.log[u]) % (self.q - 1)]

    def div(self, u: int, v: int) -> int:
        return self.mul(u, self.inv(v))

    def pow(self, u: int, e: int) -> int:
        if u == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[u] * e) % (self.q - 1)]

    def frob(self, u: int, i: int = 1) -> int:
        if u == 0:
            return 0
        return self.exp[(self.log[u] * pow(self.p, i % self.a, self.q - 1)) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def digits(self, u: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[u])

    def code_degree(self, u: int) -> int:
        """Degree over F_p of the minimal polynomial of the element with code u."""
        for i in range(1, self.a + 1):
            if self.a % i == 0 and self.frob(u, i) == u:
                return i
        return self.a

    def is_square_code(self, u: int) -> bool:
        return u == 0 or self.p == 2 or self.log[u] % 2 == 0

    def sqrt_code(self, u: int) -> int | None:
        if u == 0:
            return 0
        n = self.q - 1
        if self.p == 2:
            return self.exp[(self.log[u] * pow(2, -1, n)) % n] if n > 1 else 1
        lu = self.log[u]
        if lu % 2:
            return None
        return self.exp[lu // 2]

    # ---- element-level conveniences
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        if isinstance(value, str):
            return FieldElement(self, self.parse_code(value))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The canonical generator: the class of t."""
        return FieldElement(self, self.exp[1 % (self.q - 1)])

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def nonzero(self) -> Iterator["FieldElement"]:
        for c in range(1, self.q):
            yield FieldElement(self, c)

    def prime_subfield(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.p)]

    def format_code(self, u: int) -> str:
        if u < self.p:
            return str(_balanced(u, self.p))
        return f"z^{self.log[u]}"

    def parse_code(self, text: str) -> int:
        s = text.replace(" ", "").replace("−", "-")
        if not s:
            raise ParseError("empty field element")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ParseError(f"cannot parse field element {text!r}")
        total = 0
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            body = term.lstrip("+-")
            m = re.fullmatch(r"(?:(\d+)\*?)?z(?:\^(-?\d+))?", body)
            if m:
                coef = int(m.group(1)) if m.group(1) else 1
                e = int(m.group(2)) if m.group(2) is not None else 1
                val = self.mul(coef % self.p, self.exp[e % (self.q - 1)])
            elif re.fullmatch(r"\d+", body):
                val = int(body) % self.p
            else:
                raise ParseError(f"cannot parse field element {text!r}")
            total = self.add(total, val if sign > 0 else self.neg(val))
        return total

    def element_from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.a:
            raise ValueError("too many coefficients")
        code = sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))
        return FieldElement(self, code)

    def mul_matrix(self, u: int) -> np.ndarray:
        """Matrix over F_p of multiplication by the element u in the basis 1, z, ..., z^(a-1)."""
        cols = [self._digits[self.mul(u, int(self._pw[j]))] for j in range(self.a)]
        return np.array(cols, dtype=np.int64).T

    def to_string(self) -> str:
        return f"{self.p}^{self.a}:" + ",".join(str(c) for c in self.modulus)


class FieldElement:
    """A value in a FieldSpec; immutable, hashable, and usable with int operands."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatch(f"{other.spec!r} vs {self.spec!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.spec.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.div(o, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.code == other.code and self.spec == other.spec
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.code)

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return self.spec.format_code(self.code)

    __str__ = __repr__

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.code)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def frobenius(self, i: int = 1) -> "FieldElement":
        return frobenius(self, i)

    def degree(self) -> int:
        return self.spec.code_degree(self.code)

    def is_square(self) -> bool:
        return self.spec.is_square_code(self.code)

    def log(self) -> int:
        if self.code == 0:
            raise ValueError("log of zero")
        return self.spec.log[self.code]

    def order(self) -> int:
        """Multiplicative order."""
        n = self.spec.q - 1
        return n // math.gcd(n, self.log())

    def in_prime_field(self) -> bool:
        return self.code < self.spec.p

    def as_int(self) -> int:
        if not self.in_prime_field():
            raise ValueError(f"{self!r} is not in the prime field")
        return self.code


# ---- public operations

@lru_cache(maxsize=None)
def field_create(p: int, a: int = 1) -> FieldSpec:
    """GF(p^a) with the canonical (least primitive) modulus."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if a < 1 or a > MAX_DEGREE or p**a > MAX_ORDER:
        raise DegreeTooLarge(f"GF({p}^{a}) exceeds the caps a <= {MAX_DEGREE}, q <= 2^24")
    return FieldSpec(p, a, canonical_modulus(p, a))


@lru_cache(maxsize=None)
def field_from_modulus(p: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, len(modulus) - 1, modulus)


def parse_field(text: str) -> FieldSpec:
    """Parse "p^a", "q" or "p^a:c0,c1,...,ca"."""
    s = text.strip().replace(" ", "")
    head, _, mod = s.partition(":")
    try:
        if "^" in head:
            ps, as_ = head.split("^", 1)
            p, a = int(ps), int(as_)
        else:
            q = int(head)
            p = prime_factors(q)[0] if q > 1 else q
            a = round(math.log(q, p)) if q > 1 else 0
            if p**a != q or len(prime_factors(q)) != 1:
                raise ParseError(f"{q} is not a prime power")
    except ValueError as exc:
        raise ParseError(f"bad field spec {text!r}") from exc
    if not mod:
        return field_create(p, a)
    try:
        coeffs = tuple(int(c) for c in mod.split(","))
    except ValueError as exc:
        raise ParseError(f"bad modulus in {text!r}") from exc
    if len(coeffs) != a + 1:
        raise ParseError(f"modulus for degree {a} needs {a + 1} coefficients")
    return field_from_modulus(p, tuple(c % p for c in coeffs))


def arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    if x.spec != y.spec:
        raise FieldMismatch(f"{x.spec!r} vs {y.spec!r}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: FieldElement, i: int = 1) -> FieldElement:
    """x ** (p ** i)."""
    return FieldElement(x.spec, x.spec.frob(x.code, i))


def root_of_unity(f: FieldSpec, k: int) -> FieldElement:
    if k < 3:
        raise OrderUnavailable("k must be at least 3")
    if k == f.p:
        return f.one
    if k == 2 * f.p:
        return -f.one
    n = f.q - 1
    if math.gcd(k, f.p) == 1 and n % k == 0:
        return FieldElement(f, f.exp[n // k])
    raise OrderUnavailable(f"no primitive {k}-th root of unity in {f!r}")


def generated_subfield(f: FieldSpec, elems: Iterable[FieldElement]) -> int:
    deg = 1
    for e in elems:
        deg = math.lcm(deg, f(e).degree())
    return deg


def count_defective(f: FieldSpec) -> int:
    """Number of r != 0 with F_p[r^2] a proper subfield of F_q."""
    return sum(1 for c in range(1, f.q) if f.code_degree(f.mul(c, c)) < f.a)


def subfields_bound(p: int, a: int) -> int:
    if a == 1:
        return 0
    if a == 2:
        return 2 * (p - 1)
    return math.gcd(p - 1, 2) * p * (p ** (a // 2) - 1) // (p - 1)


# ---- extensions and embeddings

class Embedding:
    """Field embedding src -> dst determined by sending src.gen to a root of src.modulus."""

    def __init__(self, src: FieldSpec, dst: FieldSpec, table: list[int]):
        self.src = src
        self.dst = dst
        self.table = table
        self._back = {c: i for i, c in enumerate(table)}

    def __call__(self, x) -> FieldElement:
        x = self.src(x)
        return FieldElement(self.dst, self.table[x.code])

    def pullback(self, y: FieldElement) -> FieldElement | None:
        c = self._back.get(self.dst(y).code)
        return None if c is None else FieldElement(self.src, c)


@lru_cache(maxsize=None)
def embedding(src: FieldSpec, dst: FieldSpec) -> Embedding:
    if src.p != dst.p or dst.a % src.a:
        raise FieldMismatch(f"{src!r} does not embed in {dst!r}")
    n_dst, n_src = dst.q - 1, src.q - 1
    step = n_dst // n_src
    for c in range(1, max(n_src, 1) + 1):
        if math.gcd(c, n_src) != 1 and n_src > 1:
            continue
        beta = dst.exp[(c * step) % n_dst]
        # Horner evaluation of src.modulus at beta
        acc = 0
        for coef in reversed(src.modulus):
            acc = dst.add(dst.mul(acc, beta), coef % src.p)
        if acc == 0:
            table = [0] * src.q
            for k in range(n_src):
                table[src.exp[k]] = dst.exp[(c * step * k) % n_dst]
            return Embedding(src, dst, table)
    raise NoPrimitivePolynomial(f"no root of {src.modulus} in {dst!r}")


def extension(f: FieldSpec, m: int = 2) -> tuple[FieldSpec, Embedding]:
    """The canonical degree-m extension of f with its embedding."""
    big = field_create(f.p, f.a * m)
    return big, embedding(f, big)


def lift(x: FieldElement, dst: FieldSpec) -> FieldElement:
    if x.spec == dst:
        return x
    return embedding(x.spec, dst)(x)


def sqrt_in_closure(x: FieldElement) -> tuple[FieldElement, bool]:
    """A square root of x, in x's field when possible, else in the quadratic extension."""
    f = x.spec
    r = f.sqrt_code(x.code)
    if r is not None:
        return FieldElement(f, r), True
    big, emb = extension(f, 2)
    r = big.sqrt_code(emb(x).code)
    assert r is not None
    return FieldElement(big, r), False
