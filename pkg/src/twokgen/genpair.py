"""The generator pairs (x, y) and the closed-form conditions attached to them.

x = [[0,0,1,0],[0,0,0,1],[d,0,0,0],[0,d,0,0]]  (x^2 = dI)
y = [[1,0,r1,r2],[0,1,r3,r4],[0,0,0,-1],[0,0,1,s]]  (s = eps + 1/eps)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

from .errors import DegenerateY, EpsilonIsOne, OrderUnavailable, ParseError, RequiresSpecialization
from .gf import (
    FieldElement,
    FieldSpec,
    embedding,
    extension,
    field_create,
    generated_subfield,
    lift,
    parse_field,
    root_of_unity,
)
from .linalg import Matrix, Poly


@dataclass(frozen=True, eq=False)
class GeneratorPair:
    field: FieldSpec
    k: int
    d: int
    eps: FieldElement  # may live in the quadratic extension of field
    s: FieldElement
    r: tuple[FieldElement, FieldElement, FieldElement, FieldElement]
    x: Matrix
    y: Matrix

    @property
    def r1(self) -> FieldElement:
        return self.r[0]

    @property
    def r2(self) -> FieldElement:
        return self.r[1]

    @property
    def r3(self) -> FieldElement:
        return self.r[2]

    @property
    def r4(self) -> FieldElement:
        return self.r[3]

    @property
    def xy(self) -> Matrix:
        return self.x * self.y

    @property
    def dd(self) -> FieldElement:
        return self.field(self.d)

    @property
    def specialized(self) -> bool:
        return not self.r1 and not self.r3

    def describe(self) -> str:
        f = self.field
        rs = ",".join(str(v) for v in self.r)
        return f"q={f.p}^{f.a} k={self.k} d={self.d} s={self.s} r={rs}"

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_string(),
            "k": self.k,
            "d": self.d,
            "s": str(self.s),
            "eps": str(self.eps),
            "r": [str(v) for v in self.r],
        }


def _pair_eps(f: FieldSpec, k: int) -> FieldElement:
    """Canonical eps for k, in f or else in its quadratic extension."""
    if k < 3:
        raise OrderUnavailable("k must be at least 3")
    if k in (f.p, 2 * f.p) or (f.q - 1) % k == 0:
        return root_of_unity(f, k)
    if math.gcd(k, f.p) == 1 and (f.q + 1) % k == 0:
        big, _ = extension(f, 2)
        return root_of_unity(big, k)
    raise OrderUnavailable(f"k={k} is not admissible over {f!r}")


def _eps_from_s(f: FieldSpec, s: FieldElement) -> FieldElement:
    """A root of t^2 - s t + 1 (least log), in f or its quadratic extension."""
    for g in (f, extension(f, 2)[0]):
        sl = lift(s, g)
        roots = [e for e in g.nonzero() if e * e - sl * e + 1 == 0]
        if roots:
            return min(roots, key=lambda e: e.log())
    raise OrderUnavailable(f"t^2 - ({s})t + 1 has no roots in the quadratic closure")


def admissible_k(q: int, p: int, kmax: int | None = None) -> list[int]:
    """All k >= 3 with k | q-1, k | q+1, k = p or k = 2p."""
    kmax = kmax or (q + 1)
    out = set()
    for k in range(3, max(kmax, 2 * p) + 1):
        if (q - 1) % k == 0 or (q + 1) % k == 0 or k in (p, 2 * p):
            out.add(k)
    return sorted(out)


def projective_order_small(g: Matrix, limit: int) -> int | None:
    """Least h <= limit with g^h scalar, by direct powering."""
    acc = g
    for h in range(1, limit + 1):
        if acc.is_scalar() is not None:
            return h
        acc = acc * g
    return None


def make_pair(
    spec: FieldSpec,
    k: int,
    d: int,
    r1,
    r2,
    r3,
    r4,
    *,
    s=None,
    check_order: bool = True,
) -> GeneratorPair:
    """Assemble x and y.

    ``s`` may be passed explicitly to pick one of several conjugacy classes of y
    with the same k (needed when k | q+1 has more than one value of eps + 1/eps).
    """
    f = spec
    if d not in (1, -1):
        raise ValueError("d must be 1 or -1")
    rs = tuple(f(v) for v in (r1, r2, r3, r4))
    if s is None:
        eps = _pair_eps(f, k)
        s_big = eps + eps.inverse()
        if eps.spec == f:
            s_el = s_big
        else:
            s_el = embedding(f, eps.spec).pullback(s_big)
            assert s_el is not None
    else:
        s_el = f(s)
        eps = _eps_from_s(f, s_el)
    if s_el == 2 and (rs[0], rs[2]) == (rs[1], rs[3]):
        raise DegenerateY("s = 2 requires (r1, r3) != (r2, r4)")
    x = Matrix(f, [[0, 0, 1, 0], [0, 0, 0, 1], [f.from_int(d), 0, 0, 0], [0, f.from_int(d), 0, 0]])
    y = Matrix(
        f,
        [
            [1, 0, rs[0].code, rs[1].code],
            [0, 1, rs[2].code, rs[3].code],
            [0, 0, 0, f.neg(1)],
            [0, 0, 1, s_el.code],
        ],
    )
    if check_order:
        h = projective_order_small(y, k)
        if h != k:
            raise OrderUnavailable(f"y has projective order {h}, expected {k}")
    return GeneratorPair(f, k, d, eps, s_el, rs, x, y)


_PAIR_RE = re.compile(r"(\w+)\s*=\s*([^\s]+)")


def parse_pair(text: str) -> GeneratorPair:
    """Parse "q=<p^a> k=<k> d=<+-1> r=<r1,r2,r3,r4> [s=<s>]"."""
    kv = dict(_PAIR_RE.findall(text))
    try:
        f = parse_field(kv["q"])
        k = int(kv["k"])
        d = int(kv["d"])
        rs = [f(v) for v in kv["r"].split(",")]
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad pair spec {text!r}") from exc
    if len(rs) != 4:
        raise ParseError("r needs four entries")
    s = f(kv["s"]) if "s" in kv else None
    return make_pair(f, k, d, *rs, s=s)


# ---------------------------------------------------------------- closed forms

def xy_char_poly_closed(pair: GeneratorPair) -> Poly:
    r1, r2, r3, r4 = pair.r
    s, d = pair.s, pair.dd
    return Poly.from_values(
        pair.field, [1, r1 * s - r2 + r3, r1 * r4 - r2 * r3 - d * s, -d * (r1 + r4), 1]
    )


def xy_inv_char_poly_closed(pair: GeneratorPair) -> Poly:
    r1, r2, r3, r4 = pair.r
    s, d = pair.s, pair.dd
    return Poly.from_values(
        pair.field, [1, -d * (r1 + r4), r1 * r4 - r2 * r3 - d * s, r1 * s - r2 + r3, 1]
    )


def closure_field(pair: GeneratorPair) -> FieldSpec:
    """A field containing F_q, eps and sqrt(d)."""
    E = pair.eps.spec
    if not E.is_square_code(E.from_int(pair.d)):
        E = extension(E, 2)[0]
    return E


def quadratic_closure(f: FieldSpec) -> FieldSpec:
    """f itself if it contains F_{p^2}, else its quadratic extension."""
    return f if f.a % 2 == 0 else extension(f, 2)[0]


@dataclass
class ReducibilityReport:
    cond_i_hits: list[int]
    cond_ii_hits: list[FieldElement]
    delta_values: list[FieldElement]
    reducible: bool
    newreducible: dict | None = None

    def to_dict(self) -> dict:
        return {
            "reducible": self.reducible,
            "cond_i_hits": self.cond_i_hits,
            "cond_ii_hits": [str(v) for v in self.cond_ii_hits],
            "delta_values": [str(v) for v in self.delta_values],
            "newreducible": self.newreducible,
        }


def reducibility(pair: GeneratorPair) -> ReducibilityReport:
    E = closure_field(pair)
    r1, r2, r3, r4 = (lift(v, E) for v in pair.r)
    s = lift(pair.s, E)
    eps = lift(pair.eps, E)
    d = E(pair.d)
    cond_i = [j for j in (1, -1) if r4 == r1 - eps**j * r2 + eps ** (-j) * r3]
    root = FieldElement(E, E.sqrt_code(d.code))
    deltas = [root, -root]
    values = [
        r1 * r4 - r2 * r3 + ((s - 1) * r1 - r2 + r3 - r4) / delta + (2 - s) * d for delta in deltas
    ]
    cond_ii = [delta for delta, v in zip(deltas, values) if not v]
    report = ReducibilityReport(cond_i, cond_ii, values, bool(cond_i or cond_ii))
    if pair.specialized:
        i_hit = any(r2 == -(eps**j) * r4 for j in (1, -1))
        ii_hit = any(r2 + r4 == sign * (2 - s) * root for sign in (1, -1))
        report.newreducible = {"r2=-eps^(+-1)r4": i_hit, "r2+r4=+-(2-s)sqrt(d)": ii_hit}
        assert i_hit == bool(cond_i) and ii_hit == bool(cond_ii)
    return report


def y_eigenvector(pair: GeneratorPair, j: int) -> list[FieldElement]:
    eps = pair.eps
    if eps == 1:
        raise EpsilonIsOne("y has no eigenvector of this form when eps = 1")
    E = eps.spec
    r1, r2, r3, r4 = (lift(v, E) for v in pair.r)
    e = eps**j
    u = [r1 - e * r2, r3 - e * r4, e - 1, -(e * e) + e]
    yl = pair.y.lift(E)
    image = yl.apply([c.code for c in u])
    assert image == [(e * c).code for c in u], "y u != eps^j u"
    return u


def field_lower_bound(pair: GeneratorPair) -> int:
    return generated_subfield(pair.field, [pair.s, (pair.r1 + pair.r4) ** 2])


def scalar_power(pair: GeneratorPair, h: int) -> FieldElement | None:
    if h < 1:
        raise ValueError("h must be positive")
    return (pair.xy**h).is_scalar()


def powers_h8_relations(pair: GeneratorPair) -> dict:
    """Closed-form relations tied to (xy)^8 = rho I with rho = +-1 (specialized pairs)."""
    if not pair.specialized:
        raise RequiresSpecialization("needs r1 = r3 = 0")
    rho = scalar_power(pair, 8)
    return {"scalar": rho is not None, "rho": None if rho is None else str(rho)}


# ---------------------------------------------------------------- exceptional parameters as data


@dataclass(frozen=True)
class ExceptionRow:
    """One line of the exceptional-parameter ledger.

    ``targets`` maps (s, d, E) to candidate (r2, r4) values (None = any) and a
    witness label; ``guard`` restricts s and p.  ``outcome`` is "reducible",
    "conformal-symplectic", or "proper".
    """

    id: str
    chars: str  # "any", "p!=2" or "p!=2,3"
    condition: str
    outcome: str
    quotient: str | None
    projective_order: int | None
    guard: Callable[[FieldElement, int, FieldSpec], bool]
    targets: Callable[[FieldElement, int, FieldSpec], list]

    def allowed_p(self, p: int) -> bool:
        if self.chars == "p!=2":
            return p != 2
        if self.chars == "p!=2,3":
            return p not in (2, 3)
        return True


def _sqrt(E: FieldSpec, v: FieldElement) -> FieldElement | None:
    r = E.sqrt_code(v.code)
    return None if r is None else FieldElement(E, r)


def _prim_roots(E: FieldSpec, n: int) -> list[FieldElement]:
    return [e for e in E.nonzero() if e.order() == n]


def _t_alt5(s, d, E):
    r = _sqrt(E, E(d))
    if r is None:
        return []
    return [(sign * r, sign * r, f"r4={'' if sign > 0 else '-'}sqrt(d)") for sign in (1, -1)]


def _t_csp(s, d, E):
    r = _sqrt(E, E(-d))
    if r is None:
        return []
    return [(-(sign * r), sign * r, f"r4={'' if sign > 0 else '-'}sqrt(-d)") for sign in (1, -1)]


def _t_c6_sqrt_d(s, d, E):
    return _t_alt5(s, d, E)


def _t_c6_sqrt_2d(s, d, E):
    r = _sqrt(E, E(2 * d))
    if r is None:
        return []
    return [(sign * r, sign * r, f"r4={'' if sign > 0 else '-'}sqrt(2d)") for sign in (1, -1)]


def _i(E):
    return _sqrt(E, E(-1))


def _t_a7(s, d, E):
    i = _i(E)
    rt = _sqrt(E, E(-7))
    if i is None or rt is None:
        return []
    half = E(2).inverse()
    out = []
    for h in range(4):
        if d * s != i ** (2 * h):
            continue
        for lam in (1, -1):
            r2 = -(i ** (3 * h)) * (lam * rt - 1) * half
            r4 = E(d) * i**h * (lam * rt + 1) * half
            out.append((r2, r4, f"h={h},lambda={lam}"))
    return out


def _t_psp43(s, d, E):
    i = _i(E)
    if i is None:
        return []
    out = []
    for w in _prim_roots(E, 3):
        for h in range(4):
            out.append((i ** (-h) * w, E(d) * i**h * w * w, f"h={h},omega={w}"))
    return out


def _t_psl2(s, d, E):
    return [(-r, r, f"r4={r}") for r in E.nonzero() if r**4 == E(-3)]


EXCEPTIONS: tuple[ExceptionRow, ...] = (
    ExceptionRow(
        "reducible-i", "any", "r2 = -eps^(+-1) r4", "reducible", None, None,
        lambda s, d, E: True, lambda s, d, E: [],
    ),
    ExceptionRow(
        "reducible-ii", "any", "r2 + r4 = +-(2-s) sqrt(d)", "reducible", None, None,
        lambda s, d, E: True, lambda s, d, E: [],
    ),
    ExceptionRow(
        "alt5", "any", "s=-1, r4^2=d, r2=r4", "proper", "Alt(5)", 60,
        lambda s, d, E: s == -1, _t_alt5,
    ),
    ExceptionRow(
        "cpsp", "any", "s=1, r4^2=-d, r2=-r4", "conformal-symplectic", None, None,
        lambda s, d, E: s == 1, _t_csp,
    ),
    ExceptionRow(
        "c6-sqrt-d", "p!=2", "s=-1, r2=r4=+-sqrt(d)", "proper", "C6", None,
        lambda s, d, E: s == -1, _t_c6_sqrt_d,
    ),
    ExceptionRow(
        "c6-sqrt-2d", "p!=2", "s=-1, r2=r4=+-sqrt(2d)", "proper", "C6", None,
        lambda s, d, E: s == -1, _t_c6_sqrt_2d,
    ),
    ExceptionRow(
        "a7", "p!=2", "s=-1, ds=i^(2h), r2=-i^(3h)(+-sqrt(-7)-1)/2, r4=d i^h(+-sqrt(-7)+1)/2",
        "proper", "S", None,
        lambda s, d, E: s == -1, _t_a7,
    ),
    ExceptionRow(
        "psp43", "p!=2,3", "s=0, r2=i^(-h) w, r4=d i^h w^2, w^3=1 primitive",
        "proper", "S", None,
        lambda s, d, E: s == 0, _t_psp43,
    ),
    ExceptionRow(
        "psl2", "p!=2,3", "d=-1, s=-1, r2=-r4, r4^4=-3", "proper", "S", None,
        lambda s, d, E: s == -1 and d == -1, _t_psl2,
    ),
)

EXCEPTIONS_BY_ID = {row.id: row for row in EXCEPTIONS}


@dataclass
class ExceptionMatch:
    row: ExceptionRow
    witness: str

    def to_dict(self) -> dict:
        return {"row": self.row.id, "witness": self.witness, "outcome": self.row.outcome}


def exceptional_match(pair: GeneratorPair) -> list[ExceptionMatch]:
    if not pair.specialized:
        raise RequiresSpecialization("exceptional rows are stated for r1 = r3 = 0")
    E = quadratic_closure(closure_field(pair))
    s = lift(pair.s, E)
    r2, r4 = lift(pair.r2, E), lift(pair.r4, E)
    out = []
    red = reducibility(pair).newreducible or {}
    if red.get("r2=-eps^(+-1)r4"):
        out.append(ExceptionMatch(EXCEPTIONS[0], "cond i"))
    if red.get("r2+r4=+-(2-s)sqrt(d)"):
        out.append(ExceptionMatch(EXCEPTIONS[1], "cond ii"))
    for row in EXCEPTIONS[2:]:
        if not row.allowed_p(E.p) or not row.guard(s, pair.d, E):
            continue
        for t2, t4, label in row.targets(s, pair.d, E):
            if r2 == t2 and r4 == t4:
                out.append(ExceptionMatch(row, label))
                break
    return out


def exception_witness(row_id: str, q: int | None = None) -> GeneratorPair | None:
    """A pair satisfying the row at the smallest suitable prime field (or at q)."""
    row = EXCEPTIONS_BY_ID[row_id]
    primes = [q] if q else [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    for p in primes:
        if not row.allowed_p(p):
            continue
        f = field_create(p)
        for k in admissible_k(p, p):
            for d in (1, -1):
                try:
                    base = make_pair(f, k, d, 0, 0, 0, 1)
                except OrderUnavailable:
                    continue
                if row.id.startswith("reducible"):
                    continue
                E = quadratic_closure(closure_field(base))
                if not row.guard(lift(base.s, E), d, E):
                    continue
                emb = embedding(f, E)
                for t2, t4, _ in row.targets(lift(base.s, E), d, E):
                    a2, a4 = emb.pullback(t2), emb.pullback(t4)
                    if a2 is None or a4 is None or not a4:
                        continue
                    pair = make_pair(f, k, d, 0, a2, 0, a4)
                    if any(m.row.id == row_id for m in exceptional_match(pair)):
                        return pair
    return None
