"""Invariant forms, Scott-formula dimension counts and related checks.

A form J is invariant for g with multiplier lam when g^T J g^sigma = lam J,
where sigma is x -> x^(p^sigma_power) (sigma_power = 0 for bilinear forms).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InternalMismatch, RequiresSpecialization
from .gf import FieldElement, FieldSpec
from .genpair import GeneratorPair
from .linalg import (
    Matrix,
    centralizer_dim,
    char_poly,
    enveloping_dim,
    min_poly,
    nullspace,
    rref,
    similarity_invariants,
    sym_fixed_dim,
)


@dataclass(frozen=True)
class InvariantForm:
    J: Matrix
    kind: str  # "symmetric", "skew" or "hermitian"
    multipliers: tuple[FieldElement, ...]
    sigma_power: int = 0

    @property
    def lam(self) -> FieldElement:
        return self.multipliers[0]

    @property
    def mu(self) -> FieldElement:
        return self.multipliers[1]

    def holds_for(self, gens: Sequence[Matrix]) -> bool:
        """Re-multiply: g^T J g^sigma == multiplier * J for every generator."""
        return all(
            g.T * self.J * g.frobenius(self.sigma_power) == m * self.J
            for g, m in zip(gens, self.multipliers)
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "multipliers": [str(m) for m in self.multipliers],
            "sigma_power": self.sigma_power,
            "det": str(self.J.det()),
            "gram": self.J.to_json(),
        }


@dataclass
class FormSolutions:
    """Everything solve_forms found.

    ``spaces`` maps a multiplier tuple to the dimension of the full solution
    space; ``degenerate`` holds solutions with det J = 0.
    """

    forms: list[InvariantForm] = field(default_factory=list)
    degenerate: list[tuple[tuple[FieldElement, ...], Matrix]] = field(default_factory=list)
    spaces: dict = field(default_factory=dict)

    def kinds(self) -> set[str]:
        return {f.kind for f in self.forms}

    def __bool__(self) -> bool:
        return bool(self.forms)

    def to_dict(self) -> dict:
        return {
            "forms": [f.to_dict() for f in self.forms],
            "degenerate": len(self.degenerate),
            "spaces": {",".join(str(m) for m in k): v for k, v in self.spaces.items()},
        }


def _unflatten(f: FieldSpec, v: Sequence[int], n: int) -> Matrix:
    return Matrix(f, [v[i * n:(i + 1) * n] for i in range(n)])


def _form_equations(gens, mults, sigma_power) -> list[list[int]]:
    """Linear equations in the n^2 entries of J for g^T J g^sigma - m J = 0."""
    f = gens[0].field
    n = gens[0].n
    rows = []
    for g, m in zip(gens, mults):
        gs = g.frobenius(sigma_power)
        for a in range(n):
            for b in range(n):
                row = [0] * (n * n)
                for i in range(n):
                    gia = g.rows[i][a]
                    if not gia:
                        continue
                    for j in range(n):
                        row[i * n + j] = f.add(row[i * n + j], f.mul(gia, gs.rows[j][b]))
                row[a * n + b] = f.sub(row[a * n + b], m.code)
                rows.append(row)
    return rows


def _symmetry_equations(f: FieldSpec, n: int, kind: str) -> list[list[int]]:
    rows = []
    for i in range(n):
        for j in range(i, n):
            if i == j:
                if kind == "skew":
                    row = [0] * (n * n)
                    row[i * n + i] = 1
                    rows.append(row)
                continue
            row = [0] * (n * n)
            row[i * n + j] = 1
            row[j * n + i] = f.neg(1) if kind == "symmetric" else 1
            rows.append(row)
    return rows


def _combinations(f: FieldSpec, basis: list[Matrix], coeffs_from=None, limit: int = 4096):
    """Basis elements first, then nonzero combinations (bounded)."""
    yield from basis
    if len(basis) < 2:
        return
    count = 0
    values = coeffs_from if coeffs_from is not None else range(f.q)
    for coeffs in itertools.product(values, repeat=len(basis)):
        if sum(1 for c in coeffs if c) < 2:
            continue
        acc = Matrix.zeros(f, basis[0].n)
        for c, b in zip(coeffs, basis):
            if c:
                acc = acc + FieldElement(f, c) * b
        yield acc
        count += 1
        if count >= limit:
            return


def _hermitian_normalize(J: Matrix, sigma_power: int) -> Matrix | None:
    """Rescale J so that (J^T)^sigma = J, if J is a hermitian multiple."""
    f = J.field
    Jt = J.T.frobenius(sigma_power)
    # find beta with (J^T)^sigma = beta J
    beta = None
    for i in range(J.n):
        for j in range(J.n):
            if J.rows[i][j]:
                beta = FieldElement(f, f.div(Jt.rows[i][j], J.rows[i][j]))
                break
        if beta is not None:
            break
    if beta is None or Jt != beta * J:
        return None
    # beta = alpha / alpha^sigma, so alpha J is hermitian
    for alpha in f.nonzero():
        if alpha == beta * alpha.frobenius(sigma_power):
            return alpha * J
    return None


def _hermitian_basis(basis: list[Matrix], sigma_power: int) -> list[Matrix]:
    """A basis of hermitian matrices (over the fixed field) of the same solution space."""
    if len(basis) == 1:
        h = _hermitian_normalize(basis[0], sigma_power)
        return [h] if h is not None else []
    f = basis[0].field
    zeta = f.gen
    out: list[Matrix] = []
    seen_rows: list[list[int]] = []
    for b in basis:
        for c in (f.one, zeta):
            h = c * b + (c * b).T.frobenius(sigma_power)
            flat = [v for r in h.rows for v in r]
            if any(flat) and len(rref(seen_rows + [flat], f)[0]) > len(seen_rows):
                seen_rows.append(flat)
                out.append(h)
    return out


def _kind(J: Matrix, sigma_power: int) -> str | None:
    f = J.field
    if sigma_power:
        return "hermitian" if J.T.frobenius(sigma_power) == J else None
    if J.T == J:
        if f.p == 2 and all(J.rows[i][i] == 0 for i in range(J.n)):
            return "skew"
        return "symmetric"
    if J.T == -J:
        return "skew"
    return None


def default_multipliers(f: FieldSpec, arity: int, full_scan: bool = False):
    values = list(f.nonzero()) if full_scan else sorted({f(1), f(-1)}, key=lambda e: e.code)
    return list(itertools.product(values, repeat=arity))


def solve_forms(
    gens: Sequence[Matrix],
    sigma_power: int = 0,
    multiplier_scan=None,
    *,
    full_scan: bool = False,
) -> FormSolutions:
    """All invariant forms of gens for each candidate multiplier tuple.

    With sigma_power = 0 the symmetric and skew solution spaces are searched
    separately; otherwise solutions are rescaled into hermitian shape.
    """
    f = gens[0].field
    n = gens[0].n
    if sigma_power and (2 * sigma_power) % f.a:
        raise ValueError("sigma must be an involution of the field")
    scan = multiplier_scan or default_multipliers(f, len(gens), full_scan)
    fixed = [c.code for c in f.elements() if c.frobenius(sigma_power) == c] if sigma_power else None
    out = FormSolutions()
    seen: set[tuple] = set()
    for mults in scan:
        mults = tuple(m if isinstance(m, FieldElement) else f(m) for m in mults)
        base = _form_equations(gens, mults, sigma_power)
        out.spaces[mults] = len(nullspace(base, f, n * n))
        if out.spaces[mults] == 0:
            continue
        kinds = ("hermitian",) if sigma_power else ("symmetric", "skew")
        for kind in kinds:
            if kind == "hermitian":
                basis = _hermitian_basis(
                    [_unflatten(f, v, n) for v in nullspace(base, f, n * n)], sigma_power
                )
                coeffs = fixed
            else:
                eqs = base + _symmetry_equations(f, n, kind)
                basis = [_unflatten(f, v, n) for v in nullspace(eqs, f, n * n)]
                coeffs = None
            if not basis:
                continue
            found = False
            for J in _combinations(f, basis, coeffs):
                if not J.det():
                    continue
                k = _kind(J, sigma_power)
                if k is None or (kind != "hermitian" and k != kind):
                    continue
                form = InvariantForm(J, k, mults, sigma_power)
                if not form.holds_for(gens):
                    raise InternalMismatch("form failed the re-multiplication check")
                key = (J.rows, mults)
                if key not in seen:
                    seen.add(key)
                    out.forms.append(form)
                found = True
                break
            if not found:
                out.degenerate.append((mults, basis[0]))
    return out


def pair_forms(pair: GeneratorPair, hermitian: bool = False, **kw) -> FormSolutions:
    sp = pair.field.a // 2 if hermitian else 0
    if hermitian and pair.field.a % 2:
        return FormSolutions()
    return solve_forms([pair.x, pair.y], sp, **kw)


# ---------------------------------------------------------------- classical envelopes


def classic_necessary(pair: GeneratorPair) -> set[str]:
    """Necessary conditions for H to lie in a conformal classical group.

    "CO/CSp": r2 = +-d r4.  "CU": r2 = +-d r4^sigma and s^sigma = s, where sigma
    is the involution of the field (only for even degree).
    """
    if not pair.specialized:
        raise RequiresSpecialization("needs r1 = r3 = 0")
    d, r2, r4, s = pair.dd, pair.r2, pair.r4, pair.s
    out = set()
    if r4 and r2 in (d * r4, -d * r4):
        out.add("CO/CSp")
    f = pair.field
    if f.a % 2 == 0:
        half = f.a // 2
        r4s = r4.frobenius(half)
        if r4 and r2 in (d * r4s, -d * r4s) and s.frobenius(half) == s:
            out.add("CU")
    return out


def explicit_classic_form(pair: GeneratorPair) -> tuple[Matrix, int]:
    """The closed-form Gram matrix for r2 = lam r4 (lam = +-1) and its lam.

    Satisfies x^T J x = lam d J and y^T J y = J.
    """
    if not pair.specialized:
        raise RequiresSpecialization("needs r1 = r3 = 0")
    f = pair.field
    r2, r4, s, d = pair.r2, pair.r4, pair.s, pair.dd
    if r2 == r4:
        lam = 1
    elif r2 == -r4:
        lam = -1
    else:
        raise ValueError("explicit form needs r2 = +-r4")
    L = f(lam)
    if lam == 1:
        if s == -2:
            raise ValueError("s = -2 makes the symmetric form undefined")
        i1 = (2 - s - d * r4 * r4) / (s + 2)
    else:
        i1 = f.zero
    i2 = 2 - s - 2 * i1
    J = Matrix.from_values(
        f,
        [
            [2 * i1, i2, r4, r4],
            [L * i2, 2 * i1, r4, r4],
            [L * r4, L * r4, 2 * d * i1, d * L * i2],
            [L * r4, L * r4, d * i2, 2 * d * i1],
        ],
    )
    return J, lam


def explicit_form_det(pair: GeneratorPair, lam: int) -> FieldElement:
    """Closed-form determinant of the explicit Gram matrix."""
    s, d, r4 = pair.s, pair.dd, pair.r4
    if lam == 1:
        return ((s - 2) ** 2 - 4 * d * r4 * r4) ** 3 / (s + 2) ** 2
    return (s - 2) ** 4


# ---------------------------------------------------------------- Scott counts


@dataclass(frozen=True)
class ScottReport:
    d_x: int
    d_y: int
    d_xy: int
    sum: int
    rigid: bool
    sym: tuple[int, int, int, int, int]  # d_S^x, d_S^y, d_S^xy, d_S^H, dual d_S^H

    def to_dict(self) -> dict:
        return {
            "d_x": self.d_x,
            "d_y": self.d_y,
            "d_xy": self.d_xy,
            "sum": self.sum,
            "rigid": self.rigid,
            "sym": {
                "x": self.sym[0],
                "y": self.sym[1],
                "xy": self.sym[2],
                "H": self.sym[3],
                "H_dual": self.sym[4],
            },
        }


def scott_matrices(X: Matrix, Y: Matrix) -> ScottReport:
    n = X.n
    XY = X * Y
    dims = (centralizer_dim(X), centralizer_dim(Y), centralizer_dim(XY))
    total = sum(dims)
    sym = (
        sym_fixed_dim([X]),
        sym_fixed_dim([Y]),
        sym_fixed_dim([XY]),
        sym_fixed_dim([X, Y]),
        sym_fixed_dim([X, Y], dual=True),
    )
    return ScottReport(*dims, total, total == n * n + 2, sym)


def scott(pair: GeneratorPair) -> ScottReport:
    return scott_matrices(pair.x, pair.y)


def conjugate_to_inverse(g: Matrix) -> bool:
    """g ~ g^-1, tested on the full similarity invariants."""
    return similarity_invariants(g) == similarity_invariants(g.inverse())


def orthogonal_trap(pair: GeneratorPair) -> bool:
    """The symmetric-square criterion for containment in an orthogonal group.

    True when H is absolutely irreducible, d_S^x + d_S^y = n(n+1)/2 and xy is
    conjugate to its inverse.  A positive answer is confirmed by finding the
    symmetric form and by d_S^H = dual d_S^H = 1.
    """
    x, y = pair.x, pair.y
    n = x.n
    if sym_fixed_dim([x]) + sym_fixed_dim([y]) != n * (n + 1) // 2:
        return False
    xy = pair.xy
    if char_poly(xy) != char_poly(xy.inverse()) or len(similarity_invariants(xy)) != 1:
        return False
    if enveloping_dim([x, y]) < n * n:
        return False
    sols = solve_forms([x, y], 0, [(pair.field(1), pair.field(1))])
    if not any(f.J.T == f.J for f in sols.forms):
        raise InternalMismatch("orthogonal trap holds but no symmetric form was found")
    if sym_fixed_dim([x, y]) != 1 or sym_fixed_dim([x, y], dual=True) != 1:
        raise InternalMismatch("orthogonal trap holds but the symmetric-square counts are off")
    return True


def symmetric_detection_applies(X: Matrix, Y: Matrix) -> bool:
    """The symmetric-square inequality that forces an orthogonal group."""
    n = X.n
    mu = min_poly(X * Y)
    lhs = 2 * (sym_fixed_dim([X]) + sym_fixed_dim([Y]))
    return lhs >= n * n + n - mu.degree + 4


# ---------------------------------------------------------------- conjugation action


def conj_action_matrix(g: Matrix) -> Matrix:
    """Matrix of m -> g m g^-1 on n x n matrices, basis E_ij in row-major order."""
    f = g.field
    n = g.n
    gi = g.inverse()
    cols = []
    for i in range(n):
        for j in range(n):
            # g E_ij g^-1 has entries g[a][i] * gi[j][b]
            cols.append([f.mul(g.rows[a][i], gi.rows[j][b]) for a in range(n) for b in range(n)])
    return Matrix.from_columns(f, cols)


def conj_action_trace(g: Matrix) -> FieldElement:
    """tr of the conjugation action, as tr(g) tr(g^-1) and from the explicit matrix."""
    closed = g.trace() * g.inverse().trace()
    explicit = conj_action_matrix(g).trace()
    if closed != explicit:
        raise InternalMismatch(f"conjugation trace {closed} != {explicit}")
    return closed


# ---------------------------------------------------------------- symmetric-square lower bounds


@dataclass(frozen=True)
class FixformCheck:
    hypothesis_met: bool
    d_s: int
    bound: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "hypothesis_met": self.hypothesis_met,
            "d_s": self.d_s,
            "bound": self.bound,
            "holds": self.holds,
        }


def fixform_bound_check(g: Matrix, form: InvariantForm | Matrix, a: int) -> FixformCheck:
    """d_S^g >= a for g fixing a symmetric or skew form, under the degree hypothesis.

    The hypothesis is deg mu_g > 2a, or deg mu_g = 2a with a nonzero middle
    coefficient.  When it fails the check is reported, not raised.
    """
    J = form.J if isinstance(form, InvariantForm) else form
    if g.T * J * g != J:
        raise ValueError("g does not fix the form")
    if not J.det() or (J.T != J and J.T != -J):
        raise ValueError("the form must be nondegenerate symmetric or skew")
    mu = min_poly(g)
    deg = mu.degree
    met = deg > 2 * a or (deg == 2 * a and bool(mu.coeff(a)))
    d_s = sym_fixed_dim([g])
    return FixformCheck(met, d_s, a, (d_s >= a) if met else True)


def char2_bound_check(g: Matrix) -> FixformCheck:
    """In characteristic 2, g ~ g^-1 forces d_S^g >= ceil(n/2)."""
    if g.field.p != 2:
        raise ValueError("characteristic 2 only")
    met = conjugate_to_inverse(g)
    bound = (g.n + 1) // 2
    d_s = sym_fixed_dim([g])
    return FixformCheck(met, d_s, bound, (d_s >= bound) if met else True)
