"""Dense matrices and univariate polynomials over a FieldSpec.

Entries are held as integer codes of the owning field; indexing returns
FieldElement values.  Everything here is exact.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .errors import BadCharacteristic, FieldMismatch, InternalMismatch, TooLarge
from .gf import FieldElement, FieldSpec, embedding, field_create


def _code(f: FieldSpec, v) -> int:
    if isinstance(v, FieldElement):
        if v.spec != f:
            raise FieldMismatch(f"{v.spec!r} vs {f!r}")
        return v.code
    if isinstance(v, str):
        return f.parse_code(v)
    return int(v) % f.p


# ---------------------------------------------------------------- vectors

def rref(rows: Sequence[Sequence[int]], f: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over f; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, v) for v in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = f.neg(m[i][c])
                m[i] = [f.add(a, f.mul(factor, b)) for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[int]], f: FieldSpec, ncols: int | None = None) -> list[list[int]]:
    """Basis of {v : A v = 0} for the matrix with the given rows."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows, f) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = f.neg(row[fc])
        basis.append(v)
    return basis


class RowSpace:
    """Incrementally built subspace of f^n, kept in echelon form."""

    def __init__(self, f: FieldSpec, n: int):
        self.f = f
        self.n = n
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        f = self.f
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                nc = f.neg(c)
                v = [f.add(a, f.mul(nc, b)) for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        v = self.reduce(v)
        pc = next((i for i, c in enumerate(v) if c), None)
        if pc is None:
            return False
        inv = self.f.inv(v[pc])
        self.rows.append([self.f.mul(inv, c) for c in v])
        self.pivots.append(pc)
        return True

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------- matrices

class Matrix:
    """An immutable n x m matrix over a finite field."""

    __slots__ = ("field", "rows", "n", "m", "_hash")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable[int]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0
        self._hash = None

    @classmethod
    def from_values(cls, field: FieldSpec, rows) -> "Matrix":
        return cls(field, [[_code(field, v) for v in row] for row in rows])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, field: FieldSpec, n: int, c) -> "Matrix":
        c = _code(field, c)
        return cls(field, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar_code(cls, field: FieldSpec, n: int, c: int) -> "Matrix":
        return cls(field, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, n: int, m: int | None = None) -> "Matrix":
        return cls(field, [[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence[int]]) -> "Matrix":
        return cls(field, list(zip(*cols)))

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.rows[i][j])

    def entries(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.field, c) for c in r] for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows and self.field == other.field

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format_code(c) for c in r) for r in self.rows)
        return f"Matrix[{body}]"

    def _check(self, other: "Matrix") -> None:
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{other.field!r} vs {self.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(a) for a in r] for r in self.rows])

    def __mul__(self, other):
        f = self.field
        if isinstance(other, Matrix):
            self._check(other)
            cols = list(zip(*other.rows))
            add, mul = f.add, f.mul
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for a, b in zip(r, c):
                        if a and b:
                            acc = add(acc, mul(a, b))
                    row.append(acc)
                out.append(row)
            return Matrix(f, out)
        if isinstance(other, (FieldElement, int)):
            c = _code(f, other)
            return Matrix(f, [[f.mul(c, a) for a in r] for r in self.rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def apply(self, v: Sequence[int]) -> list[int]:
        f = self.field
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows))

    def frobenius(self, i: int = 1) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.frob(a, i) for a in r] for r in self.rows])

    def lift(self, dst: FieldSpec) -> "Matrix":
        if dst == self.field:
            return self
        tab = embedding(self.field, dst).table
        return Matrix(dst, [[tab[a] for a in r] for r in self.rows])

    def trace(self) -> FieldElement:
        f = self.field
        acc = 0
        for i in range(self.n):
            acc = f.add(acc, self.rows[i][i])
        return FieldElement(f, acc)

    def is_scalar(self) -> FieldElement | None:
        """The scalar c if self = cI, else None."""
        c = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a != (c if i == j else 0):
                    return None
        return FieldElement(self.field, c)

    def is_identity(self) -> bool:
        s = self.is_scalar()
        return s is not None and s.code == 1

    def det(self) -> FieldElement:
        f = self.field
        m = [list(r) for r in self.rows]
        n = self.n
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return f.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = f.neg(d)
            d = f.mul(d, m[c][c])
            inv = f.inv(m[c][c])
            for i in range(c + 1, n):
                if m[i][c]:
                    factor = f.neg(f.mul(m[i][c], inv))
                    m[i] = [f.add(a, f.mul(factor, b)) for a, b in zip(m[i], m[c])]
        return FieldElement(f, d)

    def rank(self) -> int:
        return len(rref(self.rows, self.field)[0])

    def inverse(self) -> "Matrix":
        f = self.field
        n = self.n
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug, f)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(f, [r[n:] for r in red[:n]])

    def nullspace(self) -> list[list[int]]:
        return nullspace(self.rows, self.field, self.m)

    def to_json(self) -> list[list[str]]:
        return [[self.field.format_code(c) for c in r] for r in self.rows]


def block_diag(field: FieldSpec, *blocks: Matrix) -> Matrix:
    n = sum(b.n for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            out[off + i][off:off + b.n] = r
        off += b.n
    return Matrix(field, out)


# ---------------------------------------------------------------- polynomials

class Poly:
    """Univariate polynomial over a field, coefficients constant-first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def from_values(cls, field: FieldSpec, values) -> "Poly":
        return cls(field, [_code(field, v) for v in values])

    @classmethod
    def t(cls, field: FieldSpec) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: FieldSpec, c) -> "Poly":
        return cls(field, [_code(field, c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.coeffs[i] if i < len(self.coeffs) else 0)

    def lead(self) -> int:
        return self.coeffs[-1]

    def make_monic(self) -> "Poly":
        if not self.coeffs:
            return self
        f = self.field
        inv = f.inv(self.coeffs[-1])
        return Poly(f, [f.mul(inv, c) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(f, [f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        f = self.field
        if isinstance(other, (int, FieldElement)):
            c = _code(f, other)
            return Poly(f, [f.mul(c, a) for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(f, [])
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        out[i + j] = f.add(out[i + j], f.mul(u, v))
        return Poly(f, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly(self.field, [1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv = f.inv(other.lead())
        qt = [0] * max(len(r) - db, 1)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = f.mul(c, inv)
                qt[k - db] = c
                nc = f.neg(c)
                for j, bj in enumerate(other.coeffs):
                    r[k - db + j] = f.add(r[k - db + j], f.mul(nc, bj))
        return Poly(f, qt), Poly(f, r)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __call__(self, x):
        """Evaluate at a field element or a square matrix (Horner)."""
        f = self.field
        if isinstance(x, Matrix):
            acc = Matrix.zeros(f, x.n)
            for c in reversed(self.coeffs):
                acc = acc * x + Matrix.scalar_code(f, x.n, c)
            return acc
        xc = _code(f, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, xc), c)
        return FieldElement(f, acc)

    def roots(self, dst: FieldSpec | None = None) -> list[FieldElement]:
        """Roots with multiplicity, in dst (an extension of the coefficient field)."""
        dst = dst or self.field
        p = self.lift(dst)
        out = []
        for r in dst.elements():
            while p.degree >= 1 and p(r).code == 0:
                out.append(r)
                p = p // Poly(dst, [dst.neg(r.code), 1])
        return out

    def lift(self, dst: FieldSpec) -> "Poly":
        if dst == self.field:
            return self
        tab = embedding(self.field, dst).table
        return Poly(dst, [tab[c] for c in self.coeffs])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = f.format_code(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mon and mag == "1":
                body = mon
            elif mon:
                body = f"{mag}*{mon}" if mag.isdigit() else f"({mag})*{mon}"
            else:
                body = mag
            terms.append(("-" if neg else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.make_monic()


# ---------------------------------------------------------------- canonical forms

def char_poly(M: Matrix) -> Poly:
    """det(tI - M) via reduction to upper Hessenberg form."""
    f = M.field
    n = M.n
    H = [list(r) for r in M.rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = f.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if H[i][j]:
                u = f.mul(H[i][j], inv)
                nu = f.neg(u)
                H[i] = [f.add(a, f.mul(nu, b)) for a, b in zip(H[i], H[j + 1])]
                for r in H:
                    r[j + 1] = f.add(r[j + 1], f.mul(u, r[i]))
    # p_m = (t - h_mm) p_{m-1} - sum_i h_{m-i,m} * prod(subdiag) * p_{m-i-1}
    polys = [Poly(f, [1])]
    tpoly = Poly.t(f)
    for m in range(n):
        pm = (tpoly - Poly(f, [H[m][m]])) * polys[m]
        prod = 1
        for i in range(1, m + 1):
            prod = f.mul(prod, H[m - i + 1][m - i])
            coef = f.mul(prod, H[m - i][m])
            if coef:
                pm = pm - polys[m - i] * FieldElement(f, coef)
        polys.append(pm)
    return polys[n]


def smith_diagonal(A: list[list[Poly]]) -> list[Poly]:
    """Monic invariant factors of a square polynomial matrix (zero for a rank drop).

    Pivoting always takes a nonzero entry of least degree, first in row-major order.
    """
    n = len(A)
    A = [list(r) for r in A]
    f = A[0][0].field
    diag: list[Poly] = []
    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    e = A[i][j]
                    if not e.is_zero() and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                diag.extend(Poly(f, []) for _ in range(n - k))
                return diag
            _, i, j = best
            A[k], A[i] = A[i], A[k]
            for r in A:
                r[k], r[j] = r[j], r[k]
            piv = A[k][k]
            clean = True
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    qt, rem = divmod(A[i][k], piv)
                    A[i] = [a - qt * b for a, b in zip(A[i], A[k])]
                    clean = clean and rem.is_zero()
            for j in range(k + 1, n):
                if not A[k][j].is_zero():
                    qt, rem = divmod(A[k][j], piv)
                    for r in A:
                        r[j] = r[j] - qt * r[k]
                    clean = clean and rem.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if not (A[i][j] % piv).is_zero()),
                None,
            )
            if bad is not None:
                A[k] = [a + b for a, b in zip(A[k], A[bad])]
                continue
            diag.append(piv.make_monic())
            break
    return diag


class SimilarityInvariants(tuple):
    """Non-constant invariant factors d1 | d2 | ... of tI - M."""

    @property
    def degrees(self) -> list[int]:
        return [d.degree for d in self]

    @property
    def minimal_poly(self) -> Poly:
        return self[-1]


def similarity_invariants(M: Matrix) -> SimilarityInvariants:
    f = M.field
    n = M.n
    A = [
        [Poly(f, [f.neg(M.rows[i][j]), 1 if i == j else 0]) for j in range(n)]
        for i in range(n)
    ]
    diag = smith_diagonal(A)
    return SimilarityInvariants(d for d in diag if d.degree >= 1)


def min_poly(M: Matrix) -> Poly:
    return similarity_invariants(M).minimal_poly


def commutant_rows(M: Matrix) -> list[list[int]]:
    """Rows of the linear system MZ - ZM = 0 in the n^2 unknowns Z[k][l]."""
    f = M.field
    n = M.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = f.add(row[k * n + j], M.rows[i][k])
            for l in range(n):
                row[i * n + l] = f.sub(row[i * n + l], M.rows[l][j])
            rows.append(row)
    return rows


def centralizer_dim(M: Matrix) -> int:
    """dim C(M) in Mat_n, by the invariant-factor formula and by linear algebra."""
    degs = similarity_invariants(M).degrees
    by_formula = sum(min(a, b) for a in degs for b in degs)
    by_solve = M.n * M.n - len(rref(commutant_rows(M), M.field)[0])
    if by_formula != by_solve:
        raise InternalMismatch(f"centralizer dim {by_formula} vs {by_solve} for {M!r}")
    return by_formula


def _flat(M: Matrix) -> list[int]:
    return [c for r in M.rows for c in r]


def enveloping_dim(gens: Sequence[Matrix]) -> int:
    """Dimension of the algebra spanned by all words in gens."""
    f = gens[0].field
    n = gens[0].n
    space = RowSpace(f, n * n)
    ident = Matrix.identity(f, n)
    space.add(_flat(ident))
    queue = [ident]
    while queue:
        B = queue.pop()
        for g in gens:
            C = g * B
            if space.add(_flat(C)):
                queue.append(C)
                if space.dim == n * n:
                    return space.dim
    return space.dim


# ---------------------------------------------------------------- invariant subspaces

def spin(vectors: Sequence[Sequence[int]], gens: Sequence[Matrix]) -> list[list[int]]:
    """Basis of the smallest gens-invariant subspace containing vectors."""
    f = gens[0].field
    n = gens[0].n
    space = RowSpace(f, n)
    basis: list[list[int]] = []
    queue = []
    for v in vectors:
        if space.add(v):
            basis.append(list(v))
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for g in gens:
            w = g.apply(v)
            if space.add(w):
                basis.append(w)
                queue.append(w)
    return basis


def splitting_degree(polys: Sequence[Poly], cap: int = 2**24) -> int:
    """Least m such that every poly splits over the degree-m extension of its field."""
    f = polys[0].field
    for m in (1, 2, 3, 4, 6, 12):
        if f.q**m > cap or f.a * m > 12:
            break
        E = field_create(f.p, f.a * m)
        if all(len(p.roots(E)) == p.degree for p in polys):
            return m
    raise TooLarge("eigenvalues need too large an extension")


def _common_eigenvectors(gens: Sequence[Matrix]) -> list[list[int]]:
    """One vector per nonzero intersection of eigenspaces, over the gens' field."""
    f = gens[0].field
    n = gens[0].n
    eig = [sorted({r.code for r in char_poly(g).roots()}) for g in gens]
    found = []
    for combo in itertools.product(*eig):
        rows = []
        for g, lam in zip(gens, combo):
            rows.extend((g - Matrix.scalar_code(f, n, lam)).rows)
        ker = nullspace(rows, f, n)
        if ker:
            found.append(ker[0])
    return found


def _closure_field(gens: Sequence[Matrix], extra: Sequence[Matrix] = ()) -> FieldSpec:
    f = gens[0].field
    m = splitting_degree([char_poly(g) for g in list(gens) + list(extra)])
    return field_create(f.p, f.a * m) if m > 1 else f


def _hyperplane(v: Sequence[int], f: FieldSpec) -> list[list[int]]:
    return nullspace([list(v)], f, len(v))


def _lines(basis: Sequence[Sequence[int]], f: FieldSpec, limit: int = 200000):
    """All lines in span(basis), one representative each."""
    k = len(basis)
    if f.q ** (k - 1) > limit:
        raise TooLarge("too many lines to enumerate")
    n = len(basis[0])
    for lead in range(k):
        for tail in itertools.product(range(f.q), repeat=k - lead - 1):
            coefs = [0] * lead + [1] + list(tail)
            v = [0] * n
            for c, b in zip(coefs, basis):
                if c:
                    v = [f.add(a, f.mul(c, bb)) for a, bb in zip(v, b)]
            yield v


def _quotient_action(gens: Sequence[Matrix], sub: Sequence[Sequence[int]]):
    """Change of basis B (columns: sub then complement) and the quotient actions."""
    f = gens[0].field
    n = gens[0].n
    space = RowSpace(f, n)
    cols = []
    for v in sub:
        space.add(v)
        cols.append(list(v))
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        if space.add(e):
            cols.append(e)
    B = Matrix.from_columns(f, cols)
    Binv = B.inverse()
    r = len(sub)
    quot = []
    for g in gens:
        C = Binv * g * B
        quot.append(Matrix(f, [row[r:] for row in C.rows[r:]]))
    return B, quot


def invariant_subspace(gens: Sequence[Matrix], dim: int, field: FieldSpec | None = None):
    """A common invariant subspace of the given dimension over a splitting field, or None.

    Returns (field, basis rows).  Dimensions 1 and n-1 use common eigenvectors
    (of the gens, resp. their transposes); dimension 2 spins eigenvectors of a
    generator and otherwise looks for a line in a quotient by a common eigenvector.
    """
    n = gens[0].n
    if dim <= 0 or dim >= n:
        raise ValueError("dim must satisfy 0 < dim < n")
    if field is None:
        prods = [gens[0] * gens[1]] if len(gens) > 1 else []
        field = _closure_field(gens, prods)
    G = [g.lift(field) for g in gens]
    f = field
    if dim == 1:
        vs = _common_eigenvectors(G)
        return (f, [vs[0]]) if vs else None
    if dim == n - 1:
        vs = _common_eigenvectors([g.T for g in G])
        return (f, _hyperplane(vs[0], f)) if vs else None
    if dim != 2 or n != 4:
        raise NotImplementedError("only dimensions 1, n-1 and 2 (n=4) are supported")
    # An invariant plane W contains an eigenvector of every element of the group,
    # so one element suffices: take the one whose eigenspaces hold the fewest lines.
    best = None
    for g in G + ([G[0] * G[1]] if len(G) > 1 else []):
        spaces = [nullspace((g - Matrix.scalar_code(f, n, lam)).rows, f, n)
                  for lam in sorted({r.code for r in char_poly(g).roots()})]
        cost = sum((f.q ** len(K) - 1) // (f.q - 1) for K in spaces)
        if best is None or cost < best[0]:
            best = (cost, spaces)
    for K in best[1]:
        cands = [K[0]] if len(K) == 1 else list(_lines(K, f))
        if len(K) == 2:
            S = spin(K, G)
            if len(S) == 2:
                return f, S
        for v in cands:
            S = spin([v], G)
            if len(S) == 2:
                return f, S
            if len(S) == 1:
                B, quot = _quotient_action(G, S)
                for w in _common_eigenvectors(quot):
                    lifted = B.apply([0] + list(w))
                    return f, [S[0], lifted]
    return None


def find_invariant_subspace(gens: Sequence[Matrix], field: FieldSpec | None = None):
    """Any proper invariant subspace over a splitting field, trying dims 1, n-1, then 2."""
    n = gens[0].n
    if field is None:
        prods = [gens[0] * gens[1]] if len(gens) > 1 else []
        field = _closure_field(gens, prods)
    for dim in (1, n - 1, 2):
        if 0 < dim < n:
            w = invariant_subspace(gens, dim, field)
            if w is not None:
                return w
    return None


def is_invariant(gens: Sequence[Matrix], basis: Sequence[Sequence[int]]) -> bool:
    f = gens[0].field
    space = RowSpace(f, gens[0].n)
    for v in basis:
        space.add(v)
    return all(g.apply(v) in space for g in gens for v in basis)


def brute_force_invariant_subspaces(gens: Sequence[Matrix], dim: int, limit: int = 10**7):
    """All invariant subspaces of the given dimension over the gens' own field (tiny q only)."""
    f = gens[0].field
    n = gens[0].n
    if f.q ** (dim * (n - dim)) * math.comb(n, dim) > limit:
        raise TooLarge("enumeration bound exceeded")
    found = []
    # subspaces via reduced echelon bases: choose pivots, fill the free slots
    for pivots in itertools.combinations(range(n), dim):
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for vals in itertools.product(range(f.q), repeat=len(slots)):
            rows = [[0] * n for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            if is_invariant(gens, rows):
                found.append(rows)
    return found


# ---------------------------------------------------------------- symmetric square

def _sym_basis(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym_action(g: Matrix) -> Matrix:
    """Matrix of m -> g m g^T on symmetric matrices, basis E_ii and E_ij + E_ji (i<j)."""
    f = g.field
    n = g.n
    basis = _sym_basis(n)
    cols = []
    gt = g.T
    for i, j in basis:
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        m[j][i] = 1
        img = g * Matrix(f, m) * gt
        cols.append([img.rows[a][b] for a, b in basis])
    return Matrix.from_columns(f, cols)


def sym_fixed_dim(gens: Sequence[Matrix], dual: bool = False) -> int:
    """Dimension of the common fixed space on symmetric matrices (or of the dual action)."""
    f = gens[0].field
    rows = []
    for g in gens:
        A = sym_action(g)
        if dual:
            A = A.inverse().T
        rows.extend((A - Matrix.identity(f, A.n)).rows)
    return A.n - len(rref(rows, f)[0])


# ---------------------------------------------------------------- cubic representation

def cubic_rep(g: Matrix) -> Matrix:
    """Action of a 2x2 matrix on cubics in t1, t2, basis t1^3, t1^2 t2, t1 t2^2, t2^3.

    t_j is sent to sum_i g[i][j] t_i.
    """
    f = g.field
    if f.p in (2, 3):
        raise BadCharacteristic("the cubic representation needs p != 2, 3")
    if g.n != 2 or g.det().code != 1:
        raise ValueError("expected a 2x2 matrix of determinant 1")
    (a, b), (c, d) = g.rows
    # images of t1 and t2 as (coefficient of t1, coefficient of t2)
    t1 = Poly(f, [c, a])  # in the variable u = t1/t2 up to the t2 power: a*u + c
    t2 = Poly(f, [d, b])
    cols = []
    for k in range(4):
        img = (t1 ** (3 - k)) * (t2 ** k)  # coefficient of u^e is that of t1^e t2^(3-e)
        cols.append([img.coeffs[3 - i] if 3 - i < len(img.coeffs) else 0 for i in range(4)])
    return Matrix.from_columns(f, cols)
