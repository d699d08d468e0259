"""Classification of a single pair and parameter sweeps.

classify walks the maximal-subgroup classes from the cheap checks to the
expensive one: reducibility, realization over a subfield, invariant forms,
the exceptional-parameter ledger, and finally the exact group order.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DegenerateY, OrderUnavailable, TooLarge
from .forms import solve_forms
from .genpair import (
    GeneratorPair,
    exceptional_match,
    field_lower_bound,
    make_pair,
    reducibility,
)
from .gf import FieldElement, FieldSpec, field_create
from .grouporder import DEFAULT_MAX_POINTS, verdict
from .linalg import Matrix, RowSpace, char_poly
from .presentations import identify_quotient

VERDICTS = ("Reducible", "SubfieldDefined", "FixesForm", "Exceptional", "FullGroup", "Undetermined")
CONSTRAINTS = ("r2=0", "r2=-r4", "r2=d*r4^q", "all")
DEFAULT_MAX_TUPLES = 9**4


@dataclass
class Classification:
    verdict: str
    detail: str | None
    evidence: dict = field(default_factory=dict)
    pair: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.verdict}({self.detail})" if self.detail else self.verdict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "detail": self.detail, "label": self.label,
                "pair": self.pair, "evidence": self.evidence}


# ---------------------------------------------------------------- subfield realization


def _subfield_basis(f: FieldSpec, e: int) -> list[FieldElement]:
    """An F_p-basis of the subfield of degree e."""
    g0 = FieldElement(f, f.exp[(f.q - 1) // (f.p**e - 1)]) if e < f.a else f.gen
    return [g0**j for j in range(e)]


def _in_subfield(c: FieldElement, e: int) -> bool:
    return c.frobenius(e) == c


def _scalar_candidates(g: Matrix, e: int) -> list[FieldElement]:
    """Coset representatives c of F_q^*/F_{p^e}^* with char poly of g/c over F_{p^e}."""
    f = g.field
    out = []
    for j in range((f.q - 1) // (f.p**e - 1)):
        c = FieldElement(f, f.exp[j])
        cp = char_poly(c.inverse() * g)
        if all(_in_subfield(cp.coeff(i), e) for i in range(g.n + 1)):
            out.append(c)
    return out


def _span_dim_over(gens: list[Matrix], e: int, limit: int) -> int:
    """F_p-dimension of the F_{p^e}-algebra spanned by words in gens (stops past limit)."""
    f = gens[0].field
    fp = field_create(f.p)
    n = gens[0].n

    def flat(M: Matrix) -> list[int]:
        return [d for row in M.rows for c in row for d in f.digits(c)]

    space = RowSpace(fp, n * n * f.a)
    queue = []
    for c in _subfield_basis(f, e):
        M = c * Matrix.identity(f, n)
        if space.add(flat(M)):
            queue.append(M)
    while queue:
        M = queue.pop()
        for g in gens:
            P = M * g
            if space.add(flat(P)):
                queue.append(P)
                if space.dim > limit:
                    return space.dim
    return space.dim


def subfield_realization(pair: GeneratorPair) -> int | None:
    """Degree e < a of a subfield F with <x, y> conjugate into GL_4(F) * scalars.

    Only subfields containing the closed-form lower bound are tried.  For an
    absolutely irreducible group, the F-span of the (rescaled) words is a form
    of the full matrix algebra exactly when its F_p-dimension is 16 e.
    """
    f = pair.field
    lb = field_lower_bound(pair)
    n = pair.x.n
    for e in range(lb, f.a):
        if f.a % e or e % lb:
            continue
        for cx in _scalar_candidates(pair.x, e):
            for cy in _scalar_candidates(pair.y, e):
                gens = [cx.inverse() * pair.x, cy.inverse() * pair.y]
                if _span_dim_over(gens, e, n * n * e) == n * n * e:
                    return e
    return None


# ---------------------------------------------------------------- classify


def _form_stage(pair: GeneratorPair) -> tuple[str, list, dict]:
    """Ambient classical group and any conclusive form.

    Returns (target, conclusive, evidence) where target is SL4, Sp4 or SU4 and
    conclusive lists the kinds of forms that already place the group inside a
    proper subgroup of that target.
    """
    f = pair.field
    one = (f.one, f.one)
    bil = solve_forms([pair.x, pair.y])
    herm = solve_forms([pair.x, pair.y], f.a // 2) if f.a % 2 == 0 else None
    found = list(bil.forms) + (list(herm.forms) if herm else [])
    ev = {"forms": [F.to_dict() for F in found]}
    target = "SL4"
    if any(F.kind == "skew" and F.multipliers == one for F in bil.forms):
        target = "Sp4"
    elif herm and any(F.multipliers == one for F in herm.forms):
        target = "SU4"
    conclusive = []
    for F in found:
        if F.kind == "symmetric":
            conclusive.append("symmetric")
        elif target == "SL4":
            conclusive.append(f"{F.kind} (multipliers {','.join(str(m) for m in F.multipliers)})")
    return target, sorted(set(conclusive)), ev


def classify(pair: GeneratorPair, *, max_points: int = DEFAULT_MAX_POINTS, seed: int = 0) -> Classification:
    """Place <x, y> in one class; the first conclusive stage wins.

    A row of the exceptional ledger is a necessary condition only, so a match
    is confirmed by the group order before it is reported.
    """
    ev: dict = {}
    desc = pair.to_dict()

    def done(v: str, detail: str | None = None) -> Classification:
        return Classification(v, detail, ev, desc)

    red = reducibility(pair)
    ev["reducibility"] = red.to_dict()
    if red.reducible:
        return done("Reducible", "closed-form conditions")

    ev["field_lower_bound"] = field_lower_bound(pair)
    if ev["field_lower_bound"] < pair.field.a:
        e = subfield_realization(pair)
        ev["subfield_degree"] = e
        if e is not None:
            return done("SubfieldDefined", f"GF({pair.field.p}^{e})")

    target, conclusive, ev["forms"] = _form_stage(pair)
    ev["target"] = target

    matches = []
    if pair.specialized:
        matches = [m for m in exceptional_match(pair) if m.row.outcome != "reducible"]
    ev["exceptional_rows"] = [m.to_dict() for m in matches]

    if conclusive and not matches:
        return done("FixesForm", conclusive[0])

    v = verdict(pair, target, max_points=max_points, seed=seed)
    ev["order"] = v.to_dict()
    if v.result == "too-large":
        return done("Undetermined", "order computation capped")
    if v.result == "full":
        return done("FullGroup", target)
    # proper subgroup of the target
    ident = identify_quotient(pair, max_points=max_points)
    ev["identification"] = ident.to_dict()
    if matches:
        name = ident.name or f"projective order {ident.projective_order}"
        return done("Exceptional", f"{matches[0].row.id}: {name}")
    if conclusive:
        return done("FixesForm", conclusive[0])
    if ident.name:
        return done("Exceptional", ident.name)
    return done("Undetermined", f"proper subgroup of order {v.order}, class not identified")


# ---------------------------------------------------------------- sweeps


@dataclass
class SweepRecord:
    params: dict
    classification: Classification
    seconds: float

    def to_dict(self) -> dict:
        return {"params": self.params, "seconds": round(self.seconds, 4),
                **self.classification.to_dict()}


def sweep_tuples(f: FieldSpec, d: int, constraint: str, *, max_tuples: int = DEFAULT_MAX_TUPLES) -> Iterator[tuple]:
    """(r1, r2, r3, r4) codes in a fixed order for one constraint family."""
    if constraint not in CONSTRAINTS:
        raise ValueError(f"unknown constraint {constraint!r}")
    if constraint == "all":
        if f.q**4 > max_tuples:
            raise TooLarge(f"{f.q**4} tuples exceed the cap of {max_tuples}")
        for code in range(f.q**4):
            yield tuple((code // f.q**i) % f.q for i in (3, 2, 1, 0))
        return
    for r4 in f.nonzero():
        if constraint == "r2=0":
            r2 = f.zero
        elif constraint == "r2=-r4":
            r2 = -r4
        else:
            if f.a % 2:
                raise ValueError("r2=d*r4^q needs a field of even degree")
            r2 = f(d) * r4.frobenius(f.a // 2)
        yield (0, r2.code, 0, r4.code)


def _classify_job(args) -> SweepRecord | None:
    f, k, d, s, codes, max_points = args
    t0 = time.perf_counter()
    try:
        pair = make_pair(f, k, d, *(FieldElement(f, c) for c in codes), s=s)
    except (DegenerateY, OrderUnavailable):
        return None
    c = classify(pair, max_points=max_points)
    return SweepRecord({"r": [f.format_code(x) for x in codes]}, c, time.perf_counter() - t0)


def sweep(
    f: FieldSpec,
    k: int,
    d: int,
    constraint: str,
    *,
    s=None,
    jobs: int = 1,
    max_points: int = DEFAULT_MAX_POINTS,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> list[SweepRecord]:
    """Classify every admissible tuple of one family, in tuple order."""
    if f.q**4 > max_points:
        raise TooLarge(f"GF({f.q}) exceeds the order-engine cap of {max_points} vectors")
    s_code = None if s is None else f(s).code
    s_arg = None if s_code is None else FieldElement(f, s_code)
    work = [(f, k, d, s_arg, codes, max_points) for codes in sweep_tuples(f, d, constraint, max_tuples=max_tuples)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_job, work, chunksize=8))
    else:
        results = [_classify_job(w) for w in work]
    return [r for r in results if r is not None]


def summarize(records: list[SweepRecord]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for r in records:
        counts[r.classification.verdict] = counts.get(r.classification.verdict, 0) + 1
    return counts
