"""Defining relations of small simple groups, checked on projective images.

A relator holds for matrices when it evaluates to a scalar matrix.  The
presentations and the word assignments of the unitary (2,4) case analysis are
data files in ``twokgen/data``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

from .errors import ArityMismatch, ParseError, TooLarge
from .gf import FieldElement, FieldSpec, parse_field
from .grouporder import group_report
from .linalg import Matrix
from .words import Word, evaluate, parse_word


def _load(name: str) -> dict:
    return json.loads(resources.files("twokgen.data").joinpath(name).read_text())


@dataclass(frozen=True)
class Presentation:
    id: str
    name: str
    order: int
    generators: tuple[str, ...]
    relator_texts: tuple[str, ...]
    relators: tuple[Word, ...] = field(repr=False)
    fixture: dict = field(repr=False, default_factory=dict)

    @property
    def arity(self) -> int:
        return len(self.generators)


@lru_cache(maxsize=None)
def presentations() -> dict[str, Presentation]:
    out = {}
    for item in _load("presentations.json")["presentations"]:
        out[item["id"]] = Presentation(
            item["id"],
            item["name"],
            item["order"],
            tuple(item["generators"]),
            tuple(item["relators"]),
            tuple(parse_word(r) for r in item["relators"]),
            item.get("fixture", {}),
        )
    return out


def rejected_readings(pres_id: str) -> list[list[str]]:
    for item in _load("presentations.json")["presentations"]:
        if item["id"] == pres_id:
            return item.get("rejected_readings", [])
    return []


# ---------------------------------------------------------------- expressions

_EXPR = re.compile(r"^\s*(?P<neg>-)?\s*(?:(?P<coef>[0-9z^+\-]+)\*)?(?P<word>.*)$")


@dataclass(frozen=True)
class Expr:
    """A word with a scalar coefficient, written "[-][coef*]word"."""

    negate: bool
    coef: str | None
    word: Word

    @classmethod
    def parse(cls, text: str) -> "Expr":
        m = _EXPR.match(str(text))
        if not m:
            raise ParseError(f"bad expression {text!r}")
        return cls(bool(m.group("neg")), m.group("coef"), parse_word(m.group("word")))

    def scalar(self, f: FieldSpec) -> FieldElement:
        c = f(self.coef) if self.coef else f.one
        return -c if self.negate else c


def _matrix_ops(f: FieldSpec, n: int):
    return (lambda a, b: a * b), (lambda a: a.inverse()), Matrix.identity(f, n)


def eval_expr(expr: Expr | str, images: Mapping[str, Matrix]) -> Matrix:
    if isinstance(expr, str):
        expr = Expr.parse(expr)
    some = next(iter(images.values()))
    f, n = some.field, some.n
    mul, inv, one = _matrix_ops(f, n)
    return expr.scalar(f) * evaluate(expr.word, images, mul, inv, one)


def eval_word(word: Word | str, images: Mapping[str, Matrix]) -> Matrix:
    if isinstance(word, str):
        word = parse_word(word)
    some = next(iter(images.values()))
    mul, inv, one = _matrix_ops(some.field, some.n)
    return evaluate(word, images, mul, inv, one)


# ---------------------------------------------------------------- checking


@dataclass
class PresentationCheck:
    pres: str
    holds: bool
    failed: list[str]
    nontrivial: bool
    projective_order: int | None  # of the group generated by the images
    certified: bool

    def to_dict(self) -> dict:
        return {
            "presentation": self.pres,
            "holds": self.holds,
            "failed": self.failed,
            "nontrivial": self.nontrivial,
            "projective_order": self.projective_order,
            "certified": self.certified,
        }


def relators_hold(pres: Presentation, images: Mapping[str, Matrix]) -> list[str]:
    """Names of the relators that do not evaluate to scalars."""
    return [
        text
        for text, w in zip(pres.relator_texts, pres.relators)
        if eval_word(w, images).is_scalar() is None
    ]


def _pair_images(pair) -> dict[str, Matrix]:
    if isinstance(pair, Mapping):
        return dict(pair)
    if isinstance(pair, tuple):
        return {"x": pair[0], "y": pair[1]}
    return {"x": pair.x, "y": pair.y}


def check_images(pres_id: str, images: Mapping[str, Matrix], certify: bool = True) -> PresentationCheck:
    pres = presentations()[pres_id]
    if set(images) != set(pres.generators):
        raise ArityMismatch(f"{pres_id} needs generators {pres.generators}, got {sorted(images)}")
    failed = relators_hold(pres, images)
    nontrivial = any(m.is_scalar() is None for m in images.values())
    order = None
    if certify and not failed and nontrivial:
        try:
            order = group_report([images[g] for g in pres.generators]).projective_order
        except TooLarge:
            order = None
    certified = not failed and nontrivial and order == pres.order
    return PresentationCheck(pres_id, not failed, failed, nontrivial, order, certified)


def check_presentation(pres_id: str, assign: Mapping[str, str], pair, certify: bool = True) -> PresentationCheck:
    """Evaluate each presentation generator as a word in x, y and test the relators."""
    pres = presentations()[pres_id]
    if len(assign) != pres.arity or set(assign) != set(pres.generators):
        raise ArityMismatch(f"{pres_id} has generators {pres.generators}")
    base = _pair_images(pair)
    images = {g: eval_expr(assign[g], base) for g in pres.generators}
    return check_images(pres_id, images, certify)


def check_fixture(pres_id: str) -> tuple[bool, int]:
    """Relators on the bundled permutation generators; returns (holds, group order)."""
    pres = presentations()[pres_id]
    fx = pres.fixture
    deg = fx["degree"]
    perms = {g: tuple(fx["generators"][g]) for g in pres.generators}

    def mul(a, b):  # left factor first
        return tuple(b[i] for i in a)

    def inv(a):
        out = [0] * len(a)
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    ident = tuple(range(deg))
    ok = all(evaluate(w, perms, mul, inv, ident) == ident for w in pres.relators)
    return ok, _perm_group_order(list(perms.values()), deg)


def _perm_group_order(gens: Sequence[tuple[int, ...]], deg: int) -> int:
    """Order of a small permutation group by closing the set of elements."""
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(g[i] for i in a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------- conjugate generating sets


@dataclass
class ConjugateCheck:
    """g_{i+1} = u^i g_1 u^-i satisfy a presentation and x, y are words in the g_i."""

    pres: PresentationCheck
    x_matches: bool
    y_matches: bool
    x_projective: bool
    y_projective: bool

    @property
    def certified(self) -> bool:
        return self.pres.certified and self.x_projective and self.y_projective

    def to_dict(self) -> dict:
        return {
            **self.pres.to_dict(),
            "x_exact": self.x_matches,
            "y_exact": self.y_matches,
            "x_projective": self.x_projective,
            "y_projective": self.y_projective,
            "certified": self.certified,
        }


def conjugate_images(u: str, g1: str, base: Mapping[str, Matrix], count: int) -> dict[str, Matrix]:
    U = eval_expr(u, base)
    G1 = eval_expr(g1, base)
    out = {}
    Ui = U.inverse()
    left, right = Matrix.identity(U.field, U.n), Matrix.identity(U.field, U.n)
    for i in range(count):
        out[f"g{i + 1}"] = left * G1 * right
        left, right = left * U, Ui * right
    return out


def check_conjugates(
    pres_id: str,
    u: str,
    g1: str,
    x_expr: str,
    y_expr: str,
    pair,
    named: Mapping[str, str] | None = None,
) -> ConjugateCheck:
    pres = presentations()[pres_id]
    base = _pair_images(pair)
    gs = conjugate_images(u, g1, base, pres.arity)
    images = {f"T{i + 1}": gs[f"g{i + 1}"] for i in range(pres.arity)}
    pc = check_images(pres_id, images)
    env = dict(gs)
    for name, text in (named or {}).items():
        env[name] = eval_expr(text, gs)
    X = eval_expr(x_expr, env)
    Y = eval_expr(y_expr, env)
    x, y = base["x"], base["y"]
    return ConjugateCheck(
        pc, X == x, Y == y, (X * x.inverse()).is_scalar() is not None, (Y * y.inverse()).is_scalar() is not None
    )


# ---------------------------------------------------------------- the unitary (2,4) case tables


@lru_cache(maxsize=None)
def psu_cases() -> dict:
    return _load("psu_cases.json")


def _case_r(f: FieldSpec, shape: dict, tup) -> list[FieldElement]:
    z = f.gen
    vals = [f(v) if isinstance(v, str) else f(int(v)) for v in tup]
    if shape["params"] == "a":
        a1, a2, a3, a4 = vals
        r3 = a1 * z**3
        r4 = a3 + a4 * z**2
        r1 = -a3 + a4 * z**2 - a1 * z**3
        r2 = -a3 - a4 * z**2 + a2 * z
        return [r1, r2, r3, r4]
    return vals


def case_matrices(shape: dict, tup, sign: int = 1, sign_positions=None) -> tuple[Matrix, Matrix]:
    """(x, y) for one row of the case tables; sign negates the listed tuple."""
    f = parse_field(psu_cases()["field"])
    z = f.gen
    tup = list(tup)
    positions = range(4) if sign_positions is None else sign_positions
    vals = _case_r(f, shape, tup)
    if shape["params"] == "a" and sign == -1:
        vals = _case_r(f, shape, [-int(v) for v in tup])
    elif sign == -1:
        vals = [-v if i in positions else v for i, v in enumerate(vals)]
    r1, r2, r3, r4 = vals
    if shape["kind"] == "y1":
        a, b = f(shape["a"]), f(shape["b"])
        rows = [[z, 0, r1, r2], [0, z**3, r3, r4], [0, 0, a, b], [0, 0, 0, -a - 1]]
    elif shape["kind"] == "y2":
        c = f(shape["c"])
        rows = [[z, 0, r1, r2], [0, z**3, r3, r4], [0, 0, c, 1 - c - c * c], [0, 0, 1, -c - 1]]
    else:
        raise ValueError(f"unknown shape {shape['kind']!r}")
    d = psu_cases()["d"]
    x = Matrix.from_values(f, [[0, 0, 1, 0], [0, 0, 0, 1], [d, 0, 0, 0], [0, d, 0, 0]])
    return x, Matrix.from_values(f, rows)


@dataclass
class CaseOutcome:
    case: str
    tuple: list
    sign: int
    ok: bool
    detail: dict

    def to_dict(self) -> dict:
        return {"case": self.case, "tuple": [str(v) for v in self.tuple], "sign": self.sign, "ok": self.ok, **self.detail}


def verify_case(entry: dict) -> list[CaseOutcome]:
    """Check the claim of one case-table entry on every listed tuple and sign."""
    claim = entry["claim"]
    shape = entry["shape"]
    named = psu_cases()["named_words"]
    sp = entry.get("sign_positions")
    rows = entry.get("rows") or [{"tuple": t} for t in entry["tuples"]]
    out = []
    for row in rows:
        for sign in (1, -1):
            x, y = case_matrices(shape, row["tuple"], sign, sp)
            base = {"x": x, "y": y}
            detail: dict = {}
            if claim["type"] == "order":
                rep = group_report([x, y])
                detail = {"order": rep.order, "expected": claim["order"]}
                ok = rep.order == claim["order"]
            elif claim["type"] == "presentation":
                pc = check_presentation(claim["pres"], claim["assign"], base)
                whole = group_report([x, y]).projective_order
                detail = {**pc.to_dict(), "whole_projective_order": whole}
                ok = pc.certified and whole == claim["projective_order"]
                if "identity" in claim:
                    env = {**base, **{g: eval_expr(e, base) for g, e in claim["assign"].items()}}
                    lhs, rhs = (eval_expr(t, env) for t in claim["identity"])
                    detail["identity"] = lhs == rhs
                    ok = ok and lhs == rhs
            elif claim["type"] == "conjugates":
                key = "+" if sign == 1 else "-"
                cc = check_conjugates(claim["pres"], row["u"], row["g1"], row["x"][key], row["y"], base, named)
                whole = group_report([x, y]).projective_order
                detail = {**cc.to_dict(), "whole_projective_order": whole}
                ok = cc.certified and cc.x_matches and cc.y_matches and whole == claim["projective_order"]
            else:
                raise ValueError(f"unknown claim type {claim['type']!r}")
            out.append(CaseOutcome(entry["case"], row["tuple"], sign, ok, detail))
    return out


def case_entry(label: str) -> dict:
    for entry in psu_cases()["cases"]:
        if entry["case"] == label:
            return entry
    raise KeyError(label)


# ---------------------------------------------------------------- identification


_BY_PROJECTIVE = {
    60: "Alt(5)",
    168: "PSL2(7)",
    360: "Alt(6)",
    720: "Alt(6).2",
    2520: "Alt(7)",
    20160: "order 20160 (PSL3(4) or Alt(8))",
    25920: "PSp4(3)",
}
_BY_LINEAR = {
    2**7: "2-group of order 2^7",
    2**8 * 3**2: "soluble group of order 2^8*3^2",
    2**6 * 3**2: "group of order 2^6*3^2",
}

_DIRECT = (
    ("A5", {"S": "x", "T": "y"}),
    ("L27_a", {"S": "x", "T": "y"}),
    ("L34", {"S": "x", "T": "y"}),
    ("L27_b", {"S": "x", "T": "(yx)^2"}),
    ("A6", {"T1": "x", "T2": "yxy^-1", "T3": "xy^-1xy^2xyx"}),
    ("A6", {"T1": "x", "T2": "y^3xy^-1(xy)^2", "T3": "y^2"}),
)


@dataclass
class Identification:
    name: str | None
    method: str
    order: int | None
    projective_order: int | None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "method": self.method,
            "order": self.order,
            "projective_order": self.projective_order,
        }


def _assignment_candidates():
    yield from _DIRECT
    for entry in psu_cases()["cases"]:
        if entry["claim"]["type"] == "conjugates":
            for row in entry.get("rows", []):
                yield ("conj", entry["claim"]["pres"], row["u"], row["g1"])


def identify_quotient(pair, *, max_points: int | None = None) -> Identification:
    """Name the projective image of <x, y> from relations, else from its order."""
    base = _pair_images(pair)
    x, y = base["x"], base["y"]
    kw = {} if max_points is None else {"max_points": max_points}
    try:
        rep = group_report([x, y], **kw)
    except TooLarge:
        return Identification(None, "too-large", None, None)
    whole = rep.projective_order
    pres = presentations()
    tried = set()
    for cand in _assignment_candidates():
        if cand[0] == "conj":
            _, pid, u, g1 = cand
            if (pid, u, g1) in tried:
                continue
            tried.add((pid, u, g1))
            if pres[pid].order != whole:
                continue
            images = conjugate_images(u, g1, base, pres[pid].arity)
            pc = check_images(pid, {f"T{i + 1}": images[f"g{i + 1}"] for i in range(pres[pid].arity)})
            if pc.certified:
                return Identification(pres[pid].name, f"presentation {pid} on conjugates", rep.order, whole)
            continue
        pid, assign = cand
        if pres[pid].order != whole:
            continue
        pc = check_presentation(pid, assign, base)
        if pc.certified:
            return Identification(pres[pid].name, f"presentation {pid}", rep.order, whole)
    if rep.order in _BY_LINEAR:
        return Identification(_BY_LINEAR[rep.order], "order", rep.order, whole)
    if whole in _BY_PROJECTIVE:
        return Identification(_BY_PROJECTIVE[whole], "order", rep.order, whole)
    return Identification(None, "unidentified", rep.order, whole)
