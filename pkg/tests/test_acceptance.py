"""Acceptance criteria: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from functools import lru_cache

from conftest import all_pairs
from twokgen.errors import DegenerateY, OrderUnavailable
from twokgen.forms import conj_action_trace, explicit_classic_form, explicit_form_det, scott
from twokgen.genpair import admissible_k, make_pair, reducibility
from twokgen.gf import FieldElement, count_defective, field_create, generated_subfield, subfields_bound
from twokgen.linalg import enveloping_dim, find_invariant_subspace, is_invariant
from twokgen.presentations import case_entry, verify_case
from twokgen.suites import verify


@lru_cache(maxsize=None)
def suite(name):
    return verify(name)


def report(capsys, number, title, ok, detail=""):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def claims(rep, *, contains=None):
    return [c for c in rep.claims if contains is None or contains in c.name]


def failed(*reps):
    return [f"{r.suite}: {c.name}" for r in reps for c in r.claims if c.passed is False]


def random_pairs(f, count, rng):
    ks = admissible_k(f.q, f.p)
    ds = [1] if f.p == 2 else [1, -1]
    out = []
    while len(out) < count:
        try:
            out.append(make_pair(f, rng.choice(ks), rng.choice(ds),
                                 *(FieldElement(f, rng.randrange(f.q)) for _ in range(4))))
        except (DegenerateY, OrderUnavailable):
            continue
    return out


def test_criterion_1_centralizer_dimensions(capsys):
    rng = random.Random(2024)
    checked, bad = 0, []
    for p, a in ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)):
        f = field_create(p, a)
        pairs = all_pairs(f) if f.q <= 4 else random_pairs(f, 1000, rng)
        for pair in pairs:
            if enveloping_dim([pair.x, pair.y]) < 16:
                continue
            rep = scott(pair)
            checked += 1
            if (rep.d_x, rep.d_y, rep.d_xy, rep.sum) != (8, 6, 4, 18):
                bad.append(pair.describe())
    report(capsys, 1, "centralizer dimensions (8, 6, 4), sum 18", not bad and checked > 0,
           f"{checked} absolutely irreducible pairs, {len(bad)} mismatches")


def test_criterion_2_reducibility_oracles_agree(capsys):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for p, a in ((2, 1), (3, 1), (2, 2)):
        for pair in all_pairs(field_create(p, a)):
            closed = reducibility(pair).reducible
            algebra = enveloping_dim([pair.x, pair.y]) < 16
            w = find_invariant_subspace([pair.x, pair.y])
            witness = w is not None and is_invariant([pair.x.lift(w[0]), pair.y.lift(w[0])], w[1])
            checked += 1
            if not closed == algebra == witness:
                bad.append(pair.describe())
    secs = time.perf_counter() - t0
    report(capsys, 2, "closed conditions <=> enveloping dim < 16 <=> subspace witness",
           not bad and secs < 60, f"{checked} pairs over F2, F3, F4 in {secs:.1f}s, {len(bad)} mismatches")


def test_criterion_3_negative_results(capsys):
    reps = [suite("nr-i"), suite("nr-iv"), suite("nr-iii"), suite("tuples-48-54")]
    expected = {"2.2.3": ("order", 128), "2.2.4": ("order", 2304), "2.2.5": ("order", 2304),
                "2.2.6": ("pres", 2520), "2.3": ("pres", 2520), "2.2.1": ("pres", 20160), "2.5.1": ("pres", 20160)}
    case_bad = []
    for label, (kind, n) in expected.items():
        for o in verify_case(case_entry(label)):
            got = o.detail["order"] if kind == "order" else o.detail["whole_projective_order"]
            if not o.ok or got != n:
                case_bad.append(label)
    bad = failed(*reps) + case_bad
    report(capsys, 3, "Sp4(3), Sp4(5) and SL4(2) not (2,3)-generated; 48/54 tuples; unitary case orders",
           not bad, "; ".join(bad) or f"{sum(len(r.claims) for r in reps)} claims and {len(expected)} case tables")


def test_criterion_4_positive_generation(capsys):
    reps = [suite("sl4"), suite("sp4"), suite("su4"), suite("lemma26")]
    su42 = [c for c in suite("su4-2").claims if "exception" not in c.name]
    bad = failed(*reps) + [c.name for c in su42 if c.passed is False]
    total = sum(len(r.claims) for r in reps) + len(su42)
    report(capsys, 4, "SL4, Sp4, SU4 generated with exact classical orders", not bad,
           "; ".join(bad) or f"{total} claims")


def test_criterion_5_unitary_exceptions(capsys):
    ex = claims(suite("su4-2"), contains="exception")
    ok = len(ex) == 3 and all(c.passed for c in ex)
    report(capsys, 5, "no generating pair for (q,k) = (2,3), (3,3), (3,4)", ok,
           ", ".join(f"{c.evidence['q']},{c.evidence['k']}: {c.evidence['full']} full of {c.evidence['irreducible']}"
                     for c in ex))


def test_criterion_6_unitary_exponent_table(capsys):
    rep = suite("table5")
    rows = claims(rep, contains="exponents match")
    beyond = [c for c in claims(rep, contains="subset") if c.evidence["generating_beyond_hypotheses"]]
    report(capsys, 6, "exponent sets b reproduce for q=5 and q=4", rep.passed and len(rows) == 14,
           f"{len(rows)} rows; {len(beyond)} row(s) generate beyond the stated hypotheses")


def test_criterion_7_exceptional_rows(capsys):
    rep = suite("table4")
    report(capsys, 7, "each exceptional row has a witness with the predicted outcome", rep.passed,
           "; ".join(failed(rep)) or f"{len(rep.claims)} claims")


def test_criterion_8_explicit_form_determinants(capsys):
    rng = random.Random(8)
    fields = [field_create(p, a) for p, a in ((3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2), (13, 1))]
    done, bad = 0, []
    while done < 1000:
        f = rng.choice(fields)
        lam = rng.choice([1, -1])
        r4 = FieldElement(f, rng.randrange(1, f.q))
        try:
            pair = make_pair(f, rng.choice(admissible_k(f.q, f.p)), rng.choice([1, -1]), 0, lam * r4, 0, r4)
        except (DegenerateY, OrderUnavailable):
            continue
        if lam == 1 and pair.s == -2:
            continue
        J, _ = explicit_classic_form(pair)
        done += 1
        if J.det() != explicit_form_det(pair, lam):
            bad.append(pair.describe())
    report(capsys, 8, "det J = (s-2)^4 (skew) and ((s-2)^2-4dr4^2)^3/(s+2)^2 (symmetric)", not bad,
           f"{done} random parameter choices, {len(bad)} mismatches")


def test_criterion_9_conjugation_traces(capsys):
    checked, bad = 0, []
    for p, a in ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)):
        f = field_create(p, a)
        for k in admissible_k(f.q, p):
            for d in ([1] if p == 2 else [1, -1]):
                for r2 in f.elements():
                    for r4 in f.elements():
                        try:
                            pair = make_pair(f, k, d, 0, r2, 0, r4)
                        except (DegenerateY, OrderUnavailable):
                            continue
                        s, D = pair.s, f(d)
                        ok = (conj_action_trace(pair.y) == (s + 2) ** 2
                              and conj_action_trace(pair.xy) == D * r2 * r4
                              and conj_action_trace(pair.xy * pair.xy)
                              == r2**2 * r4**2 + 2 * D * s * (r2**2 + r4**2) + 4 * s**2)
                        checked += 1
                        if not ok:
                            bad.append(pair.describe())
    report(capsys, 9, "traces of the conjugation action of y, xy, (xy)^2", not bad,
           f"{checked} pairs with q <= 9, {len(bad)} mismatches")


def test_criterion_10_defective_counts(capsys):
    rows, bad = 0, []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        a = 1
        while p**a <= 3**6:
            f = field_create(p, a)
            brute = sum(1 for r in f.nonzero() if generated_subfield(f, [r * r]) < a)
            n = count_defective(f)
            rows += 1
            if n != brute or n > subfields_bound(p, a):
                bad.append(f"{p}^{a}: {n} vs {brute}, bound {subfields_bound(p, a)}")
            a += 1
    report(capsys, 10, "count of r with F_p[r^2] proper within the bound, all p^a <= 3^6", not bad,
           "; ".join(bad) or f"{rows} fields")
