import itertools

import pytest

from twokgen.errors import DegenerateY, OrderUnavailable
from twokgen.gf import FieldElement, field_create
from twokgen.genpair import admissible_k, make_pair


def all_pairs(f, ks=None, ds=None):
    """Every admissible (k, d, r1..r4) pair over f."""
    ks = ks or admissible_k(f.q, f.p)
    ds = ds or ([1] if f.p == 2 else [1, -1])
    for k in ks:
        for d in ds:
            for codes in itertools.product(range(f.q), repeat=4):
                try:
                    yield make_pair(f, k, d, *(FieldElement(f, c) for c in codes))
                except (DegenerateY, OrderUnavailable):
                    pass


def brute_order(gens):
    """Order of a small matrix group by closing the element set."""
    ident = gens[0] ** 0
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


@pytest.fixture(scope="session")
def gf9():
    return field_create(3, 2)
