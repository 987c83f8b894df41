"""Shared fixtures and brute-force oracles.

The oracles below restate the defining conditions as direct quantifier
sweeps, on purpose: library results are compared against these, never
against other library routines.
"""

from __future__ import annotations

import pytest

from impbench.fixtures import boolean_lattice, chain, square, square_bottom, square_top
from impbench.lattice import FinLattice


def brute_is_implication(L: FinLattice, t) -> bool:
    n = L.n
    if any(t[a][a] != L.top for a in range(n)):
        return False
    for a in range(n):
        for b in range(n):
            if not L.leq(a, b):
                continue
            for c in range(n):
                if not L.leq(t[b][c], t[a][c]):
                    return False
                if not L.leq(t[c][a], t[c][b]):
                    return False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not L.leq(L.meet[t[a][b]][t[b][c]], t[a][c]):
                    return False
    return True


def brute_open(L: FinLattice, t) -> bool:
    n = L.n
    return all(
        L.leq(a, t[b][c])
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if L.leq(L.meet[a][b], c)
    )


def brute_closed(L: FinLattice, t) -> bool:
    n = L.n
    return all(
        L.join[t[a][b]][c] == L.top
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if L.leq(a, L.join[b][c])
    )


def brute_heyting(L: FinLattice, a: int, b: int) -> int:
    best = L.bottom
    for c in range(L.n):
        if L.leq(L.meet[c][a], b):
            best = L.join[best][c]
    assert L.leq(L.meet[best][a], b), "no largest residual: lattice not distributive?"
    return best


def all_tables(L: FinLattice):
    'Every function L x L -> L, monotonicity not assumed.'
    import itertools

    for flat in itertools.product(range(L.n), repeat=L.n * L.n):
        yield tuple(tuple(flat[a * L.n + b] for b in range(L.n)) for a in range(L.n))


@pytest.fixture
def chain2():
    return chain(2)


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def sq():
    return square()


@pytest.fixture(params=["point", "chain2", "chain3", "chain4", "square"])
def small_lattice(request):
    return {
        "point": chain(1),
        "chain2": chain(2),
        "chain3": chain(3),
        "chain4": chain(4),
        "square": square(),
    }[request.param]
