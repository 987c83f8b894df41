from __future__ import annotations

import pytest
from conftest import brute_heyting

from impbench.errors import Diagnostic
from impbench.fixtures import chain, square
from impbench.implication import classify, heyting, trivial
from impbench.lattice import MonotoneMap
from impbench.represent import (
    CHECK_NAMES,
    AdjointData,
    build_representation,
    implication_from_adjoints,
    join_preserving_endomaps,
    monotone_endomaps,
    nabla_implication,
)


def _identity_data(L):
    ident = MonotoneMap(L, L, tuple(range(L.n)))
    return AdjointData(L, ident, ident)


def test_adjoint_data_requires_join_preservation():
    L = chain(3)
    shift = MonotoneMap(L, L, (1, 1, 2))  # moves the bottom
    ident = MonotoneMap(L, L, (0, 1, 2))
    with pytest.raises(Diagnostic, match="nabla-not-join-preserving"):
        AdjointData(L, shift, ident)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_identity_data_yields_the_heyting_table(n):
    L = chain(n)
    imp = implication_from_adjoints(_identity_data(L))
    assert imp.table == heyting(L).table


def test_identity_data_on_the_square_is_heyting():
    L = square()
    imp = implication_from_adjoints(_identity_data(L))
    assert imp.table == heyting(L).table


def test_constant_maps_yield_the_trivial_table():
    L = chain(3)
    bottom = MonotoneMap(L, L, (0, 0, 0))
    top = MonotoneMap(L, L, (2, 2, 2))
    imp = implication_from_adjoints(AdjointData(L, bottom, top))
    assert imp.table == trivial(L).table


def _right_adjoint_table(L, f):
    'b |-> largest a with f(a) <= b, straight from the order.'
    out = []
    for b in range(L.n):
        best = L.bottom
        for a in range(L.n):
            if L.leq(f(a), b):
                best = L.join[best][a]
        out.append(best)
    return out


def test_nabla_implication_is_the_identity_f_case():
    L = chain(3)
    cap = MonotoneMap(L, L, (0, 1, 1))
    via_nabla = nabla_implication(L, cap)
    ident = MonotoneMap(L, L, (0, 1, 2))
    assert via_nabla.table == implication_from_adjoints(AdjointData(L, cap, ident)).table


def test_nabla_implication_against_an_independent_route():
    L = square()
    for flat in [(0, 0, 0, 0), (0, 1, 2, 3), (0, 0, 2, 2)]:
        nab = MonotoneMap(L, L, flat)
        delta = _right_adjoint_table(L, nab)
        expected = tuple(
            tuple(delta[brute_heyting(L, a, b)] for b in range(L.n)) for a in range(L.n)
        )
        assert nabla_implication(L, nab).table == expected


def test_nabla_without_right_adjoint_is_refused():
    L = chain(3)
    with pytest.raises(Diagnostic, match="no-right-adjoint"):
        nabla_implication(L, MonotoneMap(L, L, (1, 1, 2)))


def test_check_names_are_stable():
    assert CHECK_NAMES == (
        "lattice-embedding",
        "neighbourhood-membership",
        "j-compatibility",
        "diamond-complement",
        "arrow-preservation",
        "open-frame-condition",
    )


def test_representation_of_identity_data_on_chain3():
    L = chain(3)
    rep = build_representation(_identity_data(L))
    assert len(rep.filters) == 2
    assert all(ok for _, ok in rep.checks)
    assert dict(rep.checks).keys() == set(CHECK_NAMES)
    # the embedded table is the heyting one transported along the embedding
    assert classify(rep.algebra.implication).open


def test_representation_of_square_has_two_incomparable_points():
    L = square()
    rep = build_representation(_identity_data(L))
    assert len(rep.filters) == 2
    K = rep.frame
    assert not K.up[0] >> 1 & 1 or not K.up[1] >> 0 & 1


def test_representation_accepts_a_precomputed_table():
    L = chain(3)
    D = _identity_data(L)
    rep = build_representation(D, implication_from_adjoints(D))
    assert all(ok for _, ok in rep.checks)


def test_representation_rejects_a_mismatched_table():
    L = chain(3)
    with pytest.raises(Diagnostic, match="table-mismatch"):
        build_representation(_identity_data(L), trivial(L))


def test_endomap_generators_cover_known_counts():
    L = chain(3)
    monos = list(monotone_endomaps(L))
    assert len(monos) == 10  # weakly increasing maps of a 3 element chain
    joins = list(join_preserving_endomaps(L))
    assert len(joins) == 6
    for f in joins:
        assert f(L.bottom) == L.bottom


def test_full_sweep_on_chain2_never_raises():
    L = chain(2)
    for nab in join_preserving_endomaps(L):
        for F in monotone_endomaps(L):
            rep = build_representation(AdjointData(L, nab, F))
            assert all(ok for _, ok in rep.checks)
