from __future__ import annotations

import pytest
from conftest import all_tables, brute_closed, brute_is_implication, brute_open

from impbench.errors import Diagnostic, SelfCheckError
from impbench.fixtures import boolean_lattice, chain, square, square_bottom, square_top
from impbench.implication import (
    Implication,
    classify,
    enumerate_implications,
    heyting,
    iter_implications,
    iter_tables,
    lift_left_inverse,
    lift_wbi,
    transport,
    trivial,
    validate_implication,
    wbi_cores,
    wbi_decompose,
    wbi_from_core,
)
from impbench.lattice import MonotoneMap


# -- validation against the raw definition ----------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_validation_agrees_with_brute_sweep(n):
    L = chain(n)
    for t in all_tables(L):
        expected = brute_is_implication(L, t)
        try:
            validate_implication(L, t)
            got = True
        except Diagnostic:
            got = False
        assert got == expected, t


def test_validation_rejects_broken_diagonal():
    L = chain(2)
    with pytest.raises(Diagnostic):
        validate_implication(L, ((1, 1), (0, 0)))


def test_trivial_and_heyting_are_valid(small_lattice):
    L = small_lattice
    t = trivial(L)
    assert all(v == L.top for row in t.table for v in row)
    h = heyting(L)
    validate_implication(L, h.table)


def test_value_lookup_uses_names():
    imp = heyting(chain(3))
    assert imp.value("1", "m") == "m"
    assert imp.value("0", "0") == "1"


# -- classification against the quantified definitions ----------------------


@pytest.mark.parametrize("n", [2, 3])
def test_flags_match_brute_definitions_on_chains(n):
    L = chain(n)
    for imp in enumerate_implications(L):
        cls = classify(imp)
        assert cls.open == brute_open(L, imp.table)
        assert cls.closed == brute_closed(L, imp.table)
        assert cls.weakly_boolean == (cls.open and cls.closed)


def test_flags_match_brute_definitions_on_square():
    L = square()
    for imp in enumerate_implications(L):
        cls = classify(imp)
        assert cls.open == brute_open(L, imp.table)
        assert cls.closed == brute_closed(L, imp.table)


def test_heyting_is_open_and_trivial_is_everything(chain3):
    h = classify(heyting(chain3))
    assert h.open and not h.closed
    t = classify(trivial(chain3))
    assert t.open and t.closed and t.weakly_boolean
    assert t.core == "1"


def test_open_tables_dominate_heyting(chain3):
    h = heyting(chain3).table
    for imp in enumerate_implications(chain3, "open"):
        for a in range(3):
            for b in range(3):
                assert chain3.leq(h[a][b], imp.table[a][b])


# -- frozen enumeration counts ----------------------------------------------

# chains swept raw for n <= 3; larger counts are regressions over the
# enumerator after its two axiom routes were compared at those sizes
CHAIN_COUNTS = {1: 1, 2: 2, 3: 9, 4: 64, 5: 625}


@pytest.mark.parametrize("n", sorted(CHAIN_COUNTS))
def test_chain_enumeration_counts(n):
    assert len(enumerate_implications(chain(n))) == CHAIN_COUNTS[n]


def test_square_enumeration_counts(sq):
    found = enumerate_implications(sq)
    assert len(found) == 169
    assert sum(classify(i).open for i in found) == 4
    assert sum(classify(i).closed for i in found) == 4
    assert sum(classify(i).weakly_boolean for i in found) == 4


def test_chain3_flag_counts(chain3):
    found = enumerate_implications(chain3)
    assert sum(classify(i).open for i in found) == 6
    assert sum(classify(i).closed for i in found) == 3
    assert sum(classify(i).weakly_boolean for i in found) == 2


def test_filtered_enumeration_matches_unfiltered_subset(chain3):
    swept = {i.flat() for i in enumerate_implications(chain3) if classify(i).closed}
    fast = {i.flat() for i in enumerate_implications(chain3, "closed")}
    assert swept == fast


def test_filtered_enumeration_reaches_past_the_plain_guard():
    B = boolean_lattice("pqr")  # 8 elements: unfiltered is out of reach
    for kind in ("open", "closed", "wbi"):
        assert len(enumerate_implications(B, kind)) == 8


def test_plain_guard_trips():
    B = boolean_lattice("pqr")
    with pytest.raises(Diagnostic, match="size-guard-exceeded"):
        enumerate_implications(B)


def test_cap_trips():
    with pytest.raises(Diagnostic, match="size-guard-exceeded"):
        enumerate_implications(chain(4), cap=10)


def test_callable_predicate():
    found = enumerate_implications(chain(3), lambda i: i.neg(2) == 1)
    assert all(i.table[2][0] == 1 for i in found)
    assert len(found) == 3


def test_iter_tables_modes_agree(sq):
    assert set(iter_tables(sq, "primary")) == set(iter_tables(sq, "alternate"))


# -- cores and decomposition ------------------------------------------------


def test_wbi_cores_of_fixture_lattices():
    assert len(wbi_cores(chain(3))) == 2
    assert len(wbi_cores(square())) == 4
    assert len(wbi_cores(square_top())) == 2
    assert len(wbi_cores(square_bottom())) == 4


def test_wbi_from_core_round_trips(sq):
    for m in wbi_cores(sq):
        imp = wbi_from_core(sq, m)
        dec = wbi_decompose(imp)
        assert dec.core == m
        assert wbi_from_core(sq, dec.core) == imp


def test_wbi_from_core_refuses_non_boolean_interval():
    L = square_top()
    with pytest.raises(Diagnostic, match="interval-not-boolean"):
        wbi_from_core(L, L.index("x"))


def test_wbi_negation_is_an_involution_above_the_core(sq):
    for m in wbi_cores(sq):
        dec = wbi_decompose(wbi_from_core(sq, m))
        for a in sq.interval(m, sq.top):
            assert dec.negation[dec.negation[a]] == a


def test_decompose_refuses_one_sided_tables(chain3):
    h = heyting(chain3)
    with pytest.raises(Diagnostic):
        wbi_decompose(h)


# -- transport and lifting --------------------------------------------------


def test_transport_along_identity_is_identity(chain3):
    ident = MonotoneMap(chain3, chain3, (0, 1, 2))
    h = heyting(chain3)
    out = transport(ident, ident, h)
    assert out.implication == h
    assert out.open_transferred


def test_transport_refuses_non_meet_preserving_outer_map():
    L, K = chain(3), chain(2)
    f = MonotoneMap(K, L, (0, 2))
    g_bad = MonotoneMap(L, K, (0, 0, 0))  # drops the top: empty meet breaks
    with pytest.raises(Diagnostic, match="g-not-meet-preserving"):
        transport(f, g_bad, heyting(L))


def test_transport_section_retraction_keeps_wbi_flags():
    L, K = chain(3), chain(2)
    f = MonotoneMap(K, L, (0, 2))
    g = MonotoneMap(L, K, (0, 0, 1))
    out = transport(f, g, trivial(L))
    assert classify(out.implication).weakly_boolean


def test_lift_left_inverse_round_trips_the_section():
    L, K = chain(3), chain(2)
    f = MonotoneMap(K, L, (0, 2))
    g = MonotoneMap(L, K, (0, 0, 1))
    lifted = lift_left_inverse(f, g, trivial(K))
    assert classify(lifted).open


def test_lift_left_inverse_checks_the_identity():
    L = chain(3)
    f = MonotoneMap(L, L, (0, 1, 2))
    g = MonotoneMap(L, L, (0, 0, 2))
    with pytest.raises(Diagnostic, match="gf-not-identity"):
        lift_left_inverse(f, g, trivial(L))


def test_lift_wbi_along_a_collapse():
    L, K = square(), chain(2)
    f = MonotoneMap(L, K, {"{}": "0", "{x}": "0", "{y}": "1", "{x,y}": "1"})
    for m in wbi_cores(L):
        out = lift_wbi(f, wbi_from_core(L, m))
        assert classify(out).weakly_boolean


def test_lift_wbi_requires_a_wbi_source(chain3):
    ident = MonotoneMap(chain3, chain3, (0, 1, 2))
    with pytest.raises(Diagnostic):
        lift_wbi(ident, heyting(chain3))
