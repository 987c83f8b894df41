from __future__ import annotations

import pytest

from impbench.errors import Diagnostic
from impbench.fixtures import chain, closed_frame_kl, open_frame_kl, tiny_b_frame
from impbench.implication import classify, heyting
from impbench.knframe import (
    KNFrame,
    compatible_relations,
    enumerate_posets,
    find_fullify_flag_loss,
    frame_algebra,
    frame_class,
    fullify,
    modal_operators,
    standard_frame,
)

CHAIN2 = [[1, 1], [0, 1]]


def standard_arrow(K, u: int, v: int) -> int:
    'Independent route: x is in U -> V iff every R-successor in U is in V.'
    n = len(K.points)
    out = 0
    for x in range(n):
        if all(not (K.succ[x] >> y & 1 and u >> y & 1) or v >> y & 1 for y in range(n)):
            out |= 1 << x
    return out


def test_order_compatibility_is_enforced():
    # k <= l and l R k force k R k
    with pytest.raises(Diagnostic, match="r-not-compatible") as exc:
        standard_frame("kl", CHAIN2, [("l", "k")])
    assert exc.value.witness == ("k", "l", "k")


def test_neighbourhoods_must_be_upsets_in_b():
    with pytest.raises(Diagnostic, match="n-value-illegal"):
        KNFrame("kl", CHAIN2, [], [0, 0b01, 0b11], [[0b01], []])


def test_b_must_be_closed_under_complement():
    with pytest.raises(Diagnostic, match="b-not-closed"):
        KNFrame("kl", CHAIN2, [], [0, 0b10, 0b11], [[], []])


def test_modal_operators_on_the_closed_example():
    K = closed_frame_kl()
    dia, j = modal_operators(K, 0b01)  # {k}
    assert dia == 0b11  # both points reach k
    assert j is None  # not an upset, so j is undefined
    _, j_full = modal_operators(K, 0b11)
    assert j_full == 0b11


def test_standard_frame_j_is_identity_on_upsets():
    K = open_frame_kl()
    for u in K.upsets_in_b():
        assert K.j(u) == u


def test_closed_example_table_against_the_direct_route():
    K = closed_frame_kl()
    alg = frame_algebra(K)
    for u in K.upsets_in_b():
        for v in K.upsets_in_b():
            assert alg.arrow(u, v) == standard_arrow(K, u, v)
    assert alg.arrow(0b11, 0b10) == 0  # whole carrier to {l} collapses
    cls = classify(alg.implication)
    assert cls.closed and not cls.open


def test_order_as_r_gives_the_heyting_table():
    alg = frame_algebra(open_frame_kl())
    L = alg.implication.lattice
    assert alg.implication.table == heyting(L).table


def test_empty_r_gives_the_trivial_table_with_both_flags():
    K = standard_frame("kl", CHAIN2, [])
    alg = frame_algebra(K)
    top = alg.implication.lattice.top
    assert all(v == top for row in alg.implication.table for v in row)
    fc = frame_class(K)
    assert fc.open_frame and fc.closed_frame


def test_frame_class_flags_on_the_two_named_examples():
    closed = frame_class(closed_frame_kl())
    assert closed.closed_frame and not closed.open_frame
    assert closed.witnesses["open_frame"] is not None
    opened = frame_class(open_frame_kl())
    assert opened.open_frame and not opened.closed_frame


def test_standard_frame_class_sweep_matches_r_shape():
    pts = "kl"
    for leq in enumerate_posets(pts):
        up = [sum(1 << j for j in range(2) if leq[i][j]) for i in range(2)]
        for R in compatible_relations(pts, leq):
            K = standard_frame(pts, leq, sorted(R))
            fc = frame_class(K)
            if all(up[i] >> j & 1 for i, j in R):
                assert fc.open_frame
            if all(up[j] >> i & 1 for i, j in R):
                assert fc.closed_frame


def test_fullify_fixes_standard_frames():
    K = open_frame_kl()
    full = fullify(K)
    assert full.N == K.N and full.B == K.B


def test_fullify_preserves_the_table_on_shared_upsets():
    K = tiny_b_frame()
    before = frame_algebra(K)
    after = frame_algebra(fullify(K))
    shared = K.upsets_in_b()
    for u in shared:
        for v in shared:
            assert before.arrow(u, v) == after.arrow(u, v)


def test_fullify_can_lose_both_flags():
    K, before, after = find_fullify_flag_loss()
    assert before.open_frame and before.closed_frame
    assert not after.open_frame and not after.closed_frame
    assert not K.is_full()


def test_hand_example_also_loses_flags():
    K = tiny_b_frame()
    b = frame_class(K)
    a = frame_class(fullify(K))
    assert b.open_frame and b.closed_frame
    assert not a.open_frame and not a.closed_frame


def test_is_standard_and_is_full():
    assert open_frame_kl().is_standard()
    assert open_frame_kl().is_full()
    assert not tiny_b_frame().is_full()


def test_poset_inventory_counts():
    assert len(enumerate_posets("a")) == 1
    assert len(enumerate_posets("ab")) == 3
    assert len(enumerate_posets("abc")) == 19
