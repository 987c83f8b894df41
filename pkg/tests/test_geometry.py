from __future__ import annotations

import pytest

from impbench.errors import Diagnostic
from impbench.fixtures import (
    discrete,
    discrete2_category,
    discrete3_injective_category,
    point_category,
    sierpinski,
    sierpinski_category,
)
from impbench.geometry import (
    FiberAssignment,
    SpaceCategory,
    canonical_fibers,
    category_props,
    enumerate_geometric,
    full_local_category,
    is_geometric,
)
from impbench.implication import heyting, trivial
from impbench.topology import ContinuousMap, open_lattice


def test_category_must_contain_identities():
    X = discrete("ab")
    with pytest.raises(Diagnostic, match="not-a-category"):
        SpaceCategory((X,), ())


def test_category_must_close_under_composition():
    X = point_category().objects
    # drop a composite from the full category on the sierpinski subspaces
    S = sierpinski_category()
    maps = tuple(f for f in S.maps if not (f.source.n == 0 and f.target.n == 2))
    with pytest.raises(Diagnostic, match="not-a-category"):
        SpaceCategory(S.objects, maps)


def test_full_local_category_shapes():
    S = discrete2_category()
    assert len(S.objects) == 4  # empty, two points, the whole space
    props = category_props(S)
    assert props.local and props.has_terminal


def test_category_props_accept_the_no_empty_variant():
    S = full_local_category([discrete("ab")], include_empty=False)
    assert len(S.objects) == 3
    assert category_props(S).local


def test_fiber_assignment_requires_every_object():
    S = point_category()
    with pytest.raises(Diagnostic, match="fiber-index-mismatch"):
        FiberAssignment(S, {})


def test_fiber_assignment_dedups():
    S = point_category()
    fibers = {X: [trivial(open_lattice(X)), trivial(open_lattice(X))] for X in S.objects}
    A = FiberAssignment(S, fibers)
    assert all(len(A.fibers[X]) == 1 for X in S.objects)


def test_all_trivial_assignment_is_geometric():
    S = sierpinski_category()
    fibers = {X: [trivial(open_lattice(X))] for X in S.objects}
    assert is_geometric(S, FiberAssignment(S, fibers)).ok


def test_heyting_over_trivial_base_is_not_geometric():
    S = discrete2_category()
    big = next(X for X in S.objects if X.n == 2)
    fibers = {X: [trivial(open_lattice(X))] for X in S.objects}
    fibers[big] = [heyting(open_lattice(big))]
    res = is_geometric(S, FiberAssignment(S, fibers))
    assert not res.ok and res.witness is not None


def test_canonical_kinds_on_the_point_category():
    S = point_category()
    for kind in ("t", "b", "bt"):
        A = canonical_fibers(S, kind)
        assert is_geometric(S, A).ok


def test_canonical_rejects_unknown_kind():
    with pytest.raises(Diagnostic, match="precondition-violated|bad-input"):
        canonical_fibers(point_category(), "zz")


def test_enumerate_geometric_counts():
    assert len(enumerate_geometric(point_category())) == 3
    assert len(enumerate_geometric(sierpinski_category())) == 1
    assert len(enumerate_geometric(discrete2_category())) == 4


def test_enumeration_with_and_without_reduction_agree():
    S = point_category()
    fast = {A.signature() for A in enumerate_geometric(S)}
    slow = {A.signature() for A in enumerate_geometric(S, reduce=False)}
    assert fast == slow


def test_discrete2_enumeration_contains_the_named_kinds():
    S = discrete2_category()
    sigs = {A.signature() for A in enumerate_geometric(S)}
    for kind in ("t", "b", "bt", "a"):
        assert canonical_fibers(S, kind).signature() in sigs


def test_core_families_grow_strictly():
    S = discrete3_injective_category()
    prev = None
    for k in range(3):
        A = canonical_fibers(S, f"c{k}")
        assert is_geometric(S, A).ok
        sizes = {X: set(A.fibers[X]) for X in S.objects}
        if prev is not None:
            assert all(prev[X] <= sizes[X] for X in S.objects)
            assert any(prev[X] < sizes[X] for X in S.objects)
        prev = sizes


def test_core_kind_preconditions():
    with pytest.raises(Diagnostic, match="precondition-violated"):
        canonical_fibers(sierpinski_category(), "c1")  # objects not discrete
    with pytest.raises(Diagnostic, match="precondition-violated"):
        canonical_fibers(discrete2_category(), "c0")  # collapses are not injective
