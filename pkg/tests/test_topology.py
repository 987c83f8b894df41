from __future__ import annotations

import pytest

from impbench.errors import Diagnostic
from impbench.fixtures import discrete, empty_space, indiscrete, point_space, sierpinski
from impbench.implication import classify, enumerate_implications, heyting, trivial
from impbench.topology import (
    ContinuousMap,
    FinSpace,
    StrongSpace,
    classify_map,
    classify_space,
    enumerate_topologies,
    image_adjoints,
    localizability,
    open_lattice,
    preimage_map,
    restrict_implication,
    strong_under,
    subspace,
    wbs_enumerate,
    wbs_from_core,
)


def test_rejects_family_not_closed_under_union():
    with pytest.raises(Diagnostic, match="not-a-topology"):
        FinSpace("abc", [0b000, 0b001, 0b010, 0b111])


def test_rejects_missing_whole_set():
    with pytest.raises(Diagnostic, match="not-a-topology"):
        FinSpace("ab", [0b00, 0b01])


def test_opens_are_canonically_sorted():
    X = FinSpace("ab", [0b11, 0b00, 0b01])
    assert X.opens == (0b00, 0b01, 0b11)
    assert [X.open_name(m) for m in X.opens] == ["{}", "{a}", "{a,b}"]


def test_closeds_complement_opens():
    X = sierpinski()
    assert set(X.closeds()) == {0b00, 0b10, 0b11}
    assert X.is_closed(0b10) and not X.is_open(0b10)


def test_empty_space_is_allowed():
    X = empty_space()
    assert X.n == 0 and X.opens == (0,)
    cls = classify_space(X)
    assert cls.discrete and cls.indiscrete and cls.locally_indiscrete


def test_open_lattice_of_sierpinski_is_the_three_chain():
    L = open_lattice(sierpinski())
    assert L.elements == ("{}", "{a}", "{a,b}")
    assert L.leq(0, 1) and L.leq(1, 2) and not L.leq(2, 1)


# -- frozen inventories; the 0..4 point counts are the classical ones -------

LABELED = {0: 1, 1: 1, 2: 4, 3: 29, 4: 355}
UP_TO_ISO = {0: 1, 1: 1, 2: 3, 3: 9, 4: 33}


@pytest.mark.parametrize("n", sorted(LABELED))
def test_topology_inventory_counts(n):
    pts = "wxyz"[:n]
    assert len(enumerate_topologies(pts)) == LABELED[n]
    assert len(enumerate_topologies(pts, up_to_iso=True)) == UP_TO_ISO[n]


def test_topology_inventory_guard():
    with pytest.raises(Diagnostic, match="size-guard-exceeded"):
        enumerate_topologies("abcde")


# -- space classification ---------------------------------------------------


def test_space_flags_on_the_named_spaces():
    s = classify_space(sierpinski())
    assert s.t0 and not s.discrete and not s.hausdorff and not s.locally_indiscrete
    i = classify_space(indiscrete("ab"))
    assert i.indiscrete and i.locally_indiscrete and not i.t0
    d = classify_space(discrete("ab"))
    assert d.discrete and d.hausdorff and d.locally_indiscrete and d.t0


def test_hausdorff_equals_discrete_on_small_spaces():
    for X in enumerate_topologies("xyz"):
        cls = classify_space(X)
        assert cls.hausdorff == cls.discrete


def test_point_space_is_irreducible_both_ways():
    cls = classify_space(point_space())
    assert cls.open_irreducible and cls.closed_irreducible
    two = classify_space(discrete("ab"))
    assert not two.open_irreducible and not two.closed_irreducible


# -- maps -------------------------------------------------------------------


def test_discontinuous_map_is_rejected():
    X, Y = discrete("ab"), sierpinski()
    ContinuousMap(X, Y, {"a": "a", "b": "b"})  # fine: source is discrete
    with pytest.raises(Diagnostic, match="discontinuous"):
        ContinuousMap(indiscrete("ab"), Y, {"a": "a", "b": "b"})


def test_subspace_inclusion_is_an_embedding():
    X = sierpinski()
    A, incl = subspace(X, 0b10)
    assert A.points == ("b",)
    assert classify_map(incl).embedding
    cls = classify_map(incl)
    assert cls.closed and not cls.open  # {b} is closed, not open


def test_classify_map_flags_on_a_collapse():
    X = discrete("ab")
    f = ContinuousMap(X, point_space(), {"a": "p", "b": "p"})
    cls = classify_map(f)
    assert cls.surjective and not cls.injective
    assert cls.open and cls.closed and not cls.embedding


def test_preimage_map_is_monotone_and_tracks_preimages():
    X = sierpinski()
    incl = subspace(X, 0b01)[1]
    g = preimage_map(incl)
    LY, LX = open_lattice(X), open_lattice(incl.source)
    for k, v in enumerate(LY.elements):
        assert LX.elements[g(k)] == LY.elements[k].replace(",b", "").replace("b", "")


def test_image_adjoints_exist_per_side():
    X = sierpinski()
    open_incl = subspace(X, 0b01)[1]
    pair = image_adjoints(open_incl)
    pre = preimage_map(open_incl)
    LA, LX = open_lattice(open_incl.source), open_lattice(X)
    assert pair.upper is None  # the open point is not closed
    for u in range(LA.n):
        for v in range(LX.n):
            assert LX.leq(pair.lower(u), v) == LA.leq(u, pre(v))

    closed_incl = subspace(X, 0b10)[1]
    pair = image_adjoints(closed_incl)
    pre = preimage_map(closed_incl)
    LB, LX = open_lattice(closed_incl.source), open_lattice(X)
    assert pair.lower is None  # the closed point is not open
    for u in range(LB.n):
        for v in range(LX.n):
            assert LB.leq(pre(v), u) == LX.leq(v, pair.upper(u))


# -- strong structures ------------------------------------------------------


def test_wbs_from_core_on_sierpinski_matches_the_formula():
    X = sierpinski()
    S = wbs_from_core(X, "a")
    full, a = 0b11, 0b01
    for u in X.opens:
        for v in X.opens:
            assert S.arrow(u, v) == ((full & ~u) | v | a)


def test_wbs_core_must_be_open():
    with pytest.raises(Diagnostic, match="core-invalid"):
        wbs_from_core(sierpinski(), 0b10)


def test_wbs_core_needs_locally_indiscrete_complement():
    with pytest.raises(Diagnostic, match="core-invalid"):
        wbs_from_core(sierpinski(), 0)


def test_wbs_enumerate_on_fixed_spaces():
    X = sierpinski()
    assert [X.open_name(m) for m, _ in wbs_enumerate(X)] == ["{a}", "{a,b}"]
    D = discrete("ab")
    assert [D.open_name(m) for m, _ in wbs_enumerate(D)] == ["{}", "{a}", "{b}", "{a,b}"]


def test_localizability_flags_follow_classification():
    X = sierpinski()
    L = open_lattice(X)
    for imp in enumerate_implications(L):
        cls = classify(imp)
        S = StrongSpace(X, imp)
        assert localizability(S, "open").ok == cls.open
        assert localizability(S, "closed").ok == cls.closed


def test_localizability_witness_names_a_failing_region():
    X = sierpinski()
    L = open_lattice(X)
    bad = next(
        imp for imp in enumerate_implications(L) if not classify(imp).open
    )
    res = localizability(StrongSpace(X, bad), "open")
    assert not res.ok and res.witness is not None
    z = res.witness[0]
    assert z in [X.open_name(m) for m in X.opens]


def test_restriction_of_a_wbs_is_the_wbs_of_the_trace():
    X = sierpinski()
    S = wbs_from_core(X, "a")
    R = restrict_implication(S, 0b01)
    assert R.space.points == ("a",)
    assert classify(R.imp).weakly_boolean


def test_restriction_refuses_an_unlocalizable_region():
    X = sierpinski()
    L = open_lattice(X)
    bad = next(imp for imp in enumerate_implications(L) if not classify(imp).open)
    S = StrongSpace(X, bad)
    res = localizability(S, "open")
    z = next(m for m in X.opens if X.open_name(m) == res.witness[0])
    with pytest.raises(Diagnostic, match="non-liftable"):
        restrict_implication(S, z)


def test_strong_under_identity_and_not_under_a_twist():
    X = discrete("ab")
    L = open_lattice(X)
    cores = dict(wbs_enumerate(X))
    Sa = StrongSpace(X, cores[X.point_mask("a")].imp)
    Sb = StrongSpace(X, cores[X.point_mask("b")].imp)
    ident = ContinuousMap(X, X, {"a": "a", "b": "b"})
    swap = ContinuousMap(X, X, {"a": "b", "b": "a"})
    assert strong_under(ident, Sa, Sa)
    assert not strong_under(ident, Sa, Sb)
    assert strong_under(swap, Sa, Sb)
