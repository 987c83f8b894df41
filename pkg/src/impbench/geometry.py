"""Categories of finite spaces and geometric fiber assignments.

A category here is a concrete list of spaces and continuous maps
closed under identity and composition.  A fiber assignment equips each
object with a nonempty set of implications over its open-set lattice;
it is geometric when every map can pull every target fiber element
back to some source fiber element.  The enumerator reproduces the
small classification experiments exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Diagnostic, SelfCheckError
from .implication import Implication, classify, enumerate_implications, trivial
from .topology import (
    ContinuousMap,
    FinSpace,
    StrongSpace,
    classify_space,
    localizability,
    open_lattice,
    restrict_implication,
    subspace,
    wbs_enumerate,
    wbs_from_core,
)

FIBER_UNIVERSE_CAP = 4096
ASSIGNMENT_CAP = 1 << 20


class SpaceCategory:
    'Spaces and maps, with identities and composites verified present.'

    def __init__(self, objects, maps):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise Diagnostic("bad-input", "duplicate objects")
        self.maps = tuple(maps)
        have = {(f.source, f.target, f.table) for f in self.maps}
        for X in self.objects:
            ident = tuple(range(X.n))
            if (X, X, ident) not in have:
                raise Diagnostic("not-a-category", "missing identity", X)
        obj = set(self.objects)
        for f in self.maps:
            if f.source not in obj or f.target not in obj:
                raise Diagnostic("not-a-category", "map endpoint is not an object", f)
        for f in self.maps:
            for g in self.maps:
                if f.target != g.source:
                    continue
                comp = tuple(g.table[i] for i in f.table)
                if (f.source, g.target, comp) not in have:
                    raise Diagnostic(
                        "not-a-category", "composite is missing", (f, g)
                    )

    def maps_from(self, X: FinSpace):
        return [f for f in self.maps if f.source == X]

    def __repr__(self):
        return f"SpaceCategory({len(self.objects)} objects, {len(self.maps)} maps)"


def _all_point_maps(X: FinSpace, Y: FinSpace, injective: bool):
    if X.n == 0:
        yield ()
        return
    if Y.n == 0:
        return
    pool = (
        itertools.permutations(range(Y.n), X.n)
        if injective
        else itertools.product(range(Y.n), repeat=X.n)
    )
    yield from pool


def full_local_category(
    generators, include_empty: bool = True, maps: str = "all"
) -> SpaceCategory:
    """The category of all subspaces of the generators.

    With `maps="all"` every continuous map between objects is included,
    with `"injective"` only the injective ones.  The empty subspace is
    an object by default; dropping it does not change the
    classification experiments.
    """
    if maps not in ("all", "injective"):
        raise Diagnostic("bad-input", "maps must be all or injective", maps)
    objects = []
    for g in generators:
        for mask in range(1 << g.n):
            if mask == 0 and not include_empty:
                continue
            sub, _ = subspace(g, mask)
            if sub not in objects:
                objects.append(sub)
    objects.sort(key=lambda X: (X.n, X.points, X.opens))
    arrows = []
    for X in objects:
        for Y in objects:
            for table in _all_point_maps(X, Y, maps == "injective"):
                try:
                    arrows.append(ContinuousMap(X, Y, table))
                except Diagnostic:
                    continue
    return SpaceCategory(objects, arrows)


@dataclass(frozen=True)
class CategoryProps:
    local: bool
    local_witness: tuple | None
    has_terminal: bool
    full_objects: tuple[FinSpace, ...]


def category_props(S: SpaceCategory) -> CategoryProps:
    """Locality, terminal object, and fullness flags.

    Locality asks for every subspace of every object (by point
    identity) to be an object, with its inclusion map present.
    """
    obj = set(S.objects)
    have = {(f.source, f.target, f.table) for f in S.maps}

    # Whether a local category must contain the empty subspace is left
    # open; it counts as local either way, as long as the empty space,
    # when present, has its inclusions.
    has_empty = any(X.n == 0 for X in S.objects)
    local = bool(S.objects)
    witness = None if local else ("empty-category",)
    for X in S.objects:
        if witness:
            break
        for mask in range(1 << X.n):
            if mask == 0 and not has_empty:
                continue
            sub, incl = subspace(X, mask)
            if sub not in obj:
                witness = (X, sub, "missing-subspace")
                break
            if (incl.source, incl.target, incl.table) not in have:
                witness = (X, sub, "missing-inclusion")
                break
    local = witness is None and bool(S.objects)

    terminal = False
    for T in S.objects:
        if all(
            sum(1 for f in S.maps if f.source == X and f.target == T) == 1
            for X in S.objects
        ):
            terminal = True
            break

    full_objects = []
    for Y in S.objects:
        ok = True
        for X in S.objects:
            for table in _all_point_maps(X, Y, False):
                try:
                    f = ContinuousMap(X, Y, table)
                except Diagnostic:
                    continue
                if (f.source, f.target, f.table) not in have:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            full_objects.append(Y)

    return CategoryProps(local, witness, terminal, tuple(full_objects))


# -- fiber assignments ------------------------------------------------------


class FiberAssignment:
    'Nonempty implication fibers indexed by the objects of a category.'

    def __init__(self, category: SpaceCategory, fibers):
        self.category = category
        out = {}
        for X in category.objects:
            if X not in fibers:
                raise Diagnostic("fiber-index-mismatch", "object without a fiber", X)
            imps = tuple(sorted(set(fibers[X]), key=lambda im: im.flat()))
            if not imps:
                raise Diagnostic("fiber-index-mismatch", "empty fiber", X)
            L = open_lattice(X)
            for im in imps:
                if im.lattice != L:
                    raise Diagnostic(
                        "fiber-index-mismatch",
                        "table does not live on the object's open lattice",
                        X,
                    )
            out[X] = imps
        if len(fibers) != len(category.objects):
            raise Diagnostic("fiber-index-mismatch", "fiber over a non-object")
        self.fibers = out

    def signature(self):
        return tuple(
            tuple(im.flat() for im in self.fibers[X]) for X in self.category.objects
        )

    def __eq__(self, other):
        return (
            isinstance(other, FiberAssignment)
            and self.category is other.category
            and self.signature() == other.signature()
        )

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        sizes = ", ".join(str(len(self.fibers[X])) for X in self.category.objects)
        return f"FiberAssignment(sizes=[{sizes}])"


def _pulls_back(f: ContinuousMap, imp_x: Implication, imp_y: Implication) -> bool:
    ops_x, ops_y = f.source.opens, f.target.opens
    pre = [ops_x.index(f.preimage(v)) for v in ops_y]
    tx, ty = imp_x.table, imp_y.table
    return all(
        pre[ty[i][j]] == tx[pre[i]][pre[j]]
        for i in range(len(ops_y))
        for j in range(len(ops_y))
    )


@dataclass(frozen=True)
class GeometricityResult:
    ok: bool
    witness: tuple | None  # (map, target implication) with no source partner


def is_geometric(S: SpaceCategory, A: FiberAssignment) -> GeometricityResult:
    'Definition-level check: every map pulls every target fiber element back.'
    if A.category is not S and tuple(A.category.objects) != tuple(S.objects):
        raise Diagnostic("fiber-index-mismatch", "assignment indexed by another category")
    for f in S.maps:
        for imp_y in A.fibers[f.target]:
            if not any(_pulls_back(f, imp_x, imp_y) for imp_x in A.fibers[f.source]):
                return GeometricityResult(False, (f, imp_y))
    return GeometricityResult(True, None)


# -- canonical assignments --------------------------------------------------


def _parse_kind(kind: str):
    if kind in ("t", "b", "bt", "a"):
        return kind, None
    if kind.startswith("c"):
        tail = kind[1:].lstrip("_")
        if tail.isdigit():
            return "c", int(tail)
    raise Diagnostic("bad-input", "unknown fiber kind", kind)


def canonical_fibers(S: SpaceCategory, kind: str, verify: bool = True) -> FiberAssignment:
    """The named assignment families.

    t: trivial only; b: the empty-core table; bt: both; a: every valid
    core; c<n>: cores missing at most n points.  b/bt/a need locally
    indiscrete objects, c<n> needs discrete objects and injective maps.
    """
    base, bound = _parse_kind(kind)
    if base in ("b", "bt", "a"):
        for X in S.objects:
            if not classify_space(X).locally_indiscrete:
                raise Diagnostic(
                    "precondition-violated",
                    "objects must be locally indiscrete for this kind",
                    X,
                )
    if base == "c":
        for X in S.objects:
            if not classify_space(X).discrete:
                raise Diagnostic(
                    "precondition-violated", "objects must be discrete", X
                )
        for f in S.maps:
            if len(set(f.table)) != f.source.n:
                raise Diagnostic(
                    "precondition-violated", "maps must be injective", f
                )

    fibers = {}
    for X in S.objects:
        if base == "t":
            fibers[X] = [trivial(open_lattice(X))]
        elif base == "b":
            fibers[X] = [wbs_from_core(X, 0).imp]
        elif base == "bt":
            fibers[X] = [trivial(open_lattice(X)), wbs_from_core(X, 0).imp]
        elif base == "a":
            fibers[X] = [s.imp for _, s in wbs_enumerate(X)]
        else:
            fibers[X] = [
                s.imp
                for m, s in wbs_enumerate(X)
                if bin(X.full & ~m).count("1") <= bound
            ]
    A = FiberAssignment(S, fibers)
    if verify:
        res = is_geometric(S, A)
        if not res.ok:
            raise SelfCheckError(
                "canonical-not-geometric",
                f"assignment kind {kind} fails geometricity on qualifying input",
                res.witness,
            )
    return A


# -- enumeration ------------------------------------------------------------


def _reduced_universe(X: FinSpace, universe):
    """Drop tables that cannot restrict to some subspace of X.

    Keeps a table only when both localizability checks pass; every
    dropped table must actually be refused by some open or closed
    subspace embedding, keeping the shortcut honest.
    """
    kept = []
    zs = sorted(set(X.opens) | set(X.closeds()))
    for imp in universe:
        S = StrongSpace(X, imp)
        if localizability(S, "open").ok and localizability(S, "closed").ok:
            kept.append(imp)
            continue
        refused = False
        for z in zs:
            try:
                restrict_implication(S, z)
            except Diagnostic:
                refused = True
                break
        if not refused:
            raise SelfCheckError(
                "reduction-witness",
                "a dropped table restricts cleanly to every subspace",
                imp.flat(),
            )
    return kept


def enumerate_geometric(S: SpaceCategory, reduce: bool = True) -> list[FiberAssignment]:
    """Every geometric assignment over the per-object table universes.

    When the category is local the universes are first cut down to the
    tables that restrict to all subspaces; the definition-level check
    still decides every surviving candidate.
    """
    universes = []
    counts = {}
    for X in S.objects:
        uni = enumerate_implications(open_lattice(X))
        counts[X.points] = len(uni)
        if len(uni) > FIBER_UNIVERSE_CAP:
            raise Diagnostic(
                "size-guard-exceeded", "fiber universe too large", counts
            )
        universes.append(uni)

    props = category_props(S)
    if reduce and props.local:
        universes = [
            _reduced_universe(X, uni) for X, uni in zip(S.objects, universes)
        ]

    total = 1
    for uni in universes:
        total *= (1 << len(uni)) - 1
        if total > ASSIGNMENT_CAP:
            raise Diagnostic(
                "size-guard-exceeded",
                "assignment space too large",
                {X.points: len(u) for X, u in zip(S.objects, universes)},
            )

    def nonempty_subsets(uni):
        idx = range(len(uni))
        for r in range(1, len(uni) + 1):
            for pick in itertools.combinations(idx, r):
                yield [uni[i] for i in pick]

    out = []
    for choice in itertools.product(*(list(nonempty_subsets(u)) for u in universes)):
        A = FiberAssignment(S, dict(zip(S.objects, choice)))
        if is_geometric(S, A).ok:
            out.append(A)

    if props.local:
        for A in out:
            for X in S.objects:
                for imp in A.fibers[X]:
                    if not classify(imp).weakly_boolean:
                        raise SelfCheckError(
                            "geometric-not-wbi",
                            "a geometric fiber over a local category holds a non-WBI",
                            X,
                        )
    return out
