"""Finite topological spaces and implications over their open-set lattices.

Opens are bitmasks over the point list.  The open-set lattice of a
space names its elements "{a,b}" style so tables and reports stay
readable; the element order is the canonical subset order (size, then
member indices).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import Diagnostic, SelfCheckError
from .implication import Implication, classify, enumerate_implications, validate_implication
from .lattice import FinLattice, MonotoneMap
from . import subsets


class FinSpace:
    'A finite space: points plus a family of open sets, validated.'

    def __init__(self, points, opens):
        self.points = tuple(str(p) for p in points)
        if len(set(self.points)) != len(self.points):
            raise Diagnostic("bad-input", "duplicate point names", self.points)
        n = len(self.points)
        masks = []
        for o in opens:
            if isinstance(o, int):
                masks.append(o)
            else:
                masks.append(subsets.mask_of(self.points, o))
        masks = set(masks)
        full = (1 << n) - 1
        if 0 not in masks or full not in masks:
            raise Diagnostic("not-a-topology", "the empty set and the full set must be open")
        for u in masks:
            for v in masks:
                if u | v not in masks:
                    raise Diagnostic(
                        "not-a-topology",
                        "opens are not closed under union",
                        (self.open_name(u), self.open_name(v)),
                    )
                if u & v not in masks:
                    raise Diagnostic(
                        "not-a-topology",
                        "opens are not closed under intersection",
                        (self.open_name(u), self.open_name(v)),
                    )
        self.opens = subsets.canonical_sort(masks)
        self.full = full

    @property
    def n(self) -> int:
        return len(self.points)

    def open_name(self, mask: int) -> str:
        return subsets.name_of(self.points, mask)

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.full & ~mask) in self.opens

    def closeds(self) -> tuple[int, ...]:
        return subsets.canonical_sort(self.full & ~u for u in self.opens)

    def point_mask(self, names) -> int:
        return subsets.mask_of(self.points, names)

    def __eq__(self, other):
        return (
            isinstance(other, FinSpace)
            and self.points == other.points
            and self.opens == other.opens
        )

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        return f"FinSpace({list(self.points)}, {len(self.opens)} opens)"


@functools.lru_cache(maxsize=None)
def open_lattice(X: FinSpace) -> FinLattice:
    'The open sets ordered by inclusion, as a validated lattice.'
    names = [X.open_name(u) for u in X.opens]
    leq = [[1 if u & ~v == 0 else 0 for v in X.opens] for u in X.opens]
    return FinLattice(names, leq)


class ContinuousMap:
    'A point mapping whose preimages of opens are open.'

    def __init__(self, source: FinSpace, target: FinSpace, table):
        self.source = source
        self.target = target
        if isinstance(table, dict):
            tgt_idx = {p: i for i, p in enumerate(target.points)}
            table = tuple(tgt_idx[str(table[p])] for p in source.points)
        self.table = tuple(table)
        if len(self.table) != source.n:
            raise Diagnostic("bad-input", "map does not cover the source points")
        for v in target.opens:
            if self.preimage(v) not in source.opens:
                raise Diagnostic(
                    "discontinuous",
                    "preimage of an open is not open",
                    target.open_name(v),
                )

    def preimage(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.table):
            if mask >> j & 1:
                out |= 1 << i
        return out

    def image(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.table):
            if mask >> i & 1:
                out |= 1 << j
        return out

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other):
        return (
            isinstance(other, ContinuousMap)
            and self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.source, self.target, self.table))

    def __repr__(self):
        pairs = ", ".join(
            f"{p}->{self.target.points[j]}" for p, j in zip(self.source.points, self.table)
        )
        return f"ContinuousMap({pairs or 'empty'})"


def preimage_map(f: ContinuousMap) -> MonotoneMap:
    'f inverse as a map between open lattices, target side to source side.'
    LX, LY = open_lattice(f.source), open_lattice(f.target)
    table = tuple(f.source.opens.index(f.preimage(v)) for v in f.target.opens)
    return MonotoneMap(LY, LX, table)


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class MapClass:
    continuous: bool
    injective: bool
    surjective: bool
    open: bool
    closed: bool
    embedding: bool
    open_irreducible: bool
    closed_irreducible: bool


def _space_irreducible(X: FinSpace, family) -> bool:
    'No two disjoint nonempty members; vacuously true when none exist.'
    nonempty = [u for u in family if u]
    return all(u & v for u in nonempty for v in nonempty)


def classify_map(f: ContinuousMap) -> MapClass:
    """Flags for a continuous map.

    Irreducibility is computed from the image-intersection law and
    cross-checked against the fiberwise criterion; a disagreement is an
    internal error.
    """
    X, Y = f.source, f.target
    injective = len(set(f.table)) == X.n
    surjective = set(f.table) == set(range(Y.n))
    open_ = all(f.image(u) in Y.opens for u in X.opens)
    closed = all(Y.is_closed(f.image(k)) for k in X.closeds())
    embedding = injective and {f.preimage(v) for v in Y.opens} == set(X.opens)

    open_irr = open_ and all(
        f.image(u) & f.image(v) == f.image(u & v)
        for u in X.opens
        for v in X.opens
    )
    closed_irr = closed and all(
        f.image(k) & f.image(l) == f.image(k & l)
        for k in X.closeds()
        for l in X.closeds()
    )

    # Fiberwise route: an open (closed) map is open- (closed-)
    # irreducible exactly when each fiber is, as a subspace.
    if open_:
        fibers_ok = all(
            _space_irreducible(*_fiber_opens(f, y)) for y in range(Y.n)
        )
        if fibers_ok != open_irr:
            raise SelfCheckError(
                "irreducibility-routes",
                "image law and fiber criterion disagree (open case)",
                f,
            )
    if closed:
        fibers_ok = all(
            _space_irreducible(*_fiber_closeds(f, y)) for y in range(Y.n)
        )
        if fibers_ok != closed_irr:
            raise SelfCheckError(
                "irreducibility-routes",
                "image law and fiber criterion disagree (closed case)",
                f,
            )

    return MapClass(
        continuous=True,
        injective=injective,
        surjective=surjective,
        open=open_,
        closed=closed,
        embedding=embedding,
        open_irreducible=open_irr,
        closed_irreducible=closed_irr,
    )


def _fiber_opens(f: ContinuousMap, y: int):
    fiber = sum(1 << i for i, j in enumerate(f.table) if j == y)
    sub, _ = subspace(f.source, fiber)
    return sub, sub.opens


def _fiber_closeds(f: ContinuousMap, y: int):
    fiber = sum(1 << i for i, j in enumerate(f.table) if j == y)
    sub, _ = subspace(f.source, fiber)
    return sub, sub.closeds()


@dataclass(frozen=True)
class SpaceClass:
    discrete: bool
    indiscrete: bool
    locally_indiscrete: bool
    t0: bool
    hausdorff: bool
    open_irreducible: bool
    closed_irreducible: bool


def classify_space(X: FinSpace) -> SpaceClass:
    """Flags for a space, with duplicated routes where cheap.

    Local indiscreteness is computed both as "every closed set is open"
    and pointwise; finite Hausdorff must coincide with discrete.
    """
    n = X.n
    discrete = len(X.opens) == 1 << n
    indiscrete = len(X.opens) <= 2

    closed_route = all(k in X.opens for k in X.closeds())
    point_route = all(
        any(
            u >> x & 1 and len(subspace(X, u)[0].opens) <= 2
            for u in X.opens
        )
        for x in range(n)
    )
    if closed_route != point_route:
        raise SelfCheckError(
            "locally-indiscrete-routes",
            "closed-sets-open and pointwise definitions disagree",
            X,
        )

    t0 = all(
        any((u >> x & 1) != (u >> y & 1) for u in X.opens)
        for x in range(n)
        for y in range(x + 1, n)
    )
    hausdorff = all(
        any(
            u >> x & 1 and v >> y & 1 and u & v == 0
            for u in X.opens
            for v in X.opens
        )
        for x in range(n)
        for y in range(x + 1, n)
    )
    if hausdorff != discrete:
        raise SelfCheckError(
            "hausdorff-discrete",
            "finite Hausdorff space that is not discrete (or conversely)",
            X,
        )

    return SpaceClass(
        discrete=discrete,
        indiscrete=indiscrete,
        locally_indiscrete=closed_route,
        t0=t0,
        hausdorff=hausdorff,
        open_irreducible=_space_irreducible(X, X.opens),
        closed_irreducible=_space_irreducible(X, X.closeds()),
    )


# -- direct images ----------------------------------------------------------


@dataclass(frozen=True)
class ImageAdjoints:
    """Direct-image companions of the preimage map, when they exist.

    `lower` sends U to f[U] (present iff f is open) and is left adjoint
    to the preimage; `upper` sends U to the complement of f[U^c]
    (present iff f is closed) and is right adjoint.
    """

    lower: MonotoneMap | None
    upper: MonotoneMap | None


def image_adjoints(f: ContinuousMap) -> ImageAdjoints:
    X, Y = f.source, f.target
    cls = classify_map(f)
    LX, LY = open_lattice(X), open_lattice(Y)
    pre = {v: f.preimage(v) for v in Y.opens}

    lower = None
    if cls.open:
        lower = MonotoneMap(LX, LY, tuple(Y.opens.index(f.image(u)) for u in X.opens))
        for ui, u in enumerate(X.opens):
            for vi, v in enumerate(Y.opens):
                if (u & ~pre[v] == 0) != LY.leq(lower(ui), vi):
                    raise SelfCheckError(
                        "image-adjunction",
                        "f[U] is not left adjoint to the preimage",
                        (X.open_name(u), Y.open_name(v)),
                    )
        meets = all(
            f.image(u & v) == f.image(u) & f.image(v)
            for u in X.opens
            for v in X.opens
        )
        if meets != cls.open_irreducible:
            raise SelfCheckError(
                "irreducibility-adjoint",
                "open-irreducibility does not match meet preservation of f[U]",
                f,
            )

    upper = None
    if cls.closed:
        table = tuple(
            Y.opens.index(Y.full & ~f.image(X.full & ~u)) for u in X.opens
        )
        upper = MonotoneMap(LX, LY, table)
        for ui, u in enumerate(X.opens):
            for vi, v in enumerate(Y.opens):
                if (pre[v] & ~u == 0) != LY.leq(vi, upper(ui)):
                    raise SelfCheckError(
                        "image-adjunction",
                        "co-image is not right adjoint to the preimage",
                        (X.open_name(u), Y.open_name(v)),
                    )
        linear = [Y.full & ~f.image(X.full & ~u) for u in X.opens]
        joins = all(
            linear[X.opens.index(u | v)] == linear[X.opens.index(u)] | linear[X.opens.index(v)]
            for u in X.opens
            for v in X.opens
        )
        if joins != cls.closed_irreducible:
            raise SelfCheckError(
                "irreducibility-adjoint",
                "closed-irreducibility does not match join preservation of the co-image",
                f,
            )

    return ImageAdjoints(lower, upper)


# -- subspaces --------------------------------------------------------------


def subspace(X: FinSpace, A) -> tuple[FinSpace, ContinuousMap]:
    'Induced topology on a point subset, with its inclusion map.'
    if not isinstance(A, int):
        A = X.point_mask(A)
    kept = [i for i in range(X.n) if A >> i & 1]
    names = [X.points[i] for i in kept]
    compress = {i: k for k, i in enumerate(kept)}
    opens = set()
    for u in X.opens:
        opens.add(sum(1 << compress[i] for i in kept if u >> i & 1))
    sub = FinSpace(names, opens)
    incl = ContinuousMap(sub, X, tuple(kept))
    return sub, incl


# -- strong spaces ----------------------------------------------------------


class StrongSpace:
    'A space with an implication over its open-set lattice.'

    def __init__(self, space: FinSpace, imp: Implication):
        if imp.lattice != open_lattice(space):
            raise Diagnostic("bad-input", "implication does not live on the open-set lattice")
        self.space = space
        self.imp = imp

    def arrow(self, u: int, v: int) -> int:
        'Table lookup on open masks.'
        ops = self.space.opens
        return ops[self.imp.table[ops.index(u)][ops.index(v)]]

    def __eq__(self, other):
        return (
            isinstance(other, StrongSpace)
            and self.space == other.space
            and self.imp == other.imp
        )

    def __hash__(self):
        return hash((self.space, self.imp))


def wbs_from_core(X: FinSpace, core) -> StrongSpace:
    """The table U -> V = U^c ∪ V ∪ M for an open core M.

    Valid exactly when the subspace off the core is locally indiscrete;
    the equivalent formulation (K ∪ M open for every closed K) is
    computed independently and the two must agree.
    """
    M = core if isinstance(core, int) else X.point_mask(core)
    if M not in X.opens:
        raise Diagnostic("core-invalid", "core must be open", X.open_name(M))
    union_route = None
    for k in X.closeds():
        if (k | M) not in X.opens:
            union_route = k
            break
    rest, _ = subspace(X, X.full & ~M)
    sub_route = classify_space(rest).locally_indiscrete
    if (union_route is None) != sub_route:
        raise SelfCheckError(
            "core-routes",
            "closed-union test and subspace test disagree on the core",
            X.open_name(M),
        )
    if union_route is not None:
        raise Diagnostic(
            "core-invalid",
            "complement of the core is not locally indiscrete",
            X.open_name(union_route),
        )
    ops = X.opens
    table = tuple(
        tuple(ops.index((X.full & ~u) | v | M) for v in ops) for u in ops
    )
    L = open_lattice(X)
    imp = validate_implication(L, table)
    cls = classify(imp)
    if not cls.weakly_boolean or cls.core != X.open_name(M):
        raise SelfCheckError(
            "core-classify",
            "core table does not classify as open and closed with that core",
            X.open_name(M),
        )
    return StrongSpace(X, imp)


def wbs_enumerate(X: FinSpace, cross_check: bool = True) -> list[tuple[int, StrongSpace]]:
    """All valid cores with their tables, in canonical core order.

    With `cross_check` the list is matched one-to-one against the
    independently enumerated open-and-closed tables on the open-set
    lattice.
    """
    out = []
    for M in X.opens:
        try:
            out.append((M, wbs_from_core(X, M)))
        except Diagnostic as exc:
            if exc.code != "core-invalid":
                raise
    if cross_check:
        direct = {s.imp.table for _, s in out}
        swept = {imp.table for imp in enumerate_implications(open_lattice(X), "wbi")}
        if direct != swept:
            raise SelfCheckError(
                "wbs-enumeration",
                "core scan and table sweep disagree",
                (len(direct), len(swept)),
            )
        from .implication import wbi_decompose

        for M, s in out:
            m_idx = wbi_decompose(s.imp).core
            if X.opens[m_idx] != M:
                raise SelfCheckError(
                    "wbs-enumeration",
                    "decomposed core does not match the constructing core",
                    X.open_name(M),
                )
    return out


# -- localizability and induced tables --------------------------------------


@dataclass(frozen=True)
class LocResult:
    ok: bool
    witness: tuple | None  # (Z, U1, V1, U2, V2) as open names


def localizability(S: StrongSpace, mode: str) -> LocResult:
    """Whether restrictions to opens (closeds) determine restrictions.

    For every Z of the requested kind and all pairs agreeing on Z, the
    table values must agree on Z as well.  The verdict must match the
    corresponding classification flag; disagreement is an internal
    error, not a data error.
    """
    if mode not in ("open", "closed"):
        raise Diagnostic("bad-input", "mode must be open or closed", mode)
    X = S.space
    ops = X.opens
    table = S.imp.table
    zs = ops if mode == "open" else X.closeds()
    witness = None
    for z in zs:
        seen: dict[tuple[int, int], tuple[int, int, int]] = {}
        for ui, u in enumerate(ops):
            for vi, v in enumerate(ops):
                key = (u & z, v & z)
                val = ops[table[ui][vi]] & z
                if key in seen:
                    u0, v0, val0 = seen[key]
                    if val0 != val:
                        witness = (
                            X.open_name(z),
                            X.open_name(u0),
                            X.open_name(v0),
                            X.open_name(u),
                            X.open_name(v),
                        )
                        break
                else:
                    seen[key] = (u, v, val)
            if witness:
                break
        if witness:
            break

    from .implication import _closed_single, _open_single

    crit = _open_single if mode == "open" else _closed_single
    flag = crit(S.imp.lattice, table) is None
    if flag != (witness is None):
        raise SelfCheckError(
            "localizability-flag",
            f"localizability ({mode}) disagrees with the classification flag",
            witness,
        )
    return LocResult(witness is None, witness)


def restrict_implication(S: StrongSpace, A) -> StrongSpace:
    """Induced table on a subspace, when restriction determines it.

    Defined whenever pairs of opens agreeing on A have table values
    agreeing on A; otherwise reports non-liftable with the first
    offending tuple.
    """
    X = S.space
    if not isinstance(A, int):
        A = X.point_mask(A)
    sub, incl = subspace(X, A)
    ops = X.opens
    compress = {i: k for k, i in enumerate(i for i in range(X.n) if A >> i & 1)}

    def cut(mask: int) -> int:
        return sum(1 << compress[i] for i in compress if mask >> i & 1)

    seen: dict[tuple[int, int], tuple[int, int, int]] = {}
    for ui, u in enumerate(ops):
        for vi, v in enumerate(ops):
            key = (cut(u), cut(v))
            val = cut(ops[S.imp.table[ui][vi]])
            if key in seen and seen[key][2] != val:
                u0, v0, _ = seen[key]
                raise Diagnostic(
                    "non-liftable",
                    "restriction does not determine the table on this subspace",
                    (
                        X.open_name(u0),
                        X.open_name(v0),
                        X.open_name(u),
                        X.open_name(v),
                    ),
                )
            seen.setdefault(key, (u, v, val))

    L = open_lattice(sub)
    table = [[None] * len(sub.opens) for _ in sub.opens]
    for (ku, kv), (_, _, val) in seen.items():
        table[sub.opens.index(ku)][sub.opens.index(kv)] = sub.opens.index(val)
    imp = validate_implication(L, tuple(tuple(row) for row in table))
    return StrongSpace(sub, imp)


def strong_under(f: ContinuousMap, SX: StrongSpace, SY: StrongSpace) -> bool:
    'Whether the preimage of every table value is the table of preimages.'
    if SX.space != f.source or SY.space != f.target:
        raise Diagnostic("bad-input", "strong-map check on mismatched spaces")
    for u in f.target.opens:
        for v in f.target.opens:
            if f.preimage(SY.arrow(u, v)) != SX.arrow(f.preimage(u), f.preimage(v)):
                return False
    return True


# -- space inventories -------------------------------------------------------


def enumerate_topologies(points, up_to_iso: bool = False) -> list[FinSpace]:
    'Every topology on the given points; optionally one per homeomorphism class.'
    points = tuple(points)
    n = len(points)
    if n > 4:
        raise Diagnostic(
            "size-guard-exceeded",
            "topology inventory is limited to 4 points",
            n,
        )
    full = (1 << n) - 1
    proper = [m for m in range(1 << n) if m not in (0, full)]
    found = []
    for pick in range(1 << len(proper)):
        fam = {0, full} | {proper[i] for i in range(len(proper)) if pick >> i & 1}
        if all(u | v in fam and u & v in fam for u in fam for v in fam):
            found.append(frozenset(fam))
    found = sorted(found, key=lambda f: (len(f), sorted(subsets.canonical_key(m) for m in f)))
    if up_to_iso:
        reps = []
        seen = set()
        for fam in found:
            if fam in seen:
                continue
            reps.append(fam)
            for perm in itertools.permutations(range(n)):
                mapped = frozenset(
                    sum(1 << perm[i] for i in range(n) if m >> i & 1) for m in fam
                )
                seen.add(mapped)
        found = reps
    return [FinSpace(points, fam) for fam in found]
