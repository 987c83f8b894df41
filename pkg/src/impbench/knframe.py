"""Kripke-Neighbourhood frames and their upset algebras.

A frame is a poset with an order-compatible relation R, a Boolean set
algebra B of point sets, and a monotone neighbourhood map N sending
each point to a family of upsets drawn from B.  The induced table on
the upsets in B internalizes the order; two modal operators drive the
cross-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Diagnostic, SelfCheckError
from .implication import Implication, classify, validate_implication
from .lattice import FinLattice
from . import subsets

FRAME_GUARD = 12


def _validate_poset(points, leq):
    'Rows of 0/1 to up-masks, checking the order axioms.'
    n = len(points)
    up = []
    for i in range(n):
        row = 0
        for j in range(n):
            if leq[i][j]:
                row |= 1 << j
        up.append(row)
    for i in range(n):
        if not up[i] >> i & 1:
            raise Diagnostic("not-a-poset", "order is not reflexive", points[i])
    for i in range(n):
        for j in range(n):
            if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                raise Diagnostic(
                    "not-a-poset", "order is not antisymmetric", (points[i], points[j])
                )
    for i in range(n):
        for j in range(n):
            if up[i] >> j & 1 and up[j] & ~up[i]:
                k = (up[j] & ~up[i]).bit_length() - 1
                raise Diagnostic(
                    "not-a-poset",
                    "order is not transitive",
                    (points[i], points[j], points[k]),
                )
    return tuple(up)


class KNFrame:
    """A validated frame.

    `succ[i]` masks the R-successors of point i; `B` is the canonical
    tuple of member masks; `N[i]` is a frozenset of upset masks.
    """

    def __init__(self, points, leq, R, B, N):
        self.points = tuple(str(p) for p in points)
        n = len(self.points)
        if len(set(self.points)) != n:
            raise Diagnostic("bad-input", "duplicate point names", self.points)
        if n > FRAME_GUARD:
            raise Diagnostic(
                "size-guard-exceeded",
                f"frames are limited to {FRAME_GUARD} points",
                n,
            )
        self.up = _validate_poset(self.points, leq)
        idx = {p: i for i, p in enumerate(self.points)}

        succ = [0] * n
        for pair in R:
            a, b = pair
            a = idx[str(a)] if not isinstance(a, int) else a
            b = idx[str(b)] if not isinstance(b, int) else b
            succ[a] |= 1 << b
        self.succ = tuple(succ)

        self.B = subsets.canonical_sort(
            m if isinstance(m, int) else subsets.mask_of(self.points, m) for m in B
        )
        bset = set(self.B)

        ups = []
        for i, fam in enumerate(N):
            fam = frozenset(
                m if isinstance(m, int) else subsets.mask_of(self.points, m) for m in fam
            )
            for u in fam:
                if u not in bset or not self._is_upset(u):
                    raise Diagnostic(
                        "n-value-illegal",
                        "neighbourhoods must be upsets belonging to B",
                        (self.points[i], self.open_name(u)),
                    )
            ups.append(fam)
        self.N = tuple(ups)
        if len(self.N) != n:
            raise Diagnostic("bad-input", "N does not cover the points")

        self._validate_frame()

    # -- raw helpers --------------------------------------------------------

    def _is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in range(len(self.points)) if mask >> i & 1)

    def open_name(self, mask: int) -> str:
        return subsets.name_of(self.points, mask)

    def upsets_in_b(self) -> tuple[int, ...]:
        return subsets.canonical_sort(u for u in self.B if self._is_upset(u))

    def diamond(self, mask: int) -> int:
        return sum(1 << x for x in range(len(self.points)) if self.succ[x] & mask)

    def j(self, mask: int) -> int:
        return sum(1 << x for x in range(len(self.points)) if mask in self.N[x])

    # -- the four conditions ------------------------------------------------

    def _validate_frame(self):
        pts = self.points
        n = len(pts)
        for x in range(n):
            for y in range(n):
                if not self.up[x] >> y & 1:
                    continue
                if self.succ[y] & ~self.succ[x]:
                    z = (self.succ[y] & ~self.succ[x]).bit_length() - 1
                    raise Diagnostic(
                        "r-not-compatible",
                        "a point below another must inherit its R-successors",
                        (pts[x], pts[y], pts[z]),
                    )
        ups = self.upsets_in_b()
        for x in range(n):
            for u in self.N[x]:
                for v in ups:
                    if u & ~v == 0 and v not in self.N[x]:
                        raise Diagnostic(
                            "n-not-monotone",
                            "neighbourhood families must be upward closed",
                            (pts[x], self.open_name(u), self.open_name(v)),
                        )
        bset = set(self.B)
        full = (1 << n) - 1
        if full not in bset:
            raise Diagnostic("b-not-closed", "B must contain the whole carrier")
        for u in self.B:
            if (full & ~u) not in bset:
                raise Diagnostic(
                    "b-not-closed", "B is not closed under complement", self.open_name(u)
                )
            if self.diamond(u) not in bset:
                raise Diagnostic(
                    "b-not-closed",
                    "B is not closed under the R-diamond",
                    self.open_name(u),
                )
            for v in self.B:
                if (u | v) not in bset:
                    raise Diagnostic(
                        "b-not-closed",
                        "B is not closed under union",
                        (self.open_name(u), self.open_name(v)),
                    )
        for u in ups:
            if self.j(u) not in bset:
                raise Diagnostic(
                    "j-not-in-b",
                    "j of an upset in B must land in B",
                    self.open_name(u),
                )

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, KNFrame)
            and self.points == other.points
            and self.up == other.up
            and self.succ == other.succ
            and self.B == other.B
            and self.N == other.N
        )

    def __hash__(self):
        return hash((self.points, self.up, self.succ, self.B, tuple(sorted(map(sorted, self.N), key=str))))

    def __repr__(self):
        return f"KNFrame({list(self.points)}, |B|={len(self.B)})"

    def is_full(self) -> bool:
        return len(self.B) == 1 << len(self.points)

    def is_standard(self) -> bool:
        if not self.is_full():
            return False
        return all(
            self.N[x] == frozenset(u for u in self.upsets_in_b() if u >> x & 1)
            for x in range(len(self.points))
        )


def validate_frame(points, leq, R, B, N) -> KNFrame:
    'Constructor wrapper so callers can catch one entry point.'
    return KNFrame(points, leq, R, B, N)


def modal_operators(K: KNFrame, U) -> tuple[int, int | None]:
    'Diamond of U, and j(U) when U is an upset in B.'
    if not isinstance(U, int):
        U = subsets.mask_of(K.points, U)
    if U not in K.B:
        raise Diagnostic("u-not-in-b", "operand must belong to B", K.open_name(U))
    jU = K.j(U) if K._is_upset(U) else None
    return K.diamond(U), jU


# -- the upset algebra ------------------------------------------------------


@dataclass(frozen=True)
class FrameAlgebra:
    frame: KNFrame
    upsets: tuple[int, ...]
    implication: Implication

    def arrow(self, u: int, v: int) -> int:
        i, j = self.upsets.index(u), self.upsets.index(v)
        return self.upsets[self.implication.table[i][j]]


def frame_algebra(K: KNFrame) -> FrameAlgebra:
    """The table U -> V = points whose R-successors that see U also see V.

    The axioms and the complement identity with the modal operators are
    both rechecked; either failing is an internal error since validity
    of the frame already guarantees them.
    """
    ups = K.upsets_in_b()
    n = len(K.points)
    names = [K.open_name(u) for u in ups]
    leq = [[1 if u & ~v == 0 else 0 for v in ups] for u in ups]
    L = FinLattice(names, leq)

    def arrow(u, v):
        out = 0
        for x in range(n):
            if all(
                not (K.succ[x] >> y & 1 and u in K.N[y]) or v in K.N[y]
                for y in range(n)
            ):
                out |= 1 << x
        return out

    raw = [[arrow(u, v) for v in ups] for u in ups]
    full = (1 << n) - 1
    for ui, u in enumerate(ups):
        for vi, v in enumerate(ups):
            if full & ~raw[ui][vi] != K.diamond(K.j(u) & ~K.j(v) & full):
                raise SelfCheckError(
                    "frame-complement-identity",
                    "table complement is not the diamond of j(U) minus j(V)",
                    (names[ui], names[vi]),
                )
    try:
        imp = validate_implication(
            L, tuple(tuple(ups.index(c) for c in row) for row in raw)
        )
    except Diagnostic as exc:
        raise SelfCheckError(
            "frame-table-axioms",
            "a valid frame produced a non-implication table",
            exc.witness,
        ) from exc
    return FrameAlgebra(K, ups, imp)


@dataclass(frozen=True)
class FrameClass:
    open_frame: bool
    closed_frame: bool
    witnesses: dict


def frame_class(K: KNFrame, check_algebra: bool = True) -> FrameClass:
    """Pointwise open/closed frame flags.

    A held flag must transfer to the classification of the upset
    algebra; only that direction is guaranteed, and its failure is an
    internal error.
    """
    n = len(K.points)
    ups = K.upsets_in_b()
    witnesses = {}

    open_w = None
    for x in range(n):
        for y in range(n):
            if not K.succ[x] >> y & 1:
                continue
            for u in ups:
                if not u >> x & 1:
                    continue
                for v in K.N[y]:
                    if (u & v) not in K.N[y]:
                        open_w = (K.points[x], K.points[y], K.open_name(u), K.open_name(v))
                        break
                if open_w:
                    break
            if open_w:
                break
        if open_w:
            break

    closed_w = None
    for x in range(n):
        for y in range(n):
            if not K.succ[x] >> y & 1:
                continue
            for u in ups:
                if u >> x & 1:
                    continue
                for v in ups:
                    if (u | v) in K.N[y] and v not in K.N[y]:
                        closed_w = (
                            K.points[x],
                            K.points[y],
                            K.open_name(u),
                            K.open_name(v),
                        )
                        break
                if closed_w:
                    break
            if closed_w:
                break
        if closed_w:
            break

    if open_w:
        witnesses["open_frame"] = open_w
    if closed_w:
        witnesses["closed_frame"] = closed_w

    if check_algebra and (open_w is None or closed_w is None):
        cls = classify(frame_algebra(K).implication)
        if open_w is None and not cls.open:
            raise SelfCheckError(
                "frame-open-transfer", "open frame with a non-open algebra", K
            )
        if closed_w is None and not cls.closed:
            raise SelfCheckError(
                "frame-closed-transfer", "closed frame with a non-closed algebra", K
            )

    return FrameClass(open_w is None, closed_w is None, witnesses)


# -- constructions ----------------------------------------------------------


def standard_frame(points, leq, R) -> KNFrame:
    'Full B with each point seeing exactly the upsets containing it.'
    points = tuple(str(p) for p in points)
    n = len(points)
    up = _validate_poset(points, leq)
    B = list(range(1 << n))
    is_up = lambda m: all(up[i] & ~m == 0 for i in range(n) if m >> i & 1)
    upsets = [m for m in B if is_up(m)]
    N = [[u for u in upsets if u >> x & 1] for x in range(n)]
    return KNFrame(points, leq, R, B, N)


def fullify(K: KNFrame) -> KNFrame:
    """Drop B to the full powerset, saturating N upward.

    Membership of the original upsets in the new neighbourhoods must
    not change, so the old algebra embeds in the new one; both facts
    are asserted.
    """
    n = len(K.points)
    leq = [[K.up[i] >> j & 1 for j in range(n)] for i in range(n)]
    B = list(range(1 << n))
    is_up = K._is_upset
    all_ups = [m for m in range(1 << n) if is_up(m)]
    N = [
        [u for u in all_ups if any(v & ~u == 0 for v in K.N[x])]
        for x in range(n)
    ]
    R = [
        (K.points[i], K.points[j])
        for i in range(n)
        for j in range(n)
        if K.succ[i] >> j & 1
    ]
    Kf = KNFrame(K.points, leq, R, B, N)

    old_ups = K.upsets_in_b()
    for x in range(n):
        for u in old_ups:
            if (u in K.N[x]) != (u in Kf.N[x]):
                raise SelfCheckError(
                    "fullify-neighbourhoods",
                    "membership of an original upset changed",
                    (K.points[x], K.open_name(u)),
                )
    alg, alg_f = frame_algebra(K), frame_algebra(Kf)
    for u in old_ups:
        for v in old_ups:
            if alg.arrow(u, v) != alg_f.arrow(u, v):
                raise SelfCheckError(
                    "fullify-subalgebra",
                    "the original table changed under fullification",
                    (K.open_name(u), K.open_name(v)),
                )
    return Kf


# -- inventories and searches -----------------------------------------------


def enumerate_posets(points) -> list[tuple[tuple[int, ...], ...]]:
    'All partial orders on the given points, as 0/1 rows.'
    points = tuple(points)
    n = len(points)
    if n > 4:
        raise Diagnostic("size-guard-exceeded", "poset inventory is limited to 4 points", n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for pick in range(1 << len(pairs)):
        rel = {(i, i) for i in range(n)}
        rel.update(p for k, p in enumerate(pairs) if pick >> k & 1)
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if any(
            (i, k) not in rel
            for i, j in rel
            for j2, k in rel
            if j == j2 and (i, k) != (i, j)
        ):
            continue
        out.append(tuple(tuple(1 if (i, j) in rel else 0 for j in range(n)) for i in range(n)))
    return sorted(out)


def compatible_relations(points, leq) -> list[frozenset]:
    'All R on the poset satisfying order compatibility, as index-pair sets.'
    n = len(points)
    up = _validate_poset(tuple(points), leq)
    pairs = [(i, j) for i in range(n) for j in range(n)]
    out = []
    for pick in range(1 << len(pairs)):
        R = frozenset(p for k, p in enumerate(pairs) if pick >> k & 1)
        if all(
            (x, z) in R
            for x in range(n)
            for y in range(n)
            if up[x] >> y & 1
            for (y2, z) in R
            if y2 == y
        ):
            out.append(R)
    return sorted(out, key=lambda r: (len(r), sorted(r)))


def _up_closed_families(ups_sorted):
    'All upward-closed subfamilies of a family of upsets ordered by inclusion.'
    fams = []
    for pick in range(1 << len(ups_sorted)):
        fam = frozenset(u for k, u in enumerate(ups_sorted) if pick >> k & 1)
        if all(
            v in fam
            for u in fam
            for v in ups_sorted
            if u & ~v == 0
        ):
            fams.append(fam)
    return fams


def find_fullify_flag_loss(max_points: int = 2) -> tuple[KNFrame, FrameClass, FrameClass]:
    """Search small frames for one whose open or closed flag does not
    survive fullification.  Returns the frame with both flag sets.

    The scan order is deterministic, so the result is reproducible.
    """
    for n in range(1, max_points + 1):
        points = tuple("klmn"[:n])
        for leq in enumerate_posets(points):
            up = _validate_poset(points, leq)
            full = (1 << n) - 1
            algebras = []
            for pick in range(1 << (1 << n)):
                fam = frozenset(m for m in range(1 << n) if pick >> m & 1)
                if full in fam and all(
                    (full & ~u) in fam and all((u | v) in fam for v in fam) for u in fam
                ):
                    algebras.append(subsets.canonical_sort(fam))
            for R in compatible_relations(points, leq):
                rel = [(points[i], points[j]) for i, j in sorted(R)]
                for B in algebras:
                    bset = set(B)
                    succ = [sum(1 << j for (i2, j) in R if i2 == i) for i in range(n)]
                    if any(
                        sum(1 << x for x in range(n) if succ[x] & u) not in bset
                        for u in B
                    ):
                        continue
                    is_up = lambda m: all(up[i] & ~m == 0 for i in range(n) if m >> i & 1)
                    ups = [u for u in B if is_up(u)]
                    for fams in itertools.product(_up_closed_families(ups), repeat=n):
                        try:
                            K = KNFrame(points, leq, rel, B, [sorted(f) for f in fams])
                        except Diagnostic:
                            continue
                        before = frame_class(K)
                        after = frame_class(fullify(K))
                        if (before.open_frame and not after.open_frame) or (
                            before.closed_frame and not after.closed_frame
                        ):
                            return K, before, after
    raise Diagnostic("search-exhausted", "no flag-losing frame within the bound", max_points)
