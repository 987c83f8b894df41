"""Finite bounded distributive lattices, given by an order matrix.

Elements are opaque strings addressed by index; every derived structure
(meet and join tables, bounds, Heyting residual, prime filters) is
computed once at construction and cross-checked against its defining
property rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Diagnostic, SelfCheckError
from .subsets import canonical_sort, popcount

# Powerset-scale sweeps refuse anything larger than this many elements.
POWERSET_GUARD = 20


class FinLattice:
    """A finite bounded distributive lattice.

    `leq` is a square 0/1 matrix, leq[i][j] == 1 meaning element i is
    below element j.  Construction validates the partial order, the
    existence of all binary meets and joins, both bounds, and
    distributivity; the first violated law is reported with a witness.
    """

    def __init__(self, elements, leq):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise Diagnostic("bad-input", "duplicate element names", elements)
        n = len(elements)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise Diagnostic("bad-input", "leq is not a square matrix over the elements")
        if n == 0:
            raise Diagnostic("missing-bound", "empty carrier has no bottom or top")
        self.elements = elements
        self.n = n
        self._idx = {e: i for i, e in enumerate(elements)}

        up = [0] * n
        for i in range(n):
            for j in range(n):
                if leq[i][j]:
                    up[i] |= 1 << j
        self.up = tuple(up)
        self.down = tuple(
            sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n)
        )

        self._check_poset()
        self.meet, self.join = self._build_meet_join()
        self.bottom = self._find_bound(self.meet)
        self.top = self._find_bound(self.join)
        self._check_distributive()

    # -- construction checks ------------------------------------------------

    def _check_poset(self):
        up = self.up
        for i in range(self.n):
            if not up[i] >> i & 1:
                raise Diagnostic("not-a-poset", "order is not reflexive", self.elements[i])
        for i in range(self.n):
            for j in range(self.n):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise Diagnostic(
                        "not-a-poset",
                        "order is not antisymmetric",
                        (self.elements[i], self.elements[j]),
                    )
        for i in range(self.n):
            for j in range(self.n):
                if up[i] >> j & 1 and up[i] | up[j] != up[i]:
                    k = (up[j] & ~up[i]).bit_length() - 1
                    raise Diagnostic(
                        "not-a-poset",
                        "order is not transitive",
                        (self.elements[i], self.elements[j], self.elements[k]),
                    )

    def _build_meet_join(self):
        n, up, down = self.n, self.up, self.down
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                lower = down[i] & down[j]
                k = self._extreme(lower, down)
                if k is None:
                    raise Diagnostic(
                        "missing-bound",
                        "pair has no greatest lower bound",
                        (self.elements[i], self.elements[j]),
                    )
                meet[i][j] = k
                upper = up[i] & up[j]
                k = self._extreme(upper, up)
                if k is None:
                    raise Diagnostic(
                        "missing-bound",
                        "pair has no least upper bound",
                        (self.elements[i], self.elements[j]),
                    )
                join[i][j] = k
        return tuple(map(tuple, meet)), tuple(map(tuple, join))

    def _extreme(self, mask, rel):
        'Member k of `mask` with every member of `mask` related to k via rel.'
        for k in range(self.n):
            if mask >> k & 1 and mask & ~rel[k] == 0:
                return k
        return None

    def _find_bound(self, table):
        k = 0
        for i in range(1, self.n):
            k = table[k][i]
        return k

    def _check_distributive(self):
        meet, join = self.meet, self.join
        for a in range(self.n):
            for b in range(self.n):
                for c in range(self.n):
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                        raise Diagnostic(
                            "not-distributive",
                            "meet does not distribute over join",
                            (self.elements[a], self.elements[b], self.elements[c]),
                        )

    # -- basic queries ------------------------------------------------------

    def leq(self, i, j) -> bool:
        return bool(self.up[i] >> j & 1)

    def index(self, name: str) -> int:
        try:
            return self._idx[name]
        except KeyError:
            raise Diagnostic("bad-input", "unknown element", name) from None

    def name(self, i: int) -> str:
        return self.elements[i]

    def join_all(self, indices) -> int:
        k = self.bottom
        for i in indices:
            k = self.join[k][i]
        return k

    def meet_all(self, indices) -> int:
        k = self.top
        for i in indices:
            k = self.meet[k][i]
        return k

    def interval(self, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(k for k in range(self.n) if self.leq(lo, k) and self.leq(k, hi))

    def linear_extension(self) -> tuple[int, ...]:
        'A fixed bottom-to-top linear extension (by depth, then index).'
        return tuple(sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i)))

    def __eq__(self, other):
        return (
            isinstance(other, FinLattice)
            and self.elements == other.elements
            and self.up == other.up
        )

    def __hash__(self):
        return hash((self.elements, self.up))

    def __repr__(self):
        return f"FinLattice({len(self.elements)} elements)"


def validate_lattice(elements, leq) -> FinLattice:
    'Build a lattice from raw data, reporting the first violated law.'
    return FinLattice(elements, leq)


def _scale_guard(n: int, what: str, guard: int = POWERSET_GUARD):
    if n > guard:
        raise Diagnostic(
            "size-guard-exceeded",
            f"{what} is a powerset-scale sweep; refusing {n} elements (limit {guard})",
            n,
        )


# -- Heyting residual -------------------------------------------------------


def heyting_matrix(L: FinLattice) -> tuple[tuple[int, ...], ...]:
    """Residual table: row b, column c holds the largest a with a ∧ b <= c.

    The adjunction (a ∧ b <= c iff a <= b => c) is verified for every
    triple before the table is returned.
    """
    n, meet = L.n, L.meet
    rows = []
    for b in range(n):
        row = []
        for c in range(n):
            row.append(L.join_all(a for a in range(n) if L.leq(meet[a][b], c)))
        rows.append(tuple(row))
    table = tuple(rows)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if L.leq(meet[a][b], c) != L.leq(a, table[b][c]):
                    raise SelfCheckError(
                        "heyting-adjunction",
                        "residual table fails the adjunction",
                        (L.elements[a], L.elements[b], L.elements[c]),
                    )
    return table


# -- complements ------------------------------------------------------------


@dataclass(frozen=True)
class BooleanStructure:
    """Outcome of the complement sweep.

    `complement` maps each element index to its complement when the
    lattice is Boolean; otherwise it is None and `witness` names an
    element with no complement.  In a distributive lattice complements
    are unique, which the sweep double-checks.
    """

    complement: tuple[int, ...] | None
    witness: int | None

    @property
    def is_boolean(self) -> bool:
        return self.complement is not None


def boolean_structure(L: FinLattice) -> BooleanStructure:
    comp = []
    for a in range(L.n):
        found = [
            b
            for b in range(L.n)
            if L.join[a][b] == L.top and L.meet[a][b] == L.bottom
        ]
        if not found:
            return BooleanStructure(None, a)
        if len(found) > 1:
            raise SelfCheckError(
                "complement-unique",
                "distributive lattice produced two complements",
                (L.elements[a], [L.elements[b] for b in found]),
            )
        comp.append(found[0])
    return BooleanStructure(tuple(comp), None)


def interval_complement(L: FinLattice, m: int, a: int) -> int | None:
    """Complement of a ∨ m inside the interval [m, 1], or None.

    Searches for the unique x with m <= x, x ∨ (a ∨ m) = 1 and
    x ∧ (a ∨ m) = m.
    """
    target = L.join[a][m]
    found = [
        x
        for x in L.interval(m, L.top)
        if L.join[x][target] == L.top and L.meet[x][target] == m
    ]
    if not found:
        return None
    if len(found) > 1:
        raise SelfCheckError(
            "complement-unique",
            "two relative complements in a distributive interval",
            (L.elements[m], L.elements[a], [L.elements[x] for x in found]),
        )
    return found[0]


def interval_is_boolean(L: FinLattice, m: int) -> int | None:
    'None when every x in [m, 1] has a complement there, else a witness x.'
    for x in L.interval(m, L.top):
        if interval_complement(L, m, x) is None:
            return x
    return None


# -- filters and ideals -----------------------------------------------------


def is_filter(L: FinLattice, mask: int) -> bool:
    'Upset containing the empty meet (top) and closed under binary meets.'
    if not mask >> L.top & 1:
        return False
    for i in range(L.n):
        if not mask >> i & 1:
            continue
        if L.up[i] & ~mask:
            return False
        for j in range(L.n):
            if mask >> j & 1 and not mask >> L.meet[i][j] & 1:
                return False
    return True


def is_ideal(L: FinLattice, mask: int) -> bool:
    if not mask >> L.bottom & 1:
        return False
    for i in range(L.n):
        if not mask >> i & 1:
            continue
        if L.down[i] & ~mask:
            return False
        for j in range(L.n):
            if mask >> j & 1 and not mask >> L.join[i][j] & 1:
                return False
    return True


def is_prime_filter(L: FinLattice, mask: int) -> bool:
    'Proper filter whose membership splits every join.'
    if not is_filter(L, mask):
        return False
    if mask >> L.bottom & 1:
        return False
    for a in range(L.n):
        for b in range(L.n):
            if mask >> L.join[a][b] & 1 and not (mask >> a & 1 or mask >> b & 1):
                return False
    return True


@dataclass(frozen=True)
class PrimeFilterSet:
    lattice: FinLattice
    filters: tuple[int, ...]  # element masks, canonically sorted

    def names(self) -> tuple[tuple[str, ...], ...]:
        return tuple(
            tuple(e for i, e in enumerate(self.lattice.elements) if f >> i & 1)
            for f in self.filters
        )


def prime_filters(L: FinLattice) -> PrimeFilterSet:
    """All prime filters, canonically ordered.

    Every filter of a finite lattice is the upset of its meet, so the
    prime ones are exactly the upsets of join-prime elements above
    bottom.  Each candidate is still audited against the defining
    conditions before being returned.
    """
    _scale_guard(L.n, "prime filter listing")
    out = []
    for p in range(L.n):
        if p == L.bottom:
            continue
        prime = all(
            not L.leq(p, L.join[a][b]) or L.leq(p, a) or L.leq(p, b)
            for a in range(L.n)
            for b in range(L.n)
        )
        if prime:
            mask = L.up[p]
            if not is_prime_filter(L, mask):
                raise SelfCheckError(
                    "prime-filter-audit",
                    "constructed filter fails the prime filter conditions",
                    L.elements[p],
                )
            out.append(mask)
    return PrimeFilterSet(L, canonical_sort(out))


def separate(L: FinLattice, filter_mask: int, ideal_mask: int) -> int | None:
    """First prime filter containing the filter and missing the ideal.

    Candidates are scanned in canonical subset order, so the witness is
    deterministic.  Returns None when the filter meets the ideal; a
    disjoint pair in a finite distributive lattice always has a
    separator, and the sweep insists on finding one.
    """
    _scale_guard(L.n, "filter separation")
    if not is_filter(L, filter_mask):
        raise Diagnostic("not-a-filter", "first argument is not a filter", filter_mask)
    if not is_ideal(L, ideal_mask):
        raise Diagnostic("not-an-ideal", "second argument is not an ideal", ideal_mask)
    if filter_mask & ideal_mask:
        return None
    for p in prime_filters(L).filters:
        if p & filter_mask == filter_mask and p & ideal_mask == 0:
            return p
    raise SelfCheckError(
        "separation",
        "disjoint filter and ideal admit no prime separator",
        (filter_mask, ideal_mask),
    )


# -- monotone maps and adjoints ---------------------------------------------


class MonotoneMap:
    'An order-preserving map between lattices, checked at construction.'

    def __init__(self, source: FinLattice, target: FinLattice, mapping):
        self.source = source
        self.target = target
        if isinstance(mapping, dict):
            mapping = tuple(
                target.index(mapping[e]) if isinstance(mapping[e], str) else mapping[e]
                for e in source.elements
            )
        self.mapping = tuple(mapping)
        if len(self.mapping) != source.n:
            raise Diagnostic("bad-input", "mapping does not cover the source")
        for i in range(source.n):
            for j in range(source.n):
                if source.leq(i, j) and not target.leq(self.mapping[i], self.mapping[j]):
                    raise Diagnostic(
                        "f-not-monotone",
                        "map does not preserve order",
                        (source.elements[i], source.elements[j]),
                    )

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneMap)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.source, self.target, self.mapping))

    def __repr__(self):
        pairs = ", ".join(
            f"{e}->{self.target.elements[v]}"
            for e, v in zip(self.source.elements, self.mapping)
        )
        return f"MonotoneMap({pairs})"


def preserves_joins(h: MonotoneMap) -> tuple[int, ...] | None:
    """Witness subset whose join is not preserved, or None.

    For monotone maps between finite lattices it is enough to look at
    the empty join and all binary joins.
    """
    A, B = h.source, h.target
    if h(A.bottom) != B.bottom:
        return ()
    for a in range(A.n):
        for b in range(A.n):
            if h(A.join[a][b]) != B.join[h(a)][h(b)]:
                return (a, b)
    return None


def preserves_meets(h: MonotoneMap) -> tuple[int, ...] | None:
    A, B = h.source, h.target
    if h(A.top) != B.top:
        return ()
    for a in range(A.n):
        for b in range(A.n):
            if h(A.meet[a][b]) != B.meet[h(a)][h(b)]:
                return (a, b)
    return None


@dataclass(frozen=True)
class AdjointPair:
    """Right and left adjoints of a monotone map, when they exist.

    A missing adjoint comes with the witness subset (as a tuple of
    source indices; () is the empty family) whose join or meet the map
    fails to preserve.
    """

    right: MonotoneMap | None
    right_witness: tuple[int, ...] | None
    left: MonotoneMap | None
    left_witness: tuple[int, ...] | None


def adjoints(h: MonotoneMap) -> AdjointPair:
    A, B = h.source, h.target
    _scale_guard(A.n, "adjoint sweep")
    _scale_guard(B.n, "adjoint sweep")

    right = None
    rw = preserves_joins(h)
    if rw is None:
        table = tuple(
            A.join_all(c for c in range(A.n) if B.leq(h(c), b)) for b in range(B.n)
        )
        right = MonotoneMap(B, A, table)
        for c in range(A.n):
            for b in range(B.n):
                if B.leq(h(c), b) != A.leq(c, right(b)):
                    raise SelfCheckError(
                        "adjunction",
                        "computed right adjoint fails the adjunction",
                        (A.elements[c], B.elements[b]),
                    )

    left = None
    lw = preserves_meets(h)
    if lw is None:
        table = tuple(
            A.meet_all(c for c in range(A.n) if B.leq(b, h(c))) for b in range(B.n)
        )
        left = MonotoneMap(B, A, table)
        for c in range(A.n):
            for b in range(B.n):
                if A.leq(left(b), c) != B.leq(b, h(c)):
                    raise SelfCheckError(
                        "adjunction",
                        "computed left adjoint fails the adjunction",
                        (B.elements[b], A.elements[c]),
                    )

    return AdjointPair(right, rw, left, lw)


# -- brute-force oracles (kept here so tests and selftests share them) ------


def all_subset_joins_preserved(h: MonotoneMap) -> tuple[int, ...] | None:
    'Exhaustive witness search over every subset; guarded, for audits.'
    A, B = h.source, h.target
    _scale_guard(A.n, "exhaustive join preservation audit")
    for r in range(A.n + 1):
        for sub in itertools.combinations(range(A.n), r):
            if h(A.join_all(sub)) != B.join_all(h(c) for c in sub):
                return sub
    return None


def all_subset_meets_preserved(h: MonotoneMap) -> tuple[int, ...] | None:
    A, B = h.source, h.target
    _scale_guard(A.n, "exhaustive meet preservation audit")
    for r in range(A.n + 1):
        for sub in itertools.combinations(range(A.n), r):
            if h(A.meet_all(sub)) != B.meet_all(h(c) for c in sub):
                return sub
    return None
