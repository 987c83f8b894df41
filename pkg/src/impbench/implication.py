"""Implication tables over a finite bounded distributive lattice.

An implication here is a binary operation -> with a -> a = 1 that is
antitone in its first argument, monotone in its second, and satisfies
(a -> b) ∧ (b -> c) <= (a -> c).  An equivalent axiom set replaces the
three order laws by the single rule a <= b implies a -> b = 1; the
validator always runs both sets and treats any disagreement between
them as a bug in this package, never as a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Diagnostic, SelfCheckError
from .lattice import (
    FinLattice,
    MonotoneMap,
    interval_complement,
    interval_is_boolean,
    preserves_joins,
    preserves_meets,
)

# Unfiltered table enumeration refuses lattices larger than this; the
# count grows super-exponentially (an 8-element Boolean lattice already
# has tens of millions of tables).  Structural filters (open, closed,
# wbi) restrict cell domains up front, so they get a wider guard.
ENUM_GUARD = 6
ENUM_GUARD_FILTERED = 10


class Implication:
    'A validated implication table; table[a][b] is an element index.'

    def __init__(self, lattice: FinLattice, table):
        validated = validate_implication(lattice, table)
        self.lattice = validated.lattice
        self.table = validated.table

    @classmethod
    def _unchecked(cls, lattice: FinLattice, table: tuple[tuple[int, ...], ...]):
        obj = object.__new__(cls)
        obj.lattice = lattice
        obj.table = table
        return obj

    def value(self, a: str, b: str) -> str:
        L = self.lattice
        return L.elements[self.table[L.index(a)][L.index(b)]]

    def neg(self, a: int) -> int:
        'a -> 0.'
        return self.table[a][self.lattice.bottom]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, Implication)
            and self.lattice == other.lattice
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.lattice, self.table))

    def __repr__(self):
        return f"Implication(on {self.lattice!r})"


def _coerce_table(L: FinLattice, table) -> tuple[tuple[int, ...], ...]:
    if len(table) != L.n or any(len(row) != L.n for row in table):
        raise Diagnostic("bad-input", "table is not square over the lattice")
    rows = []
    for row in table:
        out = []
        for v in row:
            i = L.index(v) if isinstance(v, str) else int(v)
            if not 0 <= i < L.n:
                raise Diagnostic("bad-input", "table entry outside the lattice", v)
            out.append(i)
        rows.append(tuple(out))
    return tuple(rows)


def _witness_primary(L: FinLattice, t) -> tuple[str, tuple[int, ...]] | None:
    'First violation of reflexivity, antitonicity, monotonicity or transitivity.'
    n, top, meet = L.n, L.top, L.meet
    for a in range(n):
        if t[a][a] != top:
            return ("not-reflexive", (a,))
    for a in range(n):
        for a2 in range(n):
            if a != a2 and L.leq(a, a2):
                for b in range(n):
                    if not L.leq(t[a2][b], t[a][b]):
                        return ("not-antitone", (a, a2, b))
    for b in range(n):
        for b2 in range(n):
            if b != b2 and L.leq(b, b2):
                for a in range(n):
                    if not L.leq(t[a][b], t[a][b2]):
                        return ("not-monotone", (a, b, b2))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not L.leq(meet[t[a][b]][t[b][c]], t[a][c]):
                    return ("not-transitive", (a, b, c))
    return None


def _witness_alternate(L: FinLattice, t) -> tuple[str, tuple[int, ...]] | None:
    'First violation of (a <= b implies a -> b = 1) or transitivity.'
    n, top, meet = L.n, L.top, L.meet
    for a in range(n):
        for b in range(n):
            if L.leq(a, b) and t[a][b] != top:
                return ("order-not-collapsed", (a, b))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not L.leq(meet[t[a][b]][t[b][c]], t[a][c]):
                    return ("not-transitive", (a, b, c))
    return None


def validate_implication(L: FinLattice, table) -> Implication:
    'Check a raw table against both axiom sets; they must agree.'
    t = _coerce_table(L, table)
    w1 = _witness_primary(L, t)
    w2 = _witness_alternate(L, t)
    if (w1 is None) != (w2 is None):
        raise SelfCheckError(
            "axiomatization-mismatch",
            "the two axiom sets disagree on this table",
            {"primary": w1, "alternate": w2},
        )
    if w1 is not None:
        code, cells = w1
        raise Diagnostic(code, "table is not an implication", tuple(L.elements[i] for i in cells))
    return Implication._unchecked(L, t)


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class ImplicationClass:
    """Flags for one implication table.

    `witnesses` holds, for each failed flag, the first element tuple
    that breaks the matching single-inequality criterion.
    """

    open: bool
    closed: bool
    weakly_boolean: bool
    meet_internalizing: bool
    join_internalizing: bool
    core: str | None
    witnesses: dict = field(default_factory=dict, compare=False)


def _open_single(L, t):
    'a <= b -> (a ∧ b) for all pairs; returns first failing pair.'
    for a in range(L.n):
        for b in range(L.n):
            if not L.leq(a, t[b][L.meet[a][b]]):
                return (a, b)
    return None


def _open_quantified(L, t):
    for a in range(L.n):
        for b in range(L.n):
            for c in range(L.n):
                if L.leq(L.meet[a][b], c) and not L.leq(a, t[b][c]):
                    return (a, b, c)
    return None


def _closed_single(L, t):
    '((a ∨ b) -> a) ∨ b = 1 for all pairs; returns first failing pair.'
    for a in range(L.n):
        for b in range(L.n):
            if L.join[t[L.join[a][b]][a]][b] != L.top:
                return (a, b)
    return None


def _closed_quantified(L, t):
    for a in range(L.n):
        for b in range(L.n):
            for c in range(L.n):
                if L.leq(a, L.join[b][c]) and L.join[t[a][b]][c] != L.top:
                    return (a, b, c)
    return None


def classify(imp: Implication) -> ImplicationClass:
    'Flags with a dual-route check of the open and closed criteria.'
    L, t = imp.lattice, imp.table
    witnesses = {}

    w_open = _open_single(L, t)
    if (w_open is None) != (_open_quantified(L, t) is None):
        raise SelfCheckError(
            "criterion-mismatch",
            "open criterion and its quantified form disagree",
            w_open,
        )
    w_closed = _closed_single(L, t)
    if (w_closed is None) != (_closed_quantified(L, t) is None):
        raise SelfCheckError(
            "criterion-mismatch",
            "closed criterion and its quantified form disagree",
            w_closed,
        )

    meet_int = join_int = True
    for a in range(L.n):
        for b in range(L.n):
            for c in range(L.n):
                if meet_int and t[a][L.meet[b][c]] != L.meet[t[a][b]][t[a][c]]:
                    meet_int = False
                    witnesses["meet_internalizing"] = _names(L, (a, b, c))
                if join_int and t[L.join[a][b]][c] != L.meet[t[a][c]][t[b][c]]:
                    join_int = False
                    witnesses["join_internalizing"] = _names(L, (a, b, c))

    if w_open is not None:
        witnesses["open"] = _names(L, w_open)
    if w_closed is not None:
        witnesses["closed"] = _names(L, w_closed)
    wbi = w_open is None and w_closed is None
    core = L.elements[t[L.top][L.bottom]] if wbi else None
    return ImplicationClass(
        open=w_open is None,
        closed=w_closed is None,
        weakly_boolean=wbi,
        meet_internalizing=meet_int,
        join_internalizing=join_int,
        core=core,
        witnesses=witnesses,
    )


def _names(L, idxs):
    return tuple(L.elements[i] for i in idxs)


# -- canonical constructions ------------------------------------------------


def trivial(L: FinLattice) -> Implication:
    'The constant-top table.'
    row = (L.top,) * L.n
    return validate_implication(L, (row,) * L.n)


def heyting(L: FinLattice) -> Implication:
    'The residual b => c, largest a with a ∧ b <= c.'
    from .lattice import heyting_matrix

    return validate_implication(L, heyting_matrix(L))


def wbi_cores(L: FinLattice) -> list[int]:
    'Elements m whose upper interval [m, 1] is a Boolean lattice.'
    return [m for m in range(L.n) if interval_is_boolean(L, m) is None]


def wbi_from_core(L: FinLattice, m: int) -> Implication:
    """Table a -> b = n(a) ∨ b where n(a) complements a ∨ m in [m, 1].

    Requires [m, 1] to be Boolean; the result is checked to classify as
    both open and closed with 1 -> 0 = m.
    """
    bad = interval_is_boolean(L, m)
    if bad is not None:
        raise Diagnostic(
            "interval-not-boolean",
            "upper interval of the requested core is not Boolean",
            (L.elements[m], L.elements[bad]),
        )
    neg = []
    for a in range(L.n):
        x = interval_complement(L, m, a)
        if x is None:
            raise SelfCheckError(
                "core-negation",
                "Boolean interval is missing a relative complement",
                L.elements[a],
            )
        neg.append(x)
    table = tuple(tuple(L.join[neg[a]][b] for b in range(L.n)) for a in range(L.n))
    imp = validate_implication(L, table)
    cls = classify(imp)
    if not cls.weakly_boolean or cls.core != L.elements[m]:
        raise SelfCheckError(
            "core-roundtrip",
            "table built from a core does not classify back to it",
            (L.elements[m], cls),
        )
    return imp


@dataclass(frozen=True)
class WBIDecomposition:
    core: int
    negation: tuple[int, ...]  # a |-> complement of a ∨ core in [core, 1]


def wbi_decompose(imp: Implication) -> WBIDecomposition:
    'Recover the core and negation of an open and closed implication.'
    L, t = imp.lattice, imp.table
    cls = classify(imp)
    if not cls.weakly_boolean:
        raise Diagnostic("not-wbi", "implication is not both open and closed", cls.witnesses)
    m = t[L.top][L.bottom]
    bad = interval_is_boolean(L, m)
    if bad is not None:
        raise SelfCheckError(
            "core-interval",
            "core of an open and closed implication has a non-Boolean upper interval",
            (L.elements[m], L.elements[bad]),
        )
    neg = tuple(imp.neg(a) for a in range(L.n))
    for a in range(L.n):
        for b in range(L.n):
            if t[a][b] != L.join[neg[a]][b]:
                raise SelfCheckError(
                    "negation-form",
                    "open and closed table is not negation-join",
                    _names(L, (a, b)),
                )
    rebuilt = wbi_from_core(L, m)
    if rebuilt.table != t:
        raise SelfCheckError("core-roundtrip", "decompose/rebuild changed the table", L.elements[m])
    return WBIDecomposition(m, neg)


# -- transport along a monotone/meet-preserving pair ------------------------


@dataclass(frozen=True)
class TransportResult:
    """Implication a -> b = g(f(a) -> f(b)) pulled back along f, g.

    The transfer flags record that the sufficient conditions for
    openness or closedness held; a False flag makes no claim either
    way about the result.
    """

    implication: Implication
    open_transferred: bool
    closed_transferred: bool


def _binary_meets_preserved(h: MonotoneMap):
    A, B = h.source, h.target
    for a in range(A.n):
        for b in range(A.n):
            if h(A.meet[a][b]) != B.meet[h(a)][h(b)]:
                return (a, b)
    return None


def _binary_joins_preserved(h: MonotoneMap):
    A, B = h.source, h.target
    for a in range(A.n):
        for b in range(A.n):
            if h(A.join[a][b]) != B.join[h(a)][h(b)]:
                return (a, b)
    return None


def transport(f: MonotoneMap, g: MonotoneMap, imp: Implication) -> TransportResult:
    """Pull an implication on g's source back to f's source.

    f must be monotone (enforced by its type) and g must preserve finite
    meets, including the empty one.
    """
    A, B = f.source, f.target
    if g.source != B or g.target != A or imp.lattice != B:
        raise Diagnostic("bad-input", "transport maps and table do not line up")
    w = preserves_meets(g)
    if w is not None:
        raise Diagnostic(
            "g-not-meet-preserving",
            "outer map must preserve finite meets",
            tuple(B.elements[i] for i in w),
        )
    t = imp.table
    table = tuple(tuple(g(t[f(a)][f(b)]) for b in range(A.n)) for a in range(A.n))
    try:
        out = validate_implication(A, table)
    except Diagnostic as exc:
        raise SelfCheckError(
            "transport-axioms",
            "transported table failed validation",
            exc.witness,
        ) from exc

    src = classify(imp)
    open_ok = (
        src.open
        and _binary_meets_preserved(f) is None
        and all(A.leq(a, g(f(a))) for a in range(A.n))
    )
    closed_ok = (
        src.closed
        and _binary_joins_preserved(f) is None
        and all(
            B.join[c][f(a)] != B.top or A.join[g(c)][a] == A.top
            for c in range(B.n)
            for a in range(A.n)
        )
    )
    res = classify(out)
    if open_ok and not res.open:
        raise SelfCheckError("transport-open", "open transfer conditions held but result is not open")
    if closed_ok and not res.closed:
        raise SelfCheckError("transport-closed", "closed transfer conditions held but result is not closed")
    return TransportResult(out, open_ok, closed_ok)


# -- lifting along lattice maps ---------------------------------------------


def _lattice_map_witness(f: MonotoneMap):
    w = preserves_meets(f)
    if w is not None:
        return ("meet", w)
    w = preserves_joins(f)
    if w is not None:
        return ("join", w)
    return None


def lift_left_inverse(f: MonotoneMap, g: MonotoneMap, imp: Implication) -> Implication:
    """Push an implication forward along a section f with retraction g.

    f must be a bounded lattice map, g a monotone left inverse of it
    (g after f is the identity).  The result c -> d = f(g(c) -> g(d))
    makes f compatible with both tables, which is verified.
    """
    A, B = f.source, f.target
    if g.source != B or g.target != A or imp.lattice != A:
        raise Diagnostic("bad-input", "lift maps and table do not line up")
    w = _lattice_map_witness(f)
    if w is not None:
        raise Diagnostic("f-not-lattice-map", f"map fails to preserve a {w[0]}", w[1])
    for a in range(A.n):
        if g(f(a)) != a:
            raise Diagnostic("gf-not-identity", "g does not retract f", A.elements[a])
    t = imp.table
    table = tuple(tuple(f(t[g(c)][g(d)]) for d in range(B.n)) for c in range(B.n))
    try:
        out = validate_implication(B, table)
    except Diagnostic as exc:
        raise SelfCheckError("lift-axioms", "lifted table failed validation", exc.witness) from exc
    for a in range(A.n):
        for b in range(A.n):
            if f(t[a][b]) != table[f(a)][f(b)]:
                raise SelfCheckError(
                    "lift-compatibility",
                    "section is not compatible with the lifted table",
                    _names(A, (a, b)),
                )
    return out


def _is_strong(f: MonotoneMap, imp_src: Implication, imp_tgt: Implication) -> bool:
    A = f.source
    ts, tt = imp_src.table, imp_tgt.table
    return all(
        f(ts[a][b]) == tt[f(a)][f(b)] for a in range(A.n) for b in range(A.n)
    )


def lift_wbi(f: MonotoneMap, imp: Implication) -> Implication:
    """Unique open and closed table on f's target compatible with f.

    Needs f to be a bounded lattice morphism that is surjective (or has
    a Boolean target) and the source table to be open and closed.  The
    new core is the image of the old one; uniqueness is confirmed by
    sweeping every candidate core on the target.
    """
    A, B = f.source, f.target
    if imp.lattice != A:
        raise Diagnostic("bad-input", "table does not live on f's source")
    w = _lattice_map_witness(f)
    if w is not None:
        raise Diagnostic("f-not-lattice-map", f"map fails to preserve a {w[0]}", w[1])
    surjective = set(f.mapping) == set(range(B.n))
    from .lattice import boolean_structure

    if not surjective and not boolean_structure(B).is_boolean:
        raise Diagnostic(
            "not-surjective-and-not-boolean",
            "need a surjective map or a Boolean target",
        )
    cls = classify(imp)
    if not cls.weakly_boolean:
        raise Diagnostic("not-wbi", "source table is not both open and closed", cls.witnesses)

    m = f(imp.table[A.top][A.bottom])
    try:
        out = wbi_from_core(B, m)
    except Diagnostic as exc:
        raise SelfCheckError(
            "lift-core-interval",
            "image core has a non-Boolean upper interval",
            exc.witness,
        ) from exc
    if not _is_strong(f, imp, out):
        raise SelfCheckError("lift-compatibility", "lifted table is not compatible with f")
    matches = [
        m2
        for m2 in wbi_cores(B)
        if _is_strong(f, imp, wbi_from_core(B, m2))
    ]
    if matches != [m]:
        raise SelfCheckError(
            "lift-uniqueness",
            "compatible open and closed tables on the target are not unique",
            [B.elements[m2] for m2 in matches],
        )
    return out


# -- exhaustive enumeration -------------------------------------------------


def open_cell_domains(L: FinLattice) -> tuple[int, ...]:
    """Per-cell allowed-value masks characterizing open tables.

    The quantified openness condition (a ∧ b <= c implies a <= b -> c)
    constrains each cell independently: entry (b, c) must dominate the
    Heyting residual b => c.  Flat cell index is first * n + second.
    """
    from .lattice import heyting_matrix

    hey = heyting_matrix(L)
    return tuple(L.up[hey[b][c]] for b in range(L.n) for c in range(L.n))


def closed_cell_domains(L: FinLattice) -> tuple[int, ...]:
    """Per-cell allowed-value masks characterizing closed tables.

    The closedness condition (a <= b ∨ c implies (a -> b) ∨ c = 1)
    also factors cell by cell: entry (a, b) may take value v only when
    v ∨ c = 1 for every c with a <= b ∨ c.
    """
    n, top, join = L.n, L.top, L.join
    out = []
    for a in range(n):
        for b in range(n):
            mask = 0
            for v in range(n):
                if all(
                    not L.leq(a, join[b][c]) or join[v][c] == top for c in range(n)
                ):
                    mask |= 1 << v
            out.append(mask)
    return tuple(out)


def iter_tables(
    L: FinLattice,
    axioms: str = "full",
    guard: int = ENUM_GUARD,
    domains: tuple[int, ...] | None = None,
):
    """Yield every implication table, as a flat tuple, in a fixed order.

    Cells are filled first argument top-down along a fixed linear
    extension, second argument bottom-up, values tried bottom-up.
    Entries forced by the axioms are filled in advance; candidate
    values are bounded below by already-filled comparable cells and
    every transitivity triple is checked the moment its last cell is
    placed.

    `axioms` selects the constraint set: "full" uses everything,
    "primary" drops the order-collapse prefill (keeping reflexivity
    and the order bounds), "alternate" drops the order bounds (keeping
    the prefill).  All three agree on what they accept; the reduced
    modes exist so that agreement can be demonstrated.

    `domains` optionally restricts each flat cell to an allowed-value
    mask; prefilled cells whose forced value falls outside its domain
    make the enumeration empty.
    """
    if axioms not in ("full", "primary", "alternate"):
        raise ValueError(axioms)
    if L.n > guard:
        raise Diagnostic(
            "size-guard-exceeded",
            f"table enumeration over {L.n} elements exceeds the guard ({guard})",
            L.n,
        )
    n, top, bottom = L.n, L.top, L.bottom
    meet = L.meet
    join = L.join
    up = L.up
    lin = L.linear_extension()

    t: list[int | None] = [None] * (n * n)
    prefilled = set()
    for a in range(n):
        for b in range(n):
            forced = L.leq(a, b) if axioms in ("full", "alternate") else a == b
            if forced:
                if domains is not None and not domains[a * n + b] >> top & 1:
                    return
                t[a * n + b] = top
                prefilled.add(a * n + b)

    cells = [
        a * n + b
        for a in reversed(lin)
        for b in lin
        if a * n + b not in prefilled
    ]
    position = {c: k for k, c in enumerate(cells)}

    use_bounds = axioms in ("full", "primary")
    lowers: list[tuple[int, ...]] = []
    for k, cell in enumerate(cells):
        a, b = divmod(cell, n)
        srcs = []
        if use_bounds:
            for c in range(n * n):
                a2, b2 = divmod(c, n)
                earlier = c in prefilled or position.get(c, len(cells)) < k
                if not earlier:
                    continue
                if b2 == b and a2 != a and L.leq(a, a2):
                    srcs.append(c)
                elif a2 == a and b2 != b and L.leq(b2, b):
                    srcs.append(c)
        lowers.append(tuple(srcs))

    # Triples checked when their last free cell is placed.
    triples_at: list[list[tuple[int, int, int]]] = [[] for _ in cells]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                c1, c2, c3 = x * n + y, y * n + z, x * n + z
                pos = [position[c] for c in (c1, c2, c3) if c not in prefilled]
                if pos:
                    triples_at[max(pos)].append((c1, c2, c3))

    full_mask = (1 << n) - 1
    cell_dom = [
        domains[c] if domains is not None else full_mask for c in cells
    ]
    vals_above = {v: tuple(w for w in lin if up[v] >> w & 1) for v in range(n)}
    total = len(cells)

    def fill(k: int):
        if k == total:
            yield tuple(t)
            return
        cell = cells[k]
        lo = bottom
        for src in lowers[k]:
            lo = join[lo][t[src]]
        checks = triples_at[k]
        dom = cell_dom[k]
        for v in vals_above[lo]:
            if not dom >> v & 1:
                continue
            t[cell] = v
            ok = True
            for c1, c2, c3 in checks:
                if not up[meet[t[c1]][t[c2]]] >> t[c3] & 1:
                    ok = False
                    break
            if ok:
                yield from fill(k + 1)
        t[cell] = None

    yield from fill(0)


def _filter_domains(L: FinLattice, name: str) -> tuple[int, ...]:
    if name == "open":
        return open_cell_domains(L)
    if name == "closed":
        return closed_cell_domains(L)
    if name == "wbi":
        o = open_cell_domains(L)
        c = closed_cell_domains(L)
        return tuple(a & b for a, b in zip(o, c))
    raise Diagnostic("bad-input", "unknown structural filter", name)


def iter_implications(
    L: FinLattice,
    structural: str | None = None,
    guard: int | None = None,
):
    """Stream implications on L in the deterministic search order.

    `structural` may be "open", "closed" or "wbi"; these are pushed
    into the search as per-cell value domains, which keeps the sweep
    exact while shrinking it enough for lattices the unfiltered guard
    refuses.
    """
    n = L.n
    domains = None
    if structural is not None:
        domains = _filter_domains(L, structural)
        if guard is None:
            guard = ENUM_GUARD_FILTERED
    elif guard is None:
        guard = ENUM_GUARD
    for flat in iter_tables(L, "full", guard, domains):
        table = tuple(tuple(flat[a * n + b] for b in range(n)) for a in range(n))
        yield Implication._unchecked(L, table)


def enumerate_implications(
    L: FinLattice,
    predicate=None,
    guard: int | None = None,
    cap: int | None = None,
) -> list[Implication]:
    """All implications on L, canonically sorted, optionally filtered.

    `predicate` is either a structural filter name ("open", "closed",
    "wbi"), which participates in the search and is re-verified on each
    output, or an arbitrary callable applied after construction.  `cap`
    bounds the number of visited tables and trips the size guard when
    exceeded.
    """
    structural = predicate if isinstance(predicate, str) else None
    out = []
    count = 0
    for imp in iter_implications(L, structural, guard):
        count += 1
        if cap is not None and count > cap:
            raise Diagnostic(
                "size-guard-exceeded",
                f"more than {cap} implication tables",
                cap,
            )
        if structural is not None:
            cls = classify(imp)
            flag = cls.weakly_boolean if structural == "wbi" else getattr(cls, structural)
            if not flag:
                raise SelfCheckError(
                    "filter-pushdown",
                    "domain-restricted search emitted a table outside the class",
                    structural,
                )
            out.append(imp)
        elif predicate is None or predicate(imp):
            out.append(imp)
    out.sort(key=Implication.flat)
    return out
