"""The acceptance suite: eleven end-to-end checks over the bundled
fixture families, shared between pytest and the CLI selftest verb.

Each check returns (ok, detail).  Internal cross-check failures raise
and are never converted into a clean "fail" verdict; a False here
always carries a witness in the detail string.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import fixtures, models
from .errors import Diagnostic
from .geometry import canonical_fibers, enumerate_geometric, full_local_category
from .implication import (
    _closed_single,
    _open_single,
    _witness_alternate,
    _witness_primary,
    classify,
    enumerate_implications,
    iter_implications,
    iter_tables,
    lift_wbi,
    validate_implication,
    wbi_cores,
    wbi_from_core,
    wbi_decompose,
)
from .knframe import (
    compatible_relations,
    enumerate_posets,
    find_fullify_flag_loss,
    frame_algebra,
    frame_class,
    fullify,
    standard_frame,
)
from .lattice import FinLattice, MonotoneMap
from .represent import (
    AdjointData,
    build_representation,
    join_preserving_endomaps,
    monotone_endomaps,
)
from .topology import (
    StrongSpace,
    enumerate_topologies,
    localizability,
    open_lattice,
    restrict_implication,
    wbs_enumerate,
)


@dataclass(frozen=True)
class Finding:
    criterion: str
    module: str
    title: str
    ok: bool
    detail: str


def _spaces_up_to_iso():
    out = []
    for pts in ("", "x", "xy", "xyz"):
        out.extend(enumerate_topologies(pts, up_to_iso=True))
    return out


def check_a1():
    'Primary and alternate axiom sets accept the same tables.'
    details = []
    ok = True
    for name, L in fixtures.fixture_lattices(4):
        if L.n <= 3:
            # raw sweep over every table
            prim, alt = set(), set()
            for flat in itertools.product(range(L.n), repeat=L.n * L.n):
                t = tuple(tuple(flat[a * L.n + b] for b in range(L.n)) for a in range(L.n))
                if _witness_primary(L, t) is None:
                    prim.add(flat)
                if _witness_alternate(L, t) is None:
                    alt.add(flat)
            same = prim == alt
            details.append(f"{name}: raw sweep {len(prim)} tables, match={same}")
        else:
            prim = set(iter_tables(L, "primary"))
            alt = set(iter_tables(L, "alternate"))
            same = prim == alt
            details.append(f"{name}: enumerated {len(prim)}/{len(alt)}, match={same}")
        ok = ok and same
    return ok, "; ".join(details)


def check_a2():
    'Single-inequality criteria agree with the quantified definitions.'
    counts = []
    total = 0
    for name, L in fixtures.fixture_lattices(4):
        n_open = n_closed = 0
        for imp in enumerate_implications(L):
            cls = classify(imp)  # dual-route, self-checking
            n_open += cls.open
            n_closed += cls.closed
            total += 1
        counts.append(f"{name}: open={n_open} closed={n_closed}")
    return total > 0, f"{total} implications; " + "; ".join(counts)


def check_a3():
    'WBIs are exactly the tables built from Boolean-interval cores.'
    ok = True
    details = []
    for name, L in fixtures.fixture_lattices(5):
        swept = {imp.flat() for imp in enumerate_implications(L, "wbi")}
        cores = wbi_cores(L)
        built = {wbi_from_core(L, m).flat() for m in cores}
        same = swept == built
        round_trip = all(
            wbi_decompose(wbi_from_core(L, m)).core == m for m in cores
        )
        ok = ok and same and round_trip
        details.append(f"{name}: {len(swept)} WBIs, cores={len(cores)}")
    three = len(enumerate_implications(fixtures.chain(3), "wbi"))
    four = len(enumerate_implications(fixtures.square(), "wbi"))
    ok = ok and three == 2 and four == 4
    return ok, "; ".join(details) + f"; chain3 has {three} (want 2), square has {four} (want 4)"


def check_a4():
    'Space cores match the table sweep on every small space.'
    n_spaces = 0
    for X in _spaces_up_to_iso():
        wbs_enumerate(X, cross_check=True)  # raises on any mismatch
        n_spaces += 1
    sier = fixtures.sierpinski()
    cores = [sier.open_name(m) for m, _ in wbs_enumerate(sier)]
    ok = cores == ["{a}", "{a,b}"]
    return ok, f"{n_spaces} spaces cross-checked; sierpinski cores {cores}"


_A5_SAMPLE_STRIDE = 101
_A5_PREFIX = 20000


def _a5_space(X, full_pullback: bool, classify_stride: int):
    L = open_lattice(X)
    n_imp = n_open = n_closed = 0
    for k, imp in enumerate(iter_implications(L)):
        S = StrongSpace(X, imp)
        lo = localizability(S, "open")   # asserts against the open criterion
        lc = localizability(S, "closed")
        if classify_stride == 1 or k % classify_stride == 0 or (lo.ok and lc.ok):
            cls = classify(imp)
            if cls.open != lo.ok or cls.closed != lc.ok:
                return None, f"flag mismatch at table {imp.flat()}"
        n_imp += 1
        n_open += lo.ok
        n_closed += lc.ok
        for mode, loc in (("open", lo), ("closed", lc)):
            zs = X.opens if mode == "open" else X.closeds()
            if loc.ok:
                for z in zs:
                    restrict_implication(S, z)  # must exist and validate
            elif full_pullback or k % _A5_SAMPLE_STRIDE == 0:
                refused = False
                for z in zs:
                    try:
                        restrict_implication(S, z)
                    except Diagnostic:
                        refused = True
                        break
                if not refused:
                    return None, f"no refusing subspace for {imp.flat()} ({mode})"
    return (n_imp, n_open, n_closed), None


def check_a5():
    'Localizability equals the class flags; pullbacks exist accordingly.'
    details = []
    for X in _spaces_up_to_iso():
        if len(X.opens) == 1 << X.n and X.n >= 3:
            continue  # handled below: unfiltered sweep refuses this size
        heavy = len(X.opens) >= 6
        stats, err = _a5_space(
            X,
            full_pullback=not heavy,
            classify_stride=_A5_SAMPLE_STRIDE if heavy else 1,
        )
        if err:
            return False, f"{X!r}: {err}"
        details.append(f"|O|={len(X.opens)}: {stats[0]} tables")

    # the 3-point discrete space: complete filtered families plus a
    # deterministic prefix of the unfiltered stream
    disc = fixtures.discrete("xyz")
    L = open_lattice(disc)
    filtered = []
    for kind in ("open", "closed", "wbi"):
        filtered.extend(enumerate_implications(L, kind))
    for imp in filtered:
        S = StrongSpace(disc, imp)
        cls = classify(imp)
        if localizability(S, "open").ok != cls.open:
            return False, "discrete3 filtered open flag mismatch"
        if localizability(S, "closed").ok != cls.closed:
            return False, "discrete3 filtered closed flag mismatch"
        for mode, flag in (("open", cls.open), ("closed", cls.closed)):
            zs = disc.opens if mode == "open" else disc.closeds()
            if flag:
                for z in zs:
                    restrict_implication(S, z)
    n_prefix = 0
    for k, imp in enumerate(iter_implications(L, guard=8)):
        if k >= _A5_PREFIX:
            break
        S = StrongSpace(disc, imp)
        lo = localizability(S, "open")
        lc = localizability(S, "closed")
        n_prefix += 1
    details.append(
        f"discrete3: {len(filtered)} filtered tables complete, "
        f"{n_prefix}-table unfiltered prefix (full space exceeds the guard)"
    )
    return True, "; ".join(details)


def check_a6():
    'Standard frames classify by the shape of R, algebras stay valid.'
    K = fixtures.closed_frame_kl()
    alg = frame_algebra(K)
    full, l_only = 0b11, 0b10
    arrow = alg.arrow(full, l_only)
    if arrow != 0:
        return False, f"K -> {{l}} gave {K.open_name(arrow)}"
    cls = classify(alg.implication)
    if cls.open or not cls.closed:
        return False, f"example frame flags open={cls.open} closed={cls.closed}"
    fc = frame_class(K)  # runs the frame-to-algebra transfer checks
    if fc.open_frame or not fc.closed_frame:
        return False, "frame-level flags disagree with the example"

    n_frames = 0
    for pts in ("k", "kl", "klm"):
        for leq in enumerate_posets(pts):
            up = [sum(1 << j for j in range(len(pts)) if leq[i][j]) for i in range(len(pts))]
            for R in compatible_relations(pts, leq):
                K = standard_frame(pts, leq, [(pts[i], pts[j]) for i, j in sorted(R)])
                alg = frame_algebra(K)  # validates internally
                cls = classify(alg.implication)
                r_in_leq = all(up[i] >> j & 1 for i, j in R)
                rop_in_leq = all(up[j] >> i & 1 for i, j in R)
                if r_in_leq and not cls.open:
                    return False, f"R within order but not open: {pts} {sorted(R)}"
                if rop_in_leq and not cls.closed:
                    return False, f"opposite within order but not closed: {pts} {sorted(R)}"
                n_frames += 1
    return True, f"closed-not-open example verified; {n_frames} standard frames swept"


def check_a7():
    'Fullification embeds the algebra; some frame loses a flag.'
    K = fixtures.tiny_b_frame()
    fullify(K)  # subalgebra identity asserted inside
    found, before, after = find_fullify_flag_loss()
    lost_open = before.open_frame and not after.open_frame
    lost_closed = before.closed_frame and not after.closed_frame
    ok = lost_open or lost_closed
    # the searched witness round-trips through the model format
    round_trip = models.frame_to_model(models.frame_from_model(models.frame_to_model(found)))
    ok = ok and round_trip == models.frame_to_model(found)
    return ok, (
        f"search found |K|={len(found.points)} |B|={len(found.B)}, "
        f"open {before.open_frame}->{after.open_frame}, "
        f"closed {before.closed_frame}->{after.closed_frame}"
    )


def check_a8():
    'The prime-filter construction verifies all six identities.'
    n_reps = 0
    details = []
    for name, L in fixtures.fixture_lattices(4):
        nablas = list(join_preserving_endomaps(L))
        fs = list(monotone_endomaps(L))
        if len(fs) > 24:
            step = len(fs) // 24
            fs = fs[::step]
        for nab in nablas:
            for F in fs:
                build_representation(AdjointData(L, nab, F))  # raises on failure
                n_reps += 1
        details.append(f"{name}: {len(nablas)} maps x {len(fs)} samples")
    return n_reps > 0, f"{n_reps} representations verified; " + "; ".join(details)


def check_a9():
    'The three classification experiments return the exact fiber sets.'
    expected = {
        "point": 3,
        "sierpinski": 1,
        "discrete2": 4,
    }
    details = []
    ok = True
    for include_empty in (True, False):
        built = {
            "point": full_local_category([fixtures.point_space()], include_empty),
            "sierpinski": full_local_category([fixtures.sierpinski()], include_empty),
            "discrete2": full_local_category([fixtures.discrete("xy")], include_empty),
        }
        for name, S in built.items():
            found = enumerate_geometric(S)
            ok = ok and len(found) == expected[name]
            if name == "discrete2":
                sigs = {A.signature() for A in found}
                for kind in ("t", "b", "bt", "a"):
                    ok = ok and canonical_fibers(S, kind).signature() in sigs
            if name == "sierpinski":
                only = found[0]
                ok = ok and all(len(only.fibers[X]) == 1 for X in S.objects)
            details.append(f"{name}{'' if include_empty else ' (no empty)'}: {len(found)}")
    return ok, "; ".join(details)


def check_a10():
    'Core-size families are strictly nested and all geometric.'
    S = fixtures.discrete3_injective_category()
    assigns = [canonical_fibers(S, f"c{k}") for k in range(3)]  # verify=True inside
    sizes = [sum(len(A.fibers[X]) for X in S.objects) for A in assigns]
    nested = all(
        set(assigns[k].fibers[X]) <= set(assigns[k + 1].fibers[X])
        for k in range(2)
        for X in S.objects
    )
    strict = sizes[0] < sizes[1] < sizes[2]
    return nested and strict, f"total fiber sizes {sizes} (strictly nested: {nested and strict})"


def _surjective_lattice_maps(A: FinLattice, B: FinLattice):
    from .lattice import preserves_joins, preserves_meets

    for table in itertools.product(range(B.n), repeat=A.n):
        if set(table) != set(range(B.n)):
            continue
        if any(
            A.leq(i, j) and not B.leq(table[i], table[j])
            for i in range(A.n)
            for j in range(A.n)
        ):
            continue
        f = MonotoneMap(A, B, table)
        if preserves_joins(f) is None and preserves_meets(f) is None:
            yield f


def check_a11():
    'Surjections lift every source WBI to a unique strong-map WBI.'
    n_lifts = 0
    lattices = fixtures.fixture_lattices(4)
    for _, A in lattices:
        wbis = enumerate_implications(A, "wbi")
        for _, B in lattices:
            if B.n > A.n:
                continue
            for f in _surjective_lattice_maps(A, B):
                for imp in wbis:
                    lift_wbi(f, imp)  # uniqueness swept inside
                    n_lifts += 1
    return n_lifts > 0, f"{n_lifts} lifts checked across {len(lattices)} lattices"


CRITERIA = (
    ("A1", "implication", "dual axiomatizations accept the same tables", check_a1),
    ("A2", "implication", "open/closed criteria equivalence", check_a2),
    ("A3", "implication", "WBI = Boolean-interval cores", check_a3),
    ("A4", "topology", "space cores biject with WBI tables", check_a4),
    ("A5", "topology", "localizability matches flags and pullbacks", check_a5),
    ("A6", "knframe", "frame semantics and standard frame classes", check_a6),
    ("A7", "knframe", "fullification embeds; a flag can be lost", check_a7),
    ("A8", "represent", "prime-filter representation identities", check_a8),
    ("A9", "geometry", "classification counts 3/1/4", check_a9),
    ("A10", "geometry", "strict core-size hierarchy", check_a10),
    ("A11", "implication", "unique WBI lifting along surjections", check_a11),
)


def run_criteria(only: str | None = None) -> list[Finding]:
    out = []
    for cid, module, title, func in CRITERIA:
        if only and module != only and cid.lower() != only.lower():
            continue
        ok, detail = func()
        out.append(Finding(cid, module, title, ok, detail))
    return out
