"""Rendered reports: Hasse diagrams and frame digraphs as PNG files,
with the matching tables as delimited CSV next to them.

Every renderer takes an output directory and a stem and returns the
paths it wrote.  Figures use the Agg backend so the functions work in
batch runs.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .implication import Implication, classify, enumerate_implications
from .knframe import KNFrame, frame_algebra, frame_class
from .lattice import FinLattice
from .topology import FinSpace, classify_space, open_lattice, wbs_enumerate


def _covers(L: FinLattice):
    out = []
    for a in range(L.n):
        for b in range(L.n):
            if a == b or not L.leq(a, b):
                continue
            if any(L.leq(a, c) and L.leq(c, b) for c in range(L.n) if c not in (a, b)):
                continue
            out.append((a, b))
    return out


def hasse_positions(L: FinLattice) -> dict[int, tuple[float, float]]:
    'Layered layout: height = longest chain from bottom, centered rows.'
    height = [0] * L.n
    for a in sorted(range(L.n), key=lambda i: bin(L.down[i]).count("1")):
        below = [height[b] + 1 for b in range(L.n) if b != a and L.leq(b, a)]
        height[a] = max(below, default=0)
    rows: dict[int, list[int]] = {}
    for a in range(L.n):
        rows.setdefault(height[a], []).append(a)
    pos = {}
    for h, row in rows.items():
        row.sort()
        for k, a in enumerate(row):
            pos[a] = (k - (len(row) - 1) / 2.0, float(h))
    return pos


def draw_hasse(L: FinLattice, ax, node_color: str = "#4878d0") -> None:
    pos = hasse_positions(L)
    for a, b in _covers(L):
        xa, ya = pos[a]
        xb, yb = pos[b]
        ax.plot([xa, xb], [ya, yb], color="#999999", lw=1.2, zorder=1)
    xs = [pos[a][0] for a in range(L.n)]
    ys = [pos[a][1] for a in range(L.n)]
    ax.scatter(xs, ys, s=320, color=node_color, zorder=2, edgecolors="black")
    for a in range(L.n):
        ax.annotate(
            L.elements[a],
            pos[a],
            ha="center",
            va="center",
            fontsize=8,
            color="white",
            zorder=3,
        )
    ax.set_axis_off()
    ax.margins(0.2)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def render_lattice(L: FinLattice, out_dir: str, stem: str) -> list[str]:
    'Hasse figure plus the order relation as CSV.'
    os.makedirs(out_dir, exist_ok=True)
    fig_path = os.path.join(out_dir, f"{stem}.png")
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    fig, ax = plt.subplots(figsize=(4, 4))
    draw_hasse(L, ax)
    ax.set_title(f"lattice on {L.n} elements")
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    _write_csv(
        csv_path,
        ["element"] + list(L.elements),
        [
            [L.elements[i]] + [1 if L.leq(i, j) else 0 for j in range(L.n)]
            for i in range(L.n)
        ],
    )
    return [fig_path, csv_path]


def render_implication(imp: Implication, out_dir: str, stem: str) -> list[str]:
    'Hasse figure annotated with the class flags, table as CSV.'
    os.makedirs(out_dir, exist_ok=True)
    L = imp.lattice
    cls = classify(imp)
    fig_path = os.path.join(out_dir, f"{stem}.png")
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    fig, ax = plt.subplots(figsize=(4, 4.5))
    draw_hasse(L, ax, node_color="#d65f5f" if cls.weakly_boolean else "#4878d0")
    flags = ", ".join(
        name
        for name, v in (
            ("open", cls.open),
            ("closed", cls.closed),
            ("wbi", cls.weakly_boolean),
        )
        if v
    )
    core = f", core={cls.core}" if cls.core is not None else ""
    ax.set_title(f"implication: {flags or 'plain'}{core}", fontsize=9)
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    els = L.elements
    _write_csv(
        csv_path,
        ["->"] + list(els),
        [[els[a]] + [els[imp.table[a][b]] for b in range(L.n)] for a in range(L.n)],
    )
    return [fig_path, csv_path]


def render_space(X: FinSpace, out_dir: str, stem: str) -> list[str]:
    'Open-set lattice figure plus the cores and flags as CSV.'
    os.makedirs(out_dir, exist_ok=True)
    L = open_lattice(X)
    cls = classify_space(X)
    fig_path = os.path.join(out_dir, f"{stem}.png")
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    fig, ax = plt.subplots(figsize=(4, 4.5))
    draw_hasse(L, ax, node_color="#6acc64")
    ax.set_title(f"open sets of {{{','.join(X.points)}}}", fontsize=9)
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    cores = [X.open_name(m) for m, _ in wbs_enumerate(X)]
    rows = [
        ["discrete", int(cls.discrete)],
        ["indiscrete", int(cls.indiscrete)],
        ["locally_indiscrete", int(cls.locally_indiscrete)],
        ["t0", int(cls.t0)],
        ["open_irreducible", int(cls.open_irreducible)],
        ["closed_irreducible", int(cls.closed_irreducible)],
        ["cores", " ".join(cores)],
    ]
    _write_csv(csv_path, ["property", "value"], rows)
    return [fig_path, csv_path]


def render_frame(K: KNFrame, out_dir: str, stem: str) -> list[str]:
    'Poset layout with R as arrows, algebra table and flags as CSV.'
    os.makedirs(out_dir, exist_ok=True)
    n = len(K.points)
    leq = [[K.up[i] >> j & 1 for j in range(n)] for i in range(n)]
    height = [0] * n
    for a in sorted(range(n), key=lambda i: bin(K.up[i]).count("1"), reverse=True):
        below = [height[b] + 1 for b in range(n) if b != a and K.up[b] >> a & 1]
        height[a] = max(below, default=0)
    rows: dict[int, list[int]] = {}
    for a in range(n):
        rows.setdefault(height[a], []).append(a)
    pos = {}
    for h, row in rows.items():
        row.sort()
        for k, a in enumerate(row):
            pos[a] = (k - (len(row) - 1) / 2.0, float(h))

    fig_path = os.path.join(out_dir, f"{stem}.png")
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for a in range(n):
        for b in range(n):
            if a != b and leq[a][b]:
                if any(c not in (a, b) and leq[a][c] and leq[c][b] for c in range(n)):
                    continue
                ax.plot(
                    [pos[a][0], pos[b][0]],
                    [pos[a][1], pos[b][1]],
                    color="#bbbbbb",
                    lw=1.2,
                    zorder=1,
                )
    for a in range(n):
        for b in range(n):
            if K.succ[a] >> b & 1:
                if a == b:
                    ax.annotate(
                        "R",
                        (pos[a][0] + 0.12, pos[a][1] + 0.12),
                        fontsize=7,
                        color="#d65f5f",
                    )
                    continue
                arrow = FancyArrowPatch(
                    pos[a],
                    pos[b],
                    connectionstyle="arc3,rad=0.25",
                    arrowstyle="-|>",
                    color="#d65f5f",
                    mutation_scale=12,
                    lw=1.4,
                    zorder=2,
                    shrinkA=12,
                    shrinkB=12,
                )
                ax.add_patch(arrow)
    xs = [pos[a][0] for a in range(n)]
    ys = [pos[a][1] for a in range(n)]
    ax.scatter(xs, ys, s=340, color="#4878d0", zorder=3, edgecolors="black")
    for a in range(n):
        ax.annotate(
            K.points[a], pos[a], ha="center", va="center", fontsize=9, color="white", zorder=4
        )
    fc = frame_class(K, check_algebra=False)
    ax.set_title(
        f"frame: open={fc.open_frame}, closed={fc.closed_frame}", fontsize=9
    )
    ax.set_axis_off()
    ax.margins(0.25)
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)

    alg = frame_algebra(K)
    els = alg.implication.lattice.elements
    table_rows = [
        [els[a]] + [els[alg.implication.table[a][b]] for b in range(len(els))]
        for a in range(len(els))
    ]
    _write_csv(csv_path, ["->"] + list(els), table_rows)
    return [fig_path, csv_path]


def render_enumeration(L: FinLattice, out_dir: str, stem: str, guard=None) -> list[str]:
    'Class counts as a bar figure, per-table classification as CSV.'
    os.makedirs(out_dir, exist_ok=True)
    imps = enumerate_implications(L, guard=guard)
    fig_path = os.path.join(out_dir, f"{stem}.png")
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    labels = ("all", "open", "closed", "wbi", "meet-int", "join-int")
    counts = [len(imps), 0, 0, 0, 0, 0]
    rows = []
    els = L.elements
    for imp in imps:
        cls = classify(imp)
        counts[1] += cls.open
        counts[2] += cls.closed
        counts[3] += cls.weakly_boolean
        counts[4] += cls.meet_internalizing
        counts[5] += cls.join_internalizing
        rows.append(
            [
                " ".join(els[v] for v in imp.flat()),
                int(cls.open),
                int(cls.closed),
                int(cls.weakly_boolean),
                int(cls.meet_internalizing),
                int(cls.join_internalizing),
                cls.core if cls.core is not None else "",
            ]
        )
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(labels, counts, color="#4878d0")
    for i, c in enumerate(counts):
        ax.annotate(str(c), (i, c), ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("tables")
    ax.set_title(f"implications on {L.n} elements", fontsize=9)
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    _write_csv(
        csv_path,
        ["table", "open", "closed", "wbi", "meet_int", "join_int", "core"],
        rows,
    )
    return [fig_path, csv_path]
