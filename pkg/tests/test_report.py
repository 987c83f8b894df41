from __future__ import annotations

import csv
import os

from impbench.fixtures import closed_frame_kl, sierpinski, square
from impbench.implication import heyting
from impbench.report import (
    hasse_positions,
    render_enumeration,
    render_frame,
    render_implication,
    render_lattice,
    render_space,
)


def test_hasse_positions_rank_by_height():
    L = square()
    pos = hasse_positions(L)
    assert pos[L.bottom][1] < pos[L.index("{x}")][1] < pos[L.top][1]
    assert pos[L.index("{x}")][1] == pos[L.index("{y}")][1]


def test_render_lattice_writes_png_and_csv(tmp_path):
    files = render_lattice(square(), str(tmp_path), "sq")
    assert [os.path.basename(p) for p in files] == ["sq.png", "sq.csv"]
    assert all(os.path.getsize(p) > 0 for p in files)


def test_render_implication_table_csv(tmp_path):
    imp = heyting(square())
    _, csv_path = render_implication(imp, str(tmp_path), "hey")
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "->"
    assert len(rows) == imp.lattice.n + 1
    assert rows[1][0] == imp.lattice.elements[0]


def test_render_space_and_frame(tmp_path):
    for out in render_space(sierpinski(), str(tmp_path), "sp"):
        assert os.path.getsize(out) > 0
    for out in render_frame(closed_frame_kl(), str(tmp_path), "fr"):
        assert os.path.getsize(out) > 0


def test_render_enumeration_summarizes_counts(tmp_path):
    from impbench.fixtures import chain

    _, csv_path = render_enumeration(chain(3), str(tmp_path), "c3")
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    # header plus one row per table
    assert len(rows) == 10
