"""Named small lattices, spaces, frames, and categories used everywhere.

The lattice registry is complete up to isomorphism for each size it
covers (all bounded distributive lattices with at most five elements);
a test re-derives that from the poset inventory.  Running the module
writes the JSON corpus under fixtures/.

Usage: python3 -m impbench.fixtures [output-dir]
"""

from __future__ import annotations

import os
import sys

from .geometry import SpaceCategory, full_local_category
from .implication import heyting, trivial, wbi_from_core
from .knframe import KNFrame, find_fullify_flag_loss, standard_frame
from .lattice import FinLattice, MonotoneMap
from .represent import AdjointData
from .topology import FinSpace, wbs_from_core
from . import models


# -- lattices ---------------------------------------------------------------


def chain(n: int) -> FinLattice:
    if n < 1 or n > 9:
        raise ValueError("chains are provided for 1..9 elements")
    if n == 1:
        names = ["*"]
    elif n == 2:
        names = ["0", "1"]
    elif n == 3:
        names = ["0", "m", "1"]
    else:
        names = ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"]
    leq = [[1 if i <= j else 0 for j in range(n)] for i in range(n)]
    return FinLattice(names, leq)


def boolean_lattice(atoms: str) -> FinLattice:
    'Powerset of the named atoms, elements written "{x,y}" style.'
    from . import subsets

    atoms = tuple(atoms)
    masks = list(range(1 << len(atoms)))
    names = [subsets.name_of(atoms, m) for m in masks]
    leq = [[1 if u & ~v == 0 else 0 for v in masks] for u in masks]
    return FinLattice(names, leq)


def square() -> FinLattice:
    return boolean_lattice("xy")


def square_top() -> FinLattice:
    'The Boolean square with a new top above it.'
    names = ["0", "x", "y", "m", "1"]
    leq_pairs = {
        (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 1), (1, 3), (1, 4),
        (2, 2), (2, 3), (2, 4),
        (3, 3), (3, 4),
        (4, 4),
    }
    leq = [[1 if (i, j) in leq_pairs else 0 for j in range(5)] for i in range(5)]
    return FinLattice(names, leq)


def square_bottom() -> FinLattice:
    'The Boolean square with a new bottom below it.'
    names = ["0", "m", "x", "y", "1"]
    leq_pairs = {
        (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 1), (1, 2), (1, 3), (1, 4),
        (2, 2), (2, 4),
        (3, 3), (3, 4),
        (4, 4),
    }
    leq = [[1 if (i, j) in leq_pairs else 0 for j in range(5)] for i in range(5)]
    return FinLattice(names, leq)


def fixture_lattices(max_size: int = 5) -> list[tuple[str, FinLattice]]:
    """The registry: one lattice per isomorphism class, by size.

    Sizes 1..4 cover every bounded distributive lattice up to iso
    (chains plus the square); size 5 adds the three five-element
    classes.
    """
    registry = [
        ("point", chain(1)),
        ("chain2", chain(2)),
        ("chain3", chain(3)),
        ("chain4", chain(4)),
        ("square", square()),
        ("chain5", chain(5)),
        ("square-top", square_top()),
        ("square-bottom", square_bottom()),
    ]
    return [(name, L) for name, L in registry if L.n <= max_size]


# -- spaces -----------------------------------------------------------------


def empty_space() -> FinSpace:
    return FinSpace((), [0])


def point_space(name: str = "p") -> FinSpace:
    return FinSpace((name,), [0, 1])


def sierpinski() -> FinSpace:
    'Two points a, b with {a} the only proper open.'
    return FinSpace("ab", [0, 0b01, 0b11])


def discrete(points) -> FinSpace:
    pts = tuple(points)
    return FinSpace(pts, list(range(1 << len(pts))))


def indiscrete(points) -> FinSpace:
    pts = tuple(points)
    return FinSpace(pts, [0, (1 << len(pts)) - 1])


# -- frames -----------------------------------------------------------------


def closed_frame_kl() -> KNFrame:
    'Standard frame on k < l whose table is closed but not open.'
    return standard_frame("kl", [[1, 1], [0, 1]], [("l", "k"), ("k", "k")])


def open_frame_kl() -> KNFrame:
    'Standard frame on k < l with R the order, giving the Heyting table.'
    return standard_frame("kl", [[1, 1], [0, 1]], [("k", "k"), ("l", "l"), ("k", "l")])


def tiny_b_frame() -> KNFrame:
    """Non-full frame on a two-point antichain: B is only {empty, all},
    R swaps the points, and both points see the whole carrier.  Both
    frame flags hold but neither survives fullification.
    """
    return KNFrame(
        "kl",
        [[1, 0], [0, 1]],
        [("k", "l"), ("l", "k")],
        [0, 0b11],
        [[0b11], [0b11]],
    )


# -- categories -------------------------------------------------------------


def point_category() -> SpaceCategory:
    return full_local_category([point_space()])


def sierpinski_category() -> SpaceCategory:
    return full_local_category([sierpinski()])


def discrete2_category() -> SpaceCategory:
    return full_local_category([discrete("xy")])


def discrete3_injective_category() -> SpaceCategory:
    return full_local_category([discrete("xyz")], maps="injective")


# -- corpus -----------------------------------------------------------------


def write_fixtures(out_dir: str) -> list[str]:
    'Write the JSON corpus; returns the relative file names.'
    os.makedirs(out_dir, exist_ok=True)
    files = {}

    files["lattice-chain3.json"] = models.lattice_to_model(chain(3))
    files["lattice-square.json"] = models.lattice_to_model(square())
    files["implication-trivial-chain2.json"] = models.implication_to_model(
        trivial(chain(2))
    )
    files["implication-heyting-chain3.json"] = models.implication_to_model(
        heyting(chain(3))
    )
    files["space-sierpinski.json"] = models.space_to_model(sierpinski())
    files["strongspace-sierpinski-core-a.json"] = models.strongspace_to_model(
        wbs_from_core(sierpinski(), "a")
    )
    files["frame-closed-not-open.json"] = models.frame_to_model(closed_frame_kl())
    files["frame-tiny-b.json"] = models.frame_to_model(tiny_b_frame())

    L = chain(3)
    identity = MonotoneMap(L, L, tuple(range(L.n)))
    files["adjoints-identity-chain3.json"] = models.adjoints_to_model(
        AdjointData(L, identity, identity)
    )

    found, _, _ = find_fullify_flag_loss()
    files["frame-flag-loss.json"] = models.frame_to_model(found)

    files["category-point.json"] = models.category_to_model(point_category())
    files["category-sierpinski.json"] = models.category_to_model(sierpinski_category())
    files["category-discrete2.json"] = models.category_to_model(discrete2_category())

    for name, payload in files.items():
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(models.dumps(payload))
    return sorted(files)


def default_fixture_dir() -> str:
    return os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "fixtures")


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else default_fixture_dir()
    written = write_fixtures(target)
    for name in written:
        print(os.path.join(target, name))
