"""Shared text model format: JSON readers and writers for every kind.

One format across library, fixtures, and CLI.  Tables always use
element and point names, never indices, so edited models keep their
reports readable.  Dumps are canonical: sorted keys, two-space indent,
trailing newline.
"""

from __future__ import annotations

import json

from .errors import Diagnostic
from .geometry import FiberAssignment, SpaceCategory
from .implication import Implication, validate_implication
from .knframe import KNFrame, _validate_poset, standard_frame
from .lattice import FinLattice
from .represent import AdjointData
from .topology import ContinuousMap, FinSpace, StrongSpace, open_lattice
from . import subsets

KINDS = (
    "lattice",
    "implication",
    "space",
    "map",
    "frame",
    "adjoints",
    "category",
    "strongspace",
)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise Diagnostic("parse-error", f"{where} model needs field '{key}'")
    return d[key]


# -- lattices ---------------------------------------------------------------


def lattice_to_model(L: FinLattice) -> dict:
    return {
        "elements": list(L.elements),
        "leq": [[1 if L.leq(i, j) else 0 for j in range(L.n)] for i in range(L.n)],
    }


def lattice_from_model(d: dict) -> FinLattice:
    return FinLattice(_need(d, "elements", "lattice"), _need(d, "leq", "lattice"))


def implication_to_model(imp: Implication) -> dict:
    els = imp.lattice.elements
    return {
        "lattice": lattice_to_model(imp.lattice),
        "table": [[els[v] for v in row] for row in imp.table],
    }


def implication_from_model(d: dict) -> Implication:
    L = lattice_from_model(_need(d, "lattice", "implication"))
    return validate_implication(L, _need(d, "table", "implication"))


# -- spaces -----------------------------------------------------------------


def space_to_model(X: FinSpace) -> dict:
    return {
        "points": list(X.points),
        "opens": [sorted(subsets.members(X.points, u)) for u in X.opens],
    }


def space_from_model(d: dict) -> FinSpace:
    return FinSpace(_need(d, "points", "space"), _need(d, "opens", "space"))


def map_to_model(f: ContinuousMap) -> dict:
    return {
        "source": space_to_model(f.source),
        "target": space_to_model(f.target),
        "map": {p: f.target.points[j] for p, j in zip(f.source.points, f.table)},
    }


def map_from_model(d: dict) -> ContinuousMap:
    src = space_from_model(_need(d, "source", "map"))
    tgt = space_from_model(_need(d, "target", "map"))
    return ContinuousMap(src, tgt, _need(d, "map", "map"))


def strongspace_to_model(S: StrongSpace) -> dict:
    X = S.space
    names = [X.open_name(u) for u in X.opens]
    return {
        "space": space_to_model(X),
        "table": [[names[v] for v in row] for row in S.imp.table],
    }


def strongspace_from_model(d: dict) -> StrongSpace:
    X = space_from_model(_need(d, "space", "strongspace"))
    L = open_lattice(X)
    return StrongSpace(X, validate_implication(L, _need(d, "table", "strongspace")))


# -- frames -----------------------------------------------------------------


def frame_to_model(K: KNFrame) -> dict:
    n = len(K.points)
    out = {
        "points": list(K.points),
        "leq": [[K.up[i] >> j & 1 for j in range(n)] for i in range(n)],
        "R": sorted(
            [K.points[i], K.points[j]]
            for i in range(n)
            for j in range(n)
            if K.succ[i] >> j & 1
        ),
    }
    if not K.is_full():
        out["B"] = [sorted(subsets.members(K.points, m)) for m in K.B]
    if not K.is_standard():
        out.setdefault("B", [sorted(subsets.members(K.points, m)) for m in K.B])
        out["N"] = {
            p: [sorted(subsets.members(K.points, m)) for m in subsets.canonical_sort(K.N[i])]
            for i, p in enumerate(K.points)
        }
    return out


def frame_from_model(d: dict) -> KNFrame:
    points = _need(d, "points", "frame")
    leq = _need(d, "leq", "frame")
    R = _need(d, "R", "frame")
    if "B" not in d and "N" not in d:
        return standard_frame(points, leq, [tuple(p) for p in R])
    pts = tuple(str(p) for p in points)
    n = len(pts)
    B = d.get("B", [list(s) for s in _all_subsets(pts)])
    if "N" in d:
        N = [d["N"].get(p, []) for p in pts]
    else:
        # point sees the upsets in B containing it
        up = _validate_poset(pts, leq)
        masks = [subsets.mask_of(pts, s) for s in B]
        ups = [
            m
            for m in masks
            if all(up[i] & ~m == 0 for i in range(n) if m >> i & 1)
        ]
        N = [
            [sorted(subsets.members(pts, u)) for u in ups if u >> i & 1]
            for i in range(n)
        ]
    return KNFrame(pts, leq, [tuple(p) for p in R], B, N)


def _all_subsets(points):
    pts = tuple(points)
    for mask in range(1 << len(pts)):
        yield sorted(subsets.members(pts, mask))


# -- adjoint data -----------------------------------------------------------


def adjoints_to_model(D: AdjointData) -> dict:
    els = D.lattice.elements
    return {
        "lattice": lattice_to_model(D.lattice),
        "nabla": {e: els[D.nabla(i)] for i, e in enumerate(els)},
        "F": {e: els[D.F(i)] for i, e in enumerate(els)},
    }


def adjoints_from_model(d: dict) -> AdjointData:
    L = lattice_from_model(_need(d, "lattice", "adjoints"))
    nabla = _need(d, "nabla", "adjoints")
    F = _need(d, "F", "adjoints")
    return AdjointData(L, dict(nabla), dict(F))


# -- categories -------------------------------------------------------------


def category_to_model(S: SpaceCategory, names=None) -> dict:
    if names is None:
        names = [f"S{i}" for i in range(len(S.objects))]
    by_obj = dict(zip(S.objects, names))
    return {
        "spaces": {by_obj[X]: space_to_model(X) for X in S.objects},
        "maps": [
            {
                "name": f"f{i}",
                "source": by_obj[f.source],
                "target": by_obj[f.target],
                "map": {p: f.target.points[j] for p, j in zip(f.source.points, f.table)},
            }
            for i, f in enumerate(S.maps)
        ],
    }


def category_from_model(d: dict) -> tuple[SpaceCategory, dict]:
    'The category plus the name -> object mapping used by assignments.'
    spaces = {
        name: space_from_model(m) for name, m in _need(d, "spaces", "category").items()
    }
    maps = []
    for m in _need(d, "maps", "category"):
        src = spaces[_need(m, "source", "category map")]
        tgt = spaces[_need(m, "target", "category map")]
        maps.append(ContinuousMap(src, tgt, _need(m, "map", "category map")))
    objects = [spaces[name] for name in sorted(spaces)]
    return SpaceCategory(objects, maps), spaces


def assignment_to_model(A: FiberAssignment, names: dict) -> dict:
    'names maps space name -> FinSpace, as returned by category_from_model.'
    by_obj = {X: name for name, X in names.items()}
    out = {}
    for X in A.category.objects:
        open_names = [X.open_name(u) for u in X.opens]
        out[by_obj[X]] = [
            [[open_names[v] for v in row] for row in imp.table] for imp in A.fibers[X]
        ]
    return out


def assignment_from_model(d: dict, category: SpaceCategory, names: dict) -> FiberAssignment:
    fibers = {}
    for name, tables in d.items():
        if name not in names:
            raise Diagnostic("parse-error", "assignment names an unknown space", name)
        X = names[name]
        L = open_lattice(X)
        fibers[X] = [validate_implication(L, t) for t in tables]
    return FiberAssignment(category, fibers)


# -- entry point ------------------------------------------------------------

_LOADERS = {
    "lattice": lattice_from_model,
    "implication": implication_from_model,
    "space": space_from_model,
    "map": map_from_model,
    "frame": frame_from_model,
    "adjoints": adjoints_from_model,
    "category": category_from_model,
    "strongspace": strongspace_from_model,
}


def parse_model(path: str, kind: str):
    'Load and validate a model file of the given kind.'
    if kind not in _LOADERS:
        raise Diagnostic("parse-error", "unknown model kind", kind)
    return _LOADERS[kind](_read_json(path))


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise Diagnostic("parse-error", f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise Diagnostic(
            "parse-error", f"{path} is not valid JSON (line {exc.lineno}, column {exc.colno})"
        ) from exc


def parse_assignment(path: str, category, names: dict):
    'Load a fiber assignment against an already-loaded category.'
    return assignment_from_model(_read_json(path), category, names)
