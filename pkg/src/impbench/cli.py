"""Batch command-line front end.

One verb per invocation; models travel in the shared JSON format (see
`models`).  Text reports show timing, JSON reports omit it so identical
inputs produce byte-identical output.  The exit code is 0 exactly when
the report status is ok.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import fixtures, models, report, subsets
from .acceptance import run_criteria
from .errors import Diagnostic
from .geometry import canonical_fibers, enumerate_geometric, is_geometric
from .implication import classify, enumerate_implications
from .knframe import frame_algebra, frame_class, fullify
from .represent import build_representation
from .topology import (
    StrongSpace,
    classify_map,
    classify_space,
    localizability,
    open_lattice,
    wbs_enumerate,
    wbs_from_core,
)

GUARD_ENV = "IMPBENCH_GUARD"


class Report:
    def __init__(self):
        self.findings: list[tuple[str, object]] = []
        self.ok = True

    def add(self, name: str, value) -> None:
        self.findings.append((name, value))

    def fail(self, name: str, witness) -> None:
        self.ok = False
        self.add(name, witness)


def _emit(rep: Report, fmt: str, started: float) -> int:
    if fmt == "json":
        body = {
            "status": "ok" if rep.ok else "fail",
            "findings": [{"name": n, "value": v} for n, v in rep.findings],
        }
        sys.stdout.write(models.dumps(body))
    else:
        for name, value in rep.findings:
            print(f"{name}: {value}")
        ms = int((time.time() - started) * 1000)
        print(f"status: {'ok' if rep.ok else 'fail'} ({ms} ms)")
    return 0 if rep.ok else 1


def _guard(args) -> int | None:
    if getattr(args, "guard", None) is not None:
        return args.guard
    raw = os.environ.get(GUARD_ENV)
    return int(raw) if raw else None


def _table_names(imp) -> list[list[str]]:
    L = imp.lattice
    return [[L.elements[v] for v in row] for row in imp.table]


def _flags(rep: Report, obj, names) -> None:
    for field in names:
        rep.add(field.replace("_", "-"), getattr(obj, field))


# -- verb handlers ----------------------------------------------------------


def cmd_validate(args, rep: Report) -> None:
    value = models.parse_model(args.path, args.kind)
    if args.kind == "category":
        value, _ = value
    rep.add("kind", args.kind)
    rep.add("valid", True)
    rep.add("value", repr(value))


def cmd_classify(args, rep: Report) -> None:
    if args.implication:
        imp = models.parse_model(args.implication, "implication")
        cls = classify(imp)
        _flags(rep, cls, ("open", "closed"))
        rep.add("wbi", cls.weakly_boolean)
        _flags(rep, cls, ("meet_internalizing", "join_internalizing"))
        rep.add("core", cls.core if cls.core is not None else "-")
    elif args.space:
        X = models.parse_model(args.space, "space")
        _flags(rep, classify_space(X), SPACE_FLAGS)
    elif args.map:
        f = models.parse_model(args.map, "map")
        _flags(rep, classify_map(f), MAP_FLAGS)
    elif args.strongspace:
        S = models.parse_model(args.strongspace, "strongspace")
        cls = classify(S.imp)
        rep.add("open", cls.open)
        rep.add("closed", cls.closed)
        rep.add("wbi", cls.weakly_boolean)
        rep.add("localizable-open", localizability(S, "open").ok)
        rep.add("localizable-closed", localizability(S, "closed").ok)
    else:
        K = models.parse_model(args.frame, "frame")
        fc = frame_class(K)
        rep.add("open-frame", fc.open_frame)
        rep.add("closed-frame", fc.closed_frame)


SPACE_FLAGS = (
    "discrete",
    "indiscrete",
    "locally_indiscrete",
    "t0",
    "hausdorff",
    "open_irreducible",
    "closed_irreducible",
)
MAP_FLAGS = (
    "continuous",
    "injective",
    "surjective",
    "open",
    "closed",
    "embedding",
    "open_irreducible",
    "closed_irreducible",
)


def cmd_enumerate(args, rep: Report) -> None:
    L = models.parse_model(args.lattice, "lattice")
    predicate = None if args.filter == "all" else args.filter
    found = enumerate_implications(L, predicate, guard=_guard(args), cap=args.cap)
    rep.add("lattice", "/".join(L.elements))
    rep.add("filter", args.filter)
    rep.add("count", len(found))
    if args.list:
        rep.add("tables", [_table_names(imp) for imp in found])


def cmd_wbs(args, rep: Report) -> None:
    X = models.parse_model(args.space, "space")
    if args.core:
        mask = subsets.parse_name(X.points, args.core)
        S = wbs_from_core(X, mask)
        rep.add("core", X.open_name(mask))
        rep.add("table", [[X.open_name(S.arrow(u, v)) for v in X.opens] for u in X.opens])
    else:
        cores = wbs_enumerate(X)
        rep.add("count", len(cores))
        rep.add("cores", [X.open_name(m) for m, _ in cores])


def _parse_query_side(K, text: str) -> int:
    body = text.strip()
    if body in ("K", "X", "all"):
        return (1 << len(K.points)) - 1
    if body in ("empty", "0"):
        return 0
    if body in K.points:
        return 1 << K.points.index(body)
    return subsets.parse_name(K.points, body)


def cmd_frame(args, rep: Report) -> None:
    K = models.parse_model(args.frame, "frame")
    if args.action == "class":
        fc = frame_class(K)
        rep.add("open-frame", fc.open_frame)
        rep.add("closed-frame", fc.closed_frame)
        for mode, witness in fc.witnesses.items():
            rep.add(f"{mode}-witness", witness)
    elif args.action == "algebra":
        alg = frame_algebra(K)
        ups = K.upsets_in_b()
        rep.add("upsets", [K.open_name(u) for u in ups])
        if args.query:
            left, _, right = args.query.partition("->")
            if not _:
                raise Diagnostic("bad-input", "query must look like 'U -> V'", args.query)
            u = _parse_query_side(K, left)
            v = _parse_query_side(K, right)
            rep.add("query", f"{K.open_name(u)} -> {K.open_name(v)}")
            rep.add("result", K.open_name(alg.arrow(u, v)))
        else:
            rep.add(
                "table",
                [[K.open_name(alg.arrow(u, v)) for v in ups] for u in ups],
            )
    else:  # fullify
        before = frame_class(K)
        full = fullify(K)
        after = frame_class(full)
        rep.add("open-frame", f"{before.open_frame} -> {after.open_frame}")
        rep.add("closed-frame", f"{before.closed_frame} -> {after.closed_frame}")
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(models.dumps(models.frame_to_model(full)))
            rep.add("written", args.out)


def cmd_represent(args, rep: Report) -> None:
    D = models.parse_model(args.adjoints, "adjoints")
    result = build_representation(D)
    rep.add("filters", len(result.filters))
    rep.add("points", list(result.frame.points))
    for name, ok in result.checks:
        rep.add(name, ok)
    rep.add("table", _table_names(result.algebra.implication))


def cmd_geometry(args, rep: Report) -> None:
    S, names = models.parse_model(args.category, "category")
    label = {X: n for n, X in names.items()}
    order = [label[X] for X in S.objects]
    if args.action == "check":
        if not args.assignment:
            raise Diagnostic("bad-input", "check needs --assignment")
        A = models.parse_assignment(args.assignment, S, names)
        res = is_geometric(S, A)
        rep.add("geometric", res.ok)
        if not res.ok:
            rep.fail("witness", str(res.witness))
    elif args.action == "canonical":
        A = canonical_fibers(S, args.kind)
        rep.add("kind", args.kind)
        rep.add("sizes", {o: len(A.fibers[X]) for o, X in zip(order, S.objects)})
    else:
        found = enumerate_geometric(S, reduce=not args.no_reduce)
        rep.add("objects", order)
        rep.add("count", len(found))
        if args.list:
            rep.add(
                "assignments",
                [
                    {o: [list(im.flat()) for im in A.fibers[X]] for o, X in zip(order, S.objects)}
                    for A in found
                ],
            )


def cmd_report(args, rep: Report) -> None:
    os.makedirs(args.out, exist_ok=True)
    if args.lattice:
        files = report.render_lattice(
            models.parse_model(args.lattice, "lattice"), args.out, args.stem
        )
    elif args.implication:
        files = report.render_implication(
            models.parse_model(args.implication, "implication"), args.out, args.stem
        )
    elif args.space:
        files = report.render_space(models.parse_model(args.space, "space"), args.out, args.stem)
    elif args.frame:
        files = report.render_frame(models.parse_model(args.frame, "frame"), args.out, args.stem)
    else:
        files = report.render_enumeration(
            models.parse_model(args.enumeration, "lattice"), args.out, args.stem, _guard(args)
        )
    for path in files:
        rep.add("written", path)


def cmd_fixtures(args, rep: Report) -> None:
    for path in fixtures.write_fixtures(args.out):
        rep.add("written", path)


def cmd_selftest(args, rep: Report) -> None:
    findings = run_criteria(args.only)
    if not findings:
        raise Diagnostic("bad-input", "no criterion matches", args.only)
    for f in findings:
        rep.add(f.criterion, f"{'pass' if f.ok else 'FAIL'} [{f.module}] {f.title}")
        if not f.ok:
            rep.fail(f"{f.criterion}-detail", f.detail)
        elif args.verbose:
            rep.add(f"{f.criterion}-detail", f.detail)


# -- argument wiring --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="impbench",
        description="classify, enumerate and audit implication structures",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="parse and validate one model file")
    v.add_argument("path")
    v.add_argument("--kind", choices=models.KINDS, required=True)

    c = sub.add_parser("classify", help="flags for one model")
    g = c.add_mutually_exclusive_group(required=True)
    for opt in ("implication", "space", "map", "strongspace", "frame"):
        g.add_argument(f"--{opt}")

    e = sub.add_parser("enumerate", help="implication tables on a lattice")
    e.add_argument("--lattice", required=True)
    e.add_argument("--filter", choices=("all", "open", "closed", "wbi"), default="all")
    e.add_argument("--guard", type=int)
    e.add_argument("--cap", type=int)
    e.add_argument("--list", action="store_true", help="include the tables themselves")

    w = sub.add_parser("wbs", help="strong structures on a space")
    w.add_argument("--space", required=True)
    w.add_argument("--core", help="build the structure for one closed core, e.g. '{a}'")

    f = sub.add_parser("frame", help="frame classification and algebra queries")
    f.add_argument("action", choices=("class", "algebra", "fullify"), nargs="?", default="class")
    f.add_argument("--frame", required=True)
    f.add_argument("--query", help="arrow lookup by point names, e.g. 'K -> {l}'")
    f.add_argument("--out", help="where to write the fullified frame model")

    r = sub.add_parser("represent", help="prime-filter frame for adjoint data")
    r.add_argument("--adjoints", required=True)

    ge = sub.add_parser("geometry", help="fiber assignments over a category")
    ge.add_argument("action", choices=("enumerate", "check", "canonical"), nargs="?", default="enumerate")
    ge.add_argument("--category", required=True)
    ge.add_argument("--assignment")
    ge.add_argument("--kind", default="t")
    ge.add_argument("--no-reduce", action="store_true")
    ge.add_argument("--list", action="store_true")

    rp = sub.add_parser("report", help="render figures and delimited tables")
    rp.add_argument("--out", required=True)
    rp.add_argument("--stem", default="model")
    rp.add_argument("--guard", type=int)
    g = rp.add_mutually_exclusive_group(required=True)
    for opt in ("lattice", "implication", "space", "frame", "enumeration"):
        g.add_argument(f"--{opt}")

    fx = sub.add_parser("fixtures", help="write the bundled fixture models")
    fx.add_argument("--out", default=fixtures.default_fixture_dir())

    s = sub.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--only", help="restrict to one module or criterion id")
    s.add_argument("--verbose", action="store_true")

    return p


HANDLERS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "wbs": cmd_wbs,
    "frame": cmd_frame,
    "represent": cmd_represent,
    "geometry": cmd_geometry,
    "report": cmd_report,
    "fixtures": cmd_fixtures,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.time()
    rep = Report()
    try:
        HANDLERS[args.verb](args, rep)
    except Diagnostic as exc:
        rep.fail("diagnostic", str(exc))
        if exc.witness is not None:
            rep.add("witness", str(exc.witness))
    return _emit(rep, args.format, started)


if __name__ == "__main__":
    sys.exit(main())
