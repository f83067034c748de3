"""The ``dendro`` command line."""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import io
from .algebras import enumerate_algebras, is_locally_constant
from .decalage import dendroidal_decalage, simplicial_decalage, validate_decalage
from .dendroidal.horns import HornProblem, elementary_faces, enumerate_horn_problems, solve_inner_horn
from .dendroidal.localization import canonical_corolla1, localize_truncated
from .dendroidal.presheaves import NerveBackend, representable
from .elements import ElementsOperad, RootFunctor, root_core_failures
from .export import ExportError, export
from .operads import Dendrex, FiniteOperad, TreeOperad
from .suites import SUITES, SuiteError, run_suite
from .tensor import TensorBoundWarning, tensor
from .trees import TreeError, canonical_tree, parse_tree, print_tree

FORMATS = ("text", "json", "dot")
DEFAULT_BOUND = 5


@dataclass(frozen=True)
class Config:
    bound: int = DEFAULT_BOUND
    word_bound: int = 3
    fmt: str = "text"

    def __post_init__(self) -> None:
        if self.bound < 1 or self.word_bound < 1:
            raise ValueError("bounds must be positive")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")


def default_bound() -> int:
    raw = os.environ.get("DENDRO_BOUND")
    if raw is None:
        return DEFAULT_BOUND
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"DENDRO_BOUND must be an integer, got {raw!r}") from None


def _out(text: str | bytes) -> None:
    if isinstance(text, bytes):
        sys.stdout.write(text.decode("utf-8"))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_operad(path: str) -> FiniteOperad:
    return io.operad_from_json(io.load(path))


def _dendrex_json(x: Dendrex) -> dict:
    return {"colors": {e: repr(c) for e, c in x.colors},
            "vertices": {v: repr(x.operad.op_key(p)) for v, p in x.vertex_ops}}


# -- commands -----------------------------------------------------------------------

def cmd_parse(args, cfg: Config) -> int:
    tree = parse_tree(args.tree)
    if cfg.fmt in ("json", "dot"):
        _out(export(tree, cfg.fmt))
        return 0
    canon, _ = canonical_tree(tree)
    _out(f"tree: {print_tree(tree)}\nedges: {len(tree.edges)}\nvertices: {tree.n_vertices}\n"
         f"leaves: {', '.join(sorted(tree.leaves))}\nshape: {tree.shape()}\ncanonical: {canon}")
    return 0


def cmd_nerve(args, cfg: Config) -> int:
    P = _load_operad(args.operad)
    tree = parse_tree(args.tree)
    xs = NerveBackend(P).dendrices(tree)
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("dendrices", {"tree": io.tree_to_json(tree), "count": len(xs),
                                                "dendrices": [_dendrex_json(x) for x in xs]})))
    else:
        _out(f"{len(xs)} dendrices at {tree}")
        for x in xs:
            _out("  " + ", ".join(f"{e}:{c}" for e, c in x.colors))
    return 0


def cmd_horn(args, cfg: Config) -> int:
    P = _load_operad(args.operad)
    X = NerveBackend(P)
    tree = parse_tree(args.tree)
    label = ("inner", args.inner_edge)
    if label not in elementary_faces(tree):
        raise SystemExit(f"{args.inner_edge!r} is not an inner edge of {tree}")
    counts = []
    for problem in enumerate_horn_problems(X, tree, label):
        counts.append(len(solve_inner_horn(X, HornProblem(tree, label, problem.family))))
    ok = all(c == 1 for c in counts)
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("horns", {"tree": io.tree_to_json(tree), "inner_edge": args.inner_edge,
                                            "problems": len(counts), "filler_counts": counts, "unique": ok})))
    else:
        _out(f"{len(counts)} horn problems; filler counts {sorted(set(counts))}; unique fillers: {ok}")
    return 0 if ok else 1


def cmd_localize(args, cfg: Config) -> int:
    X = io.presheaf_from_json(io.load(args.presheaf), cfg.bound)
    c1 = canonical_corolla1()
    pool = X.dendrices(c1)
    names = [s for s in (args.arrows or "").split(",") if s]
    chosen = []
    for name in names:
        found = [x for x in pool if isinstance(x, Dendrex) and x.operad.op_key(x.vertex_op[c1.root]) == name]
        if not found:
            raise SystemExit(f"no unary operation named {name!r}")
        chosen.append(found[0])
    L = localize_truncated(X, chosen)
    counts = {shape: len(xs) for shape, xs in sorted(L.elements.items())}
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("localization", {"bound": L.bound, "arrows": names, "counts": counts})))
    else:
        for shape, n in counts.items():
            _out(f"{shape}\t{n}")
    return 0


def _elements_for(args, cfg: Config) -> ElementsOperad:
    if args.tree:
        X = representable(parse_tree(args.tree))
    else:
        X = NerveBackend(_load_operad(args.operad))
    return ElementsOperad(X, cfg.bound)


def cmd_elements(args, cfg: Config) -> int:
    E = _elements_for(args, cfg)
    if args.count:
        _out(str(len(E.objects)))
        return 0
    if cfg.fmt in ("json", "dot"):
        _out(export(E, cfg.fmt, max_arity=args.max_arity))
        return 0
    for obj in E.objects:
        _out(repr(obj))
    return 0


def cmd_root(args, cfg: Config) -> int:
    tree = parse_tree(args.tree)
    canon, _ = canonical_tree(tree)
    problems = root_core_failures(canon, object_bound=args.object_bound)
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("root", {"tree": io.tree_to_json(canon), "passed": not problems,
                                           "failures": problems})))
    else:
        E = ElementsOperad(representable(canon), min(cfg.bound, canon.n_vertices))
        r = RootFunctor(E)
        for obj in E.objects:
            _out(f"{obj!r} -> {r.on_objects(obj)}")
        _out("root core: " + ("pass" if not problems else "FAIL " + "; ".join(problems)))
    return 0 if not problems else 1


def cmd_tensor(args, cfg: Config) -> int:
    P, Q = _load_operad(args.left), _load_operad(args.right)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TensorBoundWarning)
        TP = tensor(P, Q, cfg.word_bound)
    reps = TP.representatives()
    if args.signature:
        reps = [w for w in reps if _signature(TP, w) == args.signature.replace(" ", "")]
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("tensor", {
            "objects": len(TP.objects), "classes": TP.n_classes, "words": TP.n_words,
            "word_bound": cfg.word_bound, "frontier_touched": TP.frontier_touched,
            "representatives": [str(w) for w in reps]})))
    else:
        _out(f"objects: {len(TP.objects)}\nclasses: {TP.n_classes}\nfrontier touched: {TP.frontier_touched}")
        for w in reps:
            _out(f"  {_signature(TP, w)}  {w}")
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return 0


def _signature(TP, w) -> str:
    ins, out = TP.profile(w)
    fmt = lambda c: f"({c[0]},{c[1]})"
    return ",".join(fmt(c) for c in ins) + "->" + fmt(out)


def cmd_decalage(args, cfg: Config) -> int:
    if args.data in ("trees", "trees-root-preserving"):
        d = dendroidal_decalage(min(cfg.bound, 3), root_preserving_only=args.data.endswith("preserving"))
    elif args.data == "simplices":
        d = simplicial_decalage(min(cfg.bound, 3))
    else:
        d = io.decalage_from_json(io.load(args.data))
    report = validate_decalage(d)
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("decalage_report", {"name": d.name, **report.to_json()})))
    else:
        for r in report.results:
            _out(f"{'pass' if r.passed else 'FAIL'}  {r.name}  ({r.checked} checked)"
                 + (f"  {r.witness}" if r.witness else ""))
    return 0 if report.passed else 1


def cmd_algebras(args, cfg: Config) -> int:
    P = _load_operad(args.operad)
    algebras = enumerate_algebras(P, args.carrier_bound)
    names = [s for s in (args.locally_constant or "").split(",") if s]
    if names:
        ops = {P.op_key(p): p for p in P.iter_operations(1)}
        missing = [n for n in names if n not in ops]
        if missing:
            raise SystemExit(f"unknown unary operations: {', '.join(missing)}")
        algebras = [a for a in algebras if is_locally_constant(a, [ops[n] for n in names])]
    if cfg.fmt == "json":
        _out(io.dumps(io.envelope("algebras", {"count": len(algebras), "algebras": [a.to_json() for a in algebras]})))
    else:
        _out(f"{len(algebras)} algebras")
    return 0


def cmd_verify(args, cfg: Config) -> int:
    try:
        report = run_suite(args.suite, cfg.bound)
    except SuiteError as exc:
        raise SystemExit(str(exc)) from None
    if cfg.fmt == "json":
        _out(io.dumps(report))
    else:
        for c in report["checks"]:
            _out(f"{'pass' if c['passed'] else 'FAIL'}  {c['suite']}/{c['name']}  ({c['count']} instances)")
            for w in c["witnesses"]:
                _out(f"    {w}")
    return 0 if report["passed"] else 1


def cmd_export(args, cfg: Config) -> int:
    fmt = cfg.fmt if cfg.fmt != "text" else "json"
    if args.kind == "tree":
        obj = parse_tree(args.source)
    elif args.kind == "operad":
        obj = _load_operad(args.source)
    elif args.kind == "elements":
        obj = ElementsOperad(representable(parse_tree(args.source)), cfg.bound)
    else:
        raise SystemExit(f"unknown export kind {args.kind!r}")
    try:
        _out(export(obj, fmt))
    except ExportError as exc:
        raise SystemExit(str(exc)) from None
    return 0


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", "-k", type=int, default=None, help="vertex bound (default $DENDRO_BOUND or 5)")
    common.add_argument("--format", "-f", choices=FORMATS, default="text")

    parser = argparse.ArgumentParser(prog="dendro", description="Finite computations with trees, operads "
                                     "and dendroidal sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse a tree and print its invariants")
    p.add_argument("tree")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("nerve", parents=[common], help="dendrices of the nerve of an operad at a tree")
    p.add_argument("operad")
    p.add_argument("--tree", required=True)
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("horn", parents=[common], help="count fillers of every inner horn problem")
    p.add_argument("operad")
    p.add_argument("--tree", required=True)
    p.add_argument("--inner-edge", required=True)
    p.set_defaults(func=cmd_horn)

    p = sub.add_parser("localize", parents=[common], help="glue groupoid nerves along unary operations")
    p.add_argument("presheaf")
    p.add_argument("--arrows", default="")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("elements", parents=[common], help="the operad of elements of a nerve or representable")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--tree", help="use the representable on this tree")
    src.add_argument("--operad", help="use the nerve of this operad")
    p.add_argument("--count", action="store_true", help="print the number of objects only")
    p.add_argument("--max-arity", type=int, default=None, help="include operations up to this arity")
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("root", parents=[common], help="the root functor and its section on a representable")
    p.add_argument("tree")
    p.add_argument("--object-bound", type=int, default=None)
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("tensor", parents=[common], help="the Boardman-Vogt tensor product by generators and relations")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--word-bound", "-b", type=int, default=3)
    p.add_argument("--signature", default=None, help='e.g. "(a,x),(b,x)->(r,x)"')
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("decalage", parents=[common], help="validate an operadic décalage")
    p.add_argument("action", choices=["validate"])
    p.add_argument("data", help="a JSON file, or one of: trees, trees-root-preserving, simplices")
    p.set_defaults(func=cmd_decalage)

    p = sub.add_parser("algebras", parents=[common], help="enumerate set-valued algebras")
    p.add_argument("operad")
    p.add_argument("--carrier-bound", type=int, default=2)
    p.add_argument("--locally-constant", default="")
    p.set_defaults(func=cmd_algebras)

    p = sub.add_parser("verify", parents=[common], help="run an exhaustive verification suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="render a tree, operad or operad of elements")
    p.add_argument("kind", choices=["tree", "operad", "elements"])
    p.add_argument("source", help="tree grammar, or an operad JSON file")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    bound = args.bound if args.bound is not None else default_bound()
    try:
        cfg = Config(bound=bound, word_bound=getattr(args, "word_bound", 3), fmt=args.format)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(args, cfg)
    except (TreeError, io.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
