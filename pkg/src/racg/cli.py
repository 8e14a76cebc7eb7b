"""``racg`` command-line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import embed, geometry
from .coloring import coloring_for
from .errors import RACGError
from .group import CommutationGraph, GroupElement, parse_document, reduce
from .harness import SUITES, builtin_group, run_suite


def load_group(source: str):
    """Resolve ``--group``: ``builtin:NAME``, a file path, or a bare builtin name.

    Returns ``(graph, declared colours or None, display name)``.
    """
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        return builtin_group(name), None, name
    path = Path(source)
    if path.is_file():
        doc = parse_document(path.read_text(encoding="utf-8"))
        return doc.graph, doc.colours, str(path)
    return builtin_group(source), None, source


def parse_word(g: CommutationGraph, text: str) -> GroupElement:
    tokens = text.split()
    if tokens == ["1"] and "1" not in g.generators:
        tokens = []
    return reduce(tokens, g)


def _global_flags(parser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--group", default=default("hexagon"),
                        help="group file or builtin:NAME (hexagon, pentagon, free-k, cube-k)")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for sampled checks")
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="emit JSON instead of text")
    parser.add_argument("--no-timing", action="store_true", default=default(False),
                        help="report wall_clock as 0 so reports are byte-identical")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="racg", description=__doc__)
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        return p

    p = add("reduce", "normal form of a word")
    p.add_argument("word", nargs="*", help="generator names")

    p = add("ball", "enumerate the ball around the identity")
    p.add_argument("--radius", type=int, required=True)

    p = add("geodesic", "geodesic between two elements")
    p.add_argument("a")
    p.add_argument("b")

    p = add("median", "median of three elements")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")

    p = add("walls", "walls crossed between two elements")
    p.add_argument("a")
    p.add_argument("b")

    add("color", "colouring used for the embeddings")

    for name in ("embed-mu", "embed-psi"):
        p = add(name, "tree coordinates, one JSON record per element")
        p.add_argument("elements", nargs="*", help="words; defaults to the whole ball")
        p.add_argument("--radius", type=int, default=2)
        p.add_argument("--r-local", type=int, default=3)

    p = add("export-tree", "visited part of one colour tree as DOT")
    p.add_argument("--colour", "--color", dest="colour", type=int, default=1)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--map", choices=("mu", "psi"), default="mu")
    p.add_argument("--r-local", type=int, default=3)

    p = add("verify", "run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--r-local", type=int, default=3)
    return parser


def _emit(args, obj, text):
    if args.json:
        print(json.dumps(obj))
    else:
        print(text)


def _words(xs):
    return [str(x) for x in xs]


def _reflection_record(r: geometry.Reflection) -> dict:
    return {"element": str(r), "generator": r.generator, "colour": r.colour, "level": r.level}


def _targets(args, g):
    if args.elements:
        return [parse_word(g, w) for w in args.elements]
    return list(geometry.ball(g, args.radius).elements)


def _render_label(x) -> str:
    if isinstance(x, embed.FinLabel):
        return f"{x.generator}:{x.digest()[:8]}"
    return f"[{x}]"


def _tree_dot(points, colour: int) -> str:
    nodes = {(): 0}
    edges = set()
    for p in points:
        seq = p.coordinates[colour - 1]
        for k in range(1, len(seq) + 1):
            child = tuple(seq[:k])
            if child not in nodes:
                nodes[child] = len(nodes)
            edges.add((nodes[child[:-1]], nodes[child]))
    lines = [f"digraph T{colour} {{"]
    for v, i in sorted(nodes.items(), key=lambda kv: kv[1]):
        label = "(" + ", ".join(_render_label(x) for x in v) + ")"
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in sorted(edges):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)


def run(args) -> int:
    g, colours, name = load_group(args.group)
    cmd = args.command

    if cmd == "reduce":
        a = reduce(args.word, g)
        _emit(args, {"input": " ".join(args.word), "normal_form": str(a), "length": len(a.nf)},
              str(a) or "1")
        return 0

    if cmd == "ball":
        B = geometry.ball(g, args.radius)
        layers = [len(B.layer(r)) for r in range(args.radius + 1)]
        _emit(args, {"radius": args.radius, "size": len(B), "layers": layers,
                     "edges": len(B.edges), "elements": _words(B.elements)},
              f"radius {args.radius}: {len(B)} elements, layers {layers}, {len(B.edges)} edges")
        return 0

    if cmd == "geodesic":
        path = geometry.geodesic(parse_word(g, args.a), parse_word(g, args.b))
        _emit(args, {"path": _words(path)}, " -> ".join(str(p) or "1" for p in path))
        return 0

    if cmd == "median":
        m = geometry.median(parse_word(g, args.a), parse_word(g, args.b), parse_word(g, args.c))
        _emit(args, {"median": str(m)}, str(m) or "1")
        return 0

    col = coloring_for(g, colours)

    if cmd == "walls":
        ws = geometry.crossing_walls(parse_word(g, args.a), parse_word(g, args.b), col)
        _emit(args, {"walls": [_reflection_record(r) for r in ws]},
              "\n".join(f"{r} (generator {r.generator}, colour {r.colour}, level {r.level})"
                        for r in ws))
        return 0

    if cmd == "color":
        _emit(args, {"n": col.n, "assignment": {s: col(s) for s in g.generators}},
              "\n".join([f"{col.n} colours"] + [f"{s} {col(s)}" for s in g.generators]))
        return 0

    if cmd in ("embed-mu", "embed-psi"):
        params = embed.SeparationParams.for_colours(col.n, args.r_local)
        for a in _targets(args, g):
            if cmd == "embed-mu":
                coords = [[str(r) for r in seq] for seq in embed.mu(a, col).coordinates]
            else:
                coords = [[{"generator": x.generator, "digest": x.digest()} for x in seq]
                          for seq in embed.psi(a, col, params).coordinates]
            print(json.dumps({"element": str(a), "coordinates": coords}))
        return 0

    if cmd == "export-tree":
        if not 1 <= args.colour <= col.n:
            raise RACGError(f"colour must be between 1 and {col.n}")
        B = geometry.ball(g, args.radius)
        if args.map == "mu":
            points = [embed.mu(a, col) for a in B.elements]
        else:
            params = embed.SeparationParams.for_colours(col.n, args.r_local)
            points = [embed.psi(a, col, params) for a in B.elements]
        print(_tree_dot(points, args.colour))
        return 0

    if cmd == "verify":
        params = embed.SeparationParams.for_colours(col.n, args.r_local)
        report = run_suite(args.suite, g, args.radius, params, args.seed, coloring=col,
                           group_name=name)
        if args.no_timing:
            report.wall_clock = 0.0
        if args.json:
            print(report.to_json())
        else:
            status = "PASS" if report.passed else "FAIL"
            print(f"{status} {report.suite} on {report.group} radius {report.radius}: "
                  f"{report.checks_run} checks, {len(report.failures)} failures "
                  f"({report.wall_clock}s)")
            for f in report.failures[:20]:
                print("  " + " | ".join(f.to_record()))
        return 0 if report.passed else 1

    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except (RACGError, OSError) as exc:
        print(f"racg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
