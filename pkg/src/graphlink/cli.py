"""graphlink command line.

Every subcommand reads one diagram file (``-`` for stdin), applies
``-m`` multiplicity overrides, calls one library function and prints the
result.  Exit status: 0 on success, 1 on a domain error (reported by its
error class name), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import calculus, dsl, novikov, strata
from .diagram import validate
from .errors import GraphLinkError, ParseError


class UsageError(Exception):
    pass


def _parse_overrides(specs: list[str] | None) -> dict[str, int]:
    out: dict[str, int] = {}
    for spec in specs or []:
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            name, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"bad multiplicity {item!r}, expected arrow=int")
            try:
                out[name.strip()] = int(value)
            except ValueError:
                raise UsageError(f"bad multiplicity value in {item!r}") from None
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str, overrides: list[str] | None, prefix: str = ""):
    diagram = dsl.parse(_read(path)).diagram
    if prefix:
        diagram = _prefixed(diagram, prefix)
    values = _parse_overrides(overrides)
    if prefix:
        values = {prefix + k: v for k, v in values.items()}
    unknown = sorted(set(values) - set(diagram.arrow_ids()))
    if unknown:
        raise UsageError(f"multiplicity override for undeclared arrow(s): {', '.join(unknown)}")
    return diagram.with_multiplicities(values)


def _prefixed(diagram, prefix: str):
    text = dsl.render(diagram)
    out = []
    for line in text.splitlines():
        words = line.split()
        keyword = words[0]
        refs = {"vertex": [1], "edge": [1, 2, 3], "arrow": [1, 2], "stub": [1, 2]}[keyword]
        for i in refs:
            words[i] = prefix + words[i]
        out.append(" ".join(words))
    return dsl.parse("\n".join(out)).diagram


def _emit(args, obj, text: str) -> None:
    print(dsl.to_json(obj) if args.json else text.rstrip("\n"))


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    diagram = _load(args.file, args.m)
    violations = validate(diagram, strict=args.strict)
    if args.json:
        print(dsl.to_json({"valid": not violations,
                           "violations": [v._asdict() for v in violations]}))
    else:
        print("ok" if not violations else "\n".join(map(str, violations)))
    return 1 if violations else 0


def cmd_render(args) -> int:
    diagram = _load(args.file, args.m)
    _emit(args, diagram, dsl.render(diagram))
    return 0


def cmd_lk(args) -> int:
    diagram = _load(args.file, args.m)
    value = calculus.linking(diagram, args.a, args.b)
    print(dsl.to_json(value) if args.json else value)
    return 0


def cmd_splice(args) -> int:
    d1 = _load(args.file, args.m)
    d2 = _load(args.file2, args.m2, prefix=args.prefix)
    result = calculus.splice(d1, args.arrow1, d2, args.prefix + args.arrow2, edge_id=args.edge_id)
    _emit(args, result, dsl.render(result))
    return 0


def cmd_split(args) -> int:
    diagram = _load(args.file, args.m)
    result = calculus.split(diagram, args.edge)
    m_a, m_b = result.induced_multiplicities
    text = (f"# piece containing the first end; new arrow {result.arrow_a} m={m_a}\n"
            + dsl.render(result.piece_a)
            + f"# piece containing the second end; new arrow {result.arrow_b} m={m_b}\n"
            + dsl.render(result.piece_b))
    _emit(args, result, text)
    return 0


def cmd_reduce(args) -> int:
    result = calculus.reduce(_load(args.file, args.m))
    _emit(args, result, dsl.render(result))
    return 0


def cmd_normalize(args) -> int:
    result = calculus.normalize(_load(args.file, args.m))
    _emit(args, result, dsl.render(result))
    return 0


def cmd_fibered(args) -> int:
    value = calculus.is_fibered(_load(args.file, args.m))
    print(dsl.to_json(value) if args.json else str(value).lower())
    return 0


def cmd_novikov(args) -> int:
    analysis = novikov.analyze(_load(args.file, args.m))
    if analysis.outside_theorem:
        print("note: all multiplicities are zero, which lies outside the theorem's "
              "hypotheses; reporting one free summand per arrow", file=sys.stderr)
    if args.explain and args.json:
        print(dsl.to_json(analysis))
        return 0
    print(dsl.to_json(analysis.module))
    if args.explain:
        print(f"module: {analysis.module}")
        if analysis.gamma_prime is not None:
            gp = analysis.gamma_prime
            for v, info in sorted(analysis.classification.items()):
                print(f"vertex {v}: {info.status.value}, fibre multiplicity {info.fiber_multiplicity}")
            print(f"c={gp.c} r={gp.r} n={gp.n} k={gp.k} free part {gp.base_rank}")
            pres = analysis.presentation
            print("P over " + " ".join(pres.vertex_order) if pres.vertex_order else "P is empty")
            for row in pres.matrix:
                print("  " + " ".join(str(x) for x in row))
    return 0


def cmd_sweep(args) -> int:
    census = strata.sweep(_load(args.file, args.m), args.box, budget=args.budget,
                          checks_per_stratum=args.checks, seed=args.seed)
    if args.json:
        print(dsl.to_json(census))
        return 0
    print("forms:")
    for i, form in enumerate(census.forms):
        print(f"  [{i}] {form}")
    print(f"box [-{census.box_radius},{census.box_radius}]^{len(census.arrows)} "
          f"over arrows {' '.join(census.arrows)}")
    for s in census.strata:
        print(f"  vanishing {list(s.signature)}: {s.module}  (count {s.count}, sample {list(s.sample)})")
    print(f"  m = 0: {census.zero_module}  (outside the theorem's hypotheses)")
    status = "satisfied" if census.bound_satisfied else "VIOLATED"
    print(f"distinct modules {census.distinct_modules}, bound {census.bound}: {status}")
    return 0


def cmd_strata(args) -> int:
    diagram = _load(args.file, args.m)
    census = strata.sweep(diagram, args.box, budget=args.budget, seed=args.seed)
    reports = [strata.stratum_constancy_check(diagram, s.signature, args.samples,
                                              radius=args.radius, seed=args.seed)
               for s in census.strata]
    if args.json:
        print(dsl.to_json({"forms": census.forms, "checks": reports, "seed": args.seed}))
    else:
        for i, form in enumerate(census.forms):
            print(f"[{i}] {form}")
        for r in reports:
            verdict = r.error or ("constant" if r.constant else "NOT CONSTANT")
            print(f"vanishing {list(r.signature)}: {r.module} over {len(r.samples)} samples, {verdict}")
    failed = any(not r.constant for r in reports)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="diagram file, or - for stdin")
    common.add_argument("-m", action="append", metavar="ARROW=INT[,...]",
                        help="override arrow multiplicities")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--strict", action="store_true",
                        help="also require coprime weights at each vertex")

    parser = argparse.ArgumentParser(prog="graphlink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check diagram invariants").set_defaults(func=cmd_validate)
    sub.add_parser("render", parents=[common], help="print canonical DSL").set_defaults(func=cmd_render)

    p = sub.add_parser("lk", parents=[common], help="linking number of two vertices/arrows")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_lk)

    p = sub.add_parser("splice", parents=[common], help="splice two diagrams along arrows")
    p.add_argument("file2")
    p.add_argument("arrow1")
    p.add_argument("arrow2")
    p.add_argument("--m2", action="append", metavar="ARROW=INT[,...]",
                   help="multiplicity overrides for the second diagram")
    p.add_argument("--prefix", default="", help="prefix for every id of the second diagram")
    p.add_argument("--edge-id", default=None, help="id of the new edge")
    p.set_defaults(func=cmd_splice)

    p = sub.add_parser("split", parents=[common], help="cut an internal edge")
    p.add_argument("edge")
    p.set_defaults(func=cmd_split)

    sub.add_parser("reduce", parents=[common], help="apply reduction moves").set_defaults(func=cmd_reduce)
    sub.add_parser("normalize", parents=[common], help="drop zero pieces").set_defaults(func=cmd_normalize)
    sub.add_parser("fibered", parents=[common], help="fiberedness test").set_defaults(func=cmd_fibered)

    p = sub.add_parser("novikov", parents=[common], help="Novikov homology")
    p.add_argument("--explain", action="store_true", help="show intermediate data")
    p.set_defaults(func=cmd_novikov)

    for name, func, helptext in (("sweep", cmd_sweep, "census of modules over a box"),
                                 ("strata", cmd_strata, "hyperplane forms and stratum constancy")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--box", type=int, default=3, help="box radius B (default 3)")
        p.add_argument("--budget", type=int, default=strata.DEFAULT_BUDGET,
                       help="maximum number of vectors to sweep")
        p.add_argument("--seed", type=int, default=0)
        if name == "sweep":
            p.add_argument("--checks", type=int, default=16,
                           help="module evaluations per stratum")
        else:
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--radius", type=int, default=50,
                           help="sampling box radius")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        name = type(exc).__name__
        print(f"{name}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GraphLinkError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
