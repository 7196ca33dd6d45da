"""Command line interface.

Exit codes: 0 success or pass, 1 fail, 2 inconclusive, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import CATALOG_KEYS, DESCRIPTIONS, InvariantPresentation, catalog_case, presentation
from .dickson import dickson_generators, euler_class
from .group import GroupSpec
from .poly import Polynomial, dumps
from .report import noncollapse_audit
from .verify import FAIL, INCONCLUSIVE, PASS, hilbert_match, invariant_dimensions, wilkerson_verify

EX_USAGE = 64
EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(text)


def _case(key: str):
    if key not in CATALOG_KEYS:
        raise UsageError(f"unknown catalog key {key!r}; choose from {', '.join(CATALOG_KEYS)}")
    return catalog_case(key)


def cmd_catalog(args) -> int:
    if args.action == "list":
        _emit(
            [{"key": k, "description": DESCRIPTIONS[k]} for k in CATALOG_KEYS],
            args.json,
            "\n".join(f"{k:8s} {DESCRIPTIONS[k]}" for k in CATALOG_KEYS),
        )
        return 0
    if not args.key:
        raise UsageError("catalog build needs a key")
    case = _case(args.key)
    summary = case.summary()
    summary["group"] = {"name": case.group.name, "generators": len(case.group.generators)}
    if args.emit_generators:
        pres = case.presentation
        payload = {
            "key": case.key,
            "names": pres.labels,
            "generators": [g.to_json() for g in pres.generators],
        }
        Path(args.emit_generators).write_text(dumps(payload) + "\n")
    if args.emit_group:
        Path(args.emit_group).write_text(dumps(case.group.to_json()) + "\n")
    pres = case.presentation
    lines = [
        f"{case.key}: {case.description}",
        f"  claimed  cohomological degrees: {summary['claimed_cohomological_degrees']}",
        f"  computed cohomological degrees: {summary['computed_cohomological_degrees']}",
        f"  match: {case.degrees_match}",
        f"  generators: " + ", ".join(f"{n} ({len(g)} terms)" for n, g in zip(pres.labels, pres.generators)),
        "  provenance:",
    ]

    def tree(prov, indent):
        lines.append(" " * indent + f"- {prov['kind']}" + (f" [{prov['detail']}]" if prov.get("detail") else ""))
        for child in prov.get("children", []):
            tree(child, indent + 2)

    tree(summary["presentation"]["provenance"], 4)
    _emit(summary, args.json, "\n".join(lines))
    return 0 if case.degrees_match else 1


def cmd_dickson(args) -> int:
    gens = dickson_generators(args.n, args.p)
    payload = {"n": args.n, "p": args.p, "dickson": [g.to_json() for g in gens]}
    if args.json:
        print(dumps(payload))
    else:
        for k, g in enumerate(gens):
            print(f"c_{args.n},{k} (degree {g.degree}, {len(g)} terms): {g if len(g) <= 20 else repr(g)}")
    return 0


def cmd_euler(args) -> int:
    e = euler_class(args.n, args.p)
    payload = {"n": args.n, "p": args.p, "sigma": e.sigma, "euler": e.polynomial.to_json()}
    if args.json:
        print(dumps(payload))
    else:
        poly = e.polynomial
        print(f"e (degree {e.degree}, {len(poly)} terms), e^{args.p - 1} = {e.sigma} * c_{args.n},0")
        print(poly if len(poly) <= 20 else repr(poly))
    return 0


def _load_input(args):
    if args.key:
        case = _case(args.key)
        return case.presentation, case.group
    if not (args.group and args.generators):
        raise UsageError("give a catalog key or both --group and --generators")
    group = GroupSpec.from_json(json.loads(Path(args.group).read_text()))
    data = json.loads(Path(args.generators).read_text())
    gens = [Polynomial.from_json(g) for g in data["generators"]]
    pres = presentation(group.p, group.n, gens, "explicit", detail=str(args.generators))
    return pres, group


def cmd_verify(args) -> int:
    pres, group = _load_input(args)
    cert = wilkerson_verify(pres, group, policy=args.policy)
    out = cert.to_json()
    status = cert.verdict
    if args.hilbert_depth is not None:
        degs = [d for d in pres.poly_degrees if d is not None]
        out["hilbert"] = hilbert_match(group, degs, args.hilbert_depth)
        if out["hilbert"]["status"] == FAIL and status == PASS:
            status = FAIL
    if args.json:
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(f"cond1 invariance:   {cert.cond1['status']}")
        print(f"cond2 integrality:  {cert.cond2['status']} ({cert.cond2.get('method')})")
        c3 = cert.cond3
        print(f"cond3 degrees:      {c3['status']} ({c3.get('degree_product')} vs |G| = {c3.get('group_order')})")
        if "hilbert" in out:
            h = out["hilbert"]
            print(f"hilbert oracle:     {h['status']} through d={h['depth']}")
        print(f"verdict: {cert.verdict}")
    return EXIT[status]


def cmd_oracle(args) -> int:
    if args.key:
        case = _case(args.key)
        group, degs = case.group, case.presentation.poly_degrees
    elif args.group:
        group = GroupSpec.from_json(json.loads(Path(args.group).read_text()))
        degs = None
    else:
        raise UsageError("give a catalog key or --group")
    if args.degrees:
        degs = [int(x) for x in args.degrees.split(",")]
    if degs:
        res = hilbert_match(group, degs, args.depth)
        _emit(res, args.json, f"dimensions {res['dimensions']}\nseries     {res['series']}\nstatus {res['status']}")
        return EXIT[res["status"]]
    dims = invariant_dimensions(group, args.depth)
    _emit({"dimensions": dims}, args.json, f"dimensions {dims}")
    return 0


def cmd_audit(args) -> int:
    report = noncollapse_audit(bound=args.bound)
    if args.json:
        print(dumps(report.to_json()))
    else:
        print(f"case {report.case}: invariant ring verdict {report.verified}")
        print(f"cohomological degrees {report.cohomological_degrees}, bound {report.bound}")
        print(f"  bound source: {report.bound_source}")
        if report.witness_degree is not None:
            print(f"witness degree {report.witness_degree}; series diverge at {report.divergence_degree}, agree through {report.series_agreement_limit}")
        for r in report.reasons:
            print(f"  {r}")
        print(report.text)
    if report.conclusion is None:
        return 2
    return 0 if report.conclusion else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modinv", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("catalog", help="list or build the Weyl-group cases")
    p.add_argument("action", choices=["list", "build"])
    p.add_argument("key", nargs="?")
    p.add_argument("--emit-generators", metavar="OUT.json")
    p.add_argument("--emit-group", metavar="OUT.json")
    p.set_defaults(func=cmd_catalog)

    for name, func, helptext in (
        ("dickson", cmd_dickson, "Dickson invariants c_{n,k}"),
        ("euler", cmd_euler, "Euler class of F_p^n"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("n", type=int)
        p.add_argument("p", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check a presentation with Wilkerson's criterion")
    p.add_argument("key", nargs="?")
    p.add_argument("--group", metavar="GROUP.json")
    p.add_argument("--generators", metavar="GENS.json")
    p.add_argument("--policy", choices=["auto", "groebner", "structural"], default="auto")
    p.add_argument("--hilbert-depth", type=int, metavar="D")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="invariant dimensions by linear algebra")
    p.add_argument("key", nargs="?")
    p.add_argument("--group", metavar="GROUP.json")
    p.add_argument("--degrees", help="comma-separated generator degrees to compare against")
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("audit", help="E8 noncollapse degree audit")
    p.add_argument("--bound", type=int, default=168)
    p.set_defaults(func=cmd_audit)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    # accept --json after the subcommand as well
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = as_json
    try:
        return args.func(args)
    except (UsageError, ValueError, FileNotFoundError) as exc:
        print(f"modinv: error: {exc}", file=sys.stderr)
        return EX_USAGE


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
