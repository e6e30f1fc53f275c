"""``turan2d`` command line: one subcommand per library operation, JSON reports on stdout."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .constructions import ConstructionSpec, build, expected_stats
from .density import d2, format_rational, is_strictly_2_balanced, m2_with_witness, parse_rational
from .enumeration import PROFILES, enumerate_alpha_bounded, min_edges_under_m2_cap, min_m2
from .graph import parse_graph6, to_graph6
from .invariants import clique_count, clique_number, degeneracy, independence_number, local_independence_number
from .sampler import SampleParams, experiment, sample_lll, verify_local
from .verify import CHECKS

SCHEMA = 1


class UsageError(Exception):
    pass


def _graph(args):
    if not args.g6:
        raise UsageError("--g6 is required")
    return parse_graph6(args.g6)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required flag(s): {', '.join(missing)}")


def _rat(x):
    return format_rational(x) if isinstance(x, Fraction) else x


# -- subcommands --------------------------------------------------------------------------
def cmd_invariants(args):
    g = _graph(args)
    w = clique_number(g)
    out = {
        "n": g.n,
        "e": g.e,
        "alpha": independence_number(g),
        "omega": w,
        "degeneracy": degeneracy(g),
        "clique_counts": [clique_count(g, i) for i in range(1, w + 1)],
    }
    if args.m is not None:
        out["m"] = args.m
        out["alpha_m"] = local_independence_number(g, args.m)
        if args.r is not None:
            out["r"] = args.r
            out["alpha_m_at_least_r"] = out["alpha_m"] >= args.r
    return out, 0


def cmd_m2(args):
    g = _graph(args)
    val, wit = m2_with_witness(g)
    return {
        "n": g.n,
        "e": g.e,
        "d2": format_rational(d2(g)),
        "m2": format_rational(val),
        "witness": wit,
        "strictly_2_balanced": is_strictly_2_balanced(g),
    }, 0


def cmd_construct(args):
    _need(args, "spec")
    spec = ConstructionSpec.parse(args.spec)
    g = build(spec)
    if args.format == "g6":
        return to_graph6(g).decode(), 0
    from .density import m2

    exp = expected_stats(spec)
    alpha = independence_number(g)
    got_m2 = m2(g) if g.n >= 3 else None
    checks = {
        "vertices": g.n == exp.vertices,
        "edges": g.e == exp.edges,
        "alpha": alpha <= exp.alpha_max,
    }
    if exp.m2 is not None:
        checks["m2"] = got_m2 == exp.m2
    out = {
        "spec": str(spec),
        "graph6": to_graph6(g).decode(),
        "n": g.n,
        "e": g.e,
        "alpha": alpha,
        "omega": clique_number(g),
        "m2": _rat(got_m2),
        "expected": {"vertices": exp.vertices, "edges": exp.edges, "alpha_max": exp.alpha_max, "m2": _rat(exp.m2)},
        "self_check": checks,
    }
    return out, 0 if all(checks.values()) else 1


def cmd_enumerate(args):
    _need(args, "m", "r")
    graphs = enumerate_alpha_bounded(args.m, args.r - 1, jobs=args.jobs, cache_dir=args.cache)
    keys = [to_graph6(g).decode() for g in graphs]
    if args.format == "g6":
        return "\n".join(keys), 0
    return {"m": args.m, "alpha_max": args.r - 1, "count": len(keys), "graphs": keys}, 0


def cmd_search_m2(args):
    _need(args, "m", "r")
    o = min_m2(args.m, args.r, profile=args.profile or "clique-cap", jobs=args.jobs)
    return o.to_json(args.timing), 0


def cmd_search_edges(args):
    _need(args, "m", "r")
    if args.cap is None:
        k = -(-args.m // (args.r - 1))
        cap = Fraction(k + 1, 2)
    else:
        cap = parse_rational(args.cap)
    o = min_edges_under_m2_cap(args.m, args.r, cap, profile=args.profile or "clique-cap", jobs=args.jobs)
    return o.to_json(args.timing), 0


def cmd_verify(args):
    if args.check not in CHECKS:
        raise UsageError(f"unknown check {args.check!r}; choose from {', '.join(CHECKS)}")
    kw = {"mutate": args.mutate, "jobs": args.jobs}
    if args.n is not None:
        kw["n" if args.check == "equivalence-7-3" else "n_max"] = int(args.n)
    if args.check == "triangle-nbhd":
        if args.seed is not None:
            kw["seed"] = args.seed
        if args.reps is not None:
            kw["samples"] = args.reps
    if args.check == "up-bip" and args.k is not None:
        kw["k_grid"] = [args.k]
    rep = CHECKS[args.check](**kw)
    return rep.to_json(args.timing), 0 if rep.passed else 1


def cmd_sample(args):
    _need(args, "n", "m", "r", "seed")
    params = SampleParams.for_local(int(args.n), args.m, args.r, args.seed)
    g = sample_lll(params)
    if args.format == "g6":
        return to_graph6(g).decode(), 0
    ok, wit = verify_local(g, args.m, args.r)
    p = params.p
    return {
        "n": g.n,
        "e": g.e,
        "p": format_rational(p) if isinstance(p, Fraction) else repr(p),
        "t": params.t,
        "M": format_rational(params.M),
        "graph6": to_graph6(g).decode(),
        "local_property": ok,
        "violation": wit,
    }, 0


def cmd_experiment(args):
    _need(args, "n", "m", "r", "seed")
    grid = [int(x) for x in str(args.n).split(",") if x.strip()]
    rep = experiment(args.m, args.r, grid, args.reps if args.reps is not None else 10, args.seed, jobs=args.jobs)
    if args.format == "csv":
        return rep.to_csv().rstrip("\n"), 0
    return rep.to_json(args.timing), 0


COMMANDS = {
    "invariants": cmd_invariants,
    "m2": cmd_m2,
    "construct": cmd_construct,
    "enumerate": cmd_enumerate,
    "search-m2": cmd_search_m2,
    "search-edges": cmd_search_edges,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "experiment": cmd_experiment,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--g6")
    common.add_argument("--spec")
    common.add_argument("--cap", help='rational "p/q"')
    common.add_argument("--profile", choices=sorted(PROFILES))
    common.add_argument("--n", help="vertex count, or a comma-separated grid for experiment")
    common.add_argument("--reps", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cache", help="cache directory (TURAN2D_CACHE overrides)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "g6", "csv"], default="json")
    common.add_argument("--timing", action="store_true", help="include wall times (reports are then not byte-stable)")
    common.add_argument("--mutate", action="store_true", help="verify: run the deliberately weakened claim")

    parser = argparse.ArgumentParser(prog="turan2d", description="Exact 2-density Turan computations.")
    parser.add_argument("--version", action="version", version=f"turan2d {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("check", help=", ".join(CHECKS))
    return parser


def _echo(args) -> dict:
    skip = {"command", "out", "timing", "jobs"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, False)}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_cache = os.environ.get("TURAN2D_CACHE")
    if env_cache:
        args.cache = env_cache
    if args.jobs < 1:
        parser.error("argument --jobs: must be at least 1")
    try:
        result, code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        print(f"turan2d {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        text = result + "\n"
    else:
        report = {"schema": SCHEMA, "tool": "turan2d", "version": __version__, "command": args.command, "parameters": _echo(args), "result": result}
        if args.timing:
            report["jobs"] = args.jobs
        text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
