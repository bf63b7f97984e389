"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a property check failed (report on
stdout), 3 an internal assertion failed (state dump on stdout).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import building, lconvex
from .algebra import AlgebraError
from .core import BrokenInstance, ChainError, LatticeError, OrderError, interval_rank, relative_position
from .instances import make_instance
from .skeleton import ConstructionError, chain_coordinates, skeleton_from_chains

log = logging.getLogger("umlattice")


class UsageError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_arg(text: str):
    """Inline JSON, or the contents of a file when prefixed with '@'."""
    if text is None:
        raise UsageError("missing argument")
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def instance_from_args(args):
    cfg = {"kind": args.instance, "n": args.n, "d0": args.d0, "d1": args.d1,
           "q": args.q, "B": args.window_bound}
    if args.instance == "tree" and args.n not in (None, 2):
        raise UsageError("tree instances have n = 2")
    if cfg["n"] is None:
        cfg["n"] = 2
    try:
        return make_instance(cfg)
    except (ValueError, AlgebraError) as exc:
        raise UsageError(str(exc)) from None


def element(L, text):
    try:
        return L.decode(load_arg(text))
    except UsageError:
        raise
    except (ValueError, TypeError, KeyError, AlgebraError) as exc:
        raise UsageError(f"bad element: {exc}") from None


def chain(L, text):
    data = load_arg(text)
    if not isinstance(data, list):
        raise UsageError("a chain is a JSON list of elements")
    try:
        return [L.decode(c) for c in data]
    except (ValueError, TypeError, KeyError, AlgebraError) as exc:
        raise UsageError(f"bad element: {exc}") from None


# ---------------------------------------------------------------------------
# handlers return (exit code, text)


def cmd_lattice(args, L):
    x = element(L, args.x)
    op = args.op
    if op in ("meet", "join", "rank"):
        y = element(L, args.y)
        if op == "meet":
            return 0, dumps(L.encode(L.meet(x, y)))
        if op == "join":
            return 0, dumps(L.encode(L.join(x, y)))
        return 0, dumps(interval_rank(L, x, y))
    if op == "ascend":
        return 0, dumps(L.encode(L.ascend(x)))
    if op == "descend":
        return 0, dumps(L.encode(L.descend(x)))
    raise UsageError(op)


def cmd_relpos(args, L):
    C = chain(L, args.chain)
    y = element(L, args.y)
    return 0, dumps(relative_position(L, C, y))


def cmd_skeleton(args, L):
    C = chain(L, args.chain_c)
    D = chain(L, args.chain_d)
    S = skeleton_from_chains(L, C, D, rng=args.seed)
    out = {
        "skeleton": S.to_json(),
        "coordinates_c": [S.coordinates_of(c) for c in C],
        "coordinates_d": [S.coordinates_of(d) for d in D],
    }
    if len(C) == L.n + 1:
        out["relative_d"] = [chain_coordinates(S, C, d) for d in D]
    return 0, dumps(out)


def cmd_building(args, L):
    if args.op == "check":
        axioms = [a.strip() for a in args.axioms.split(",") if a.strip()]
        bad = set(axioms) - {"b1", "b2", "b3", "star"}
        if bad:
            raise UsageError(f"unknown axioms {sorted(bad)}")
        report = building.check_axioms(L, args.samples, args.seed, axioms, w=args.window)
        return (0 if report["passed"] else 2), dumps(report)
    if args.op == "export":
        win = building.building_window(L, args.window)
        if args.format == "dot":
            return 0, win.to_dot().rstrip("\n")
        return 0, dumps(win.to_json())
    if args.op == "roundtrip":
        report = building.roundtrip_check(L, args.window, args.seed)
        return (0 if report["passed"] else 2), dumps(report)
    raise UsageError(args.op)


def _function(args, L):
    if args.table:
        table = load_arg(args.table)
        if not isinstance(table, dict):
            raise UsageError("a function table is a JSON object")
        return lconvex.table_function(L, table, args.alpha)
    try:
        return lconvex.catalog(L, args.function)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_lconvex(args, L):
    g = _function(args, L)
    if args.op == "verify":
        report = lconvex.verify_lconvex(L, g, args.samples, args.seed)
        return (0 if report["passed"] else 2), dumps(report)
    start = element(L, args.start) if args.start else L.base
    try:
        cert = lconvex.minimize(L, g, start, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return (2 if cert.budget_exhausted else 0), dumps(cert.to_json(L))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--instance", choices=["zn", "tree", "module"], default="zn")
    inst.add_argument("--n", type=int, default=None)
    inst.add_argument("--d0", type=int, default=3)
    inst.add_argument("--d1", type=int, default=3)
    inst.add_argument("--q", type=int, default=2)
    inst.add_argument("--window-bound", type=int, default=8)
    inst.add_argument("--seed", type=int, default=0)
    inst.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="umlattice", description="Uniform modular lattices and affine buildings.")
    sub = p.add_subparsers(dest="group", required=True)

    lat = sub.add_parser("lattice").add_subparsers(dest="op", required=True)
    for op in ("meet", "join", "rank"):
        s = lat.add_parser(op, parents=[inst])
        s.add_argument("--x", required=True)
        s.add_argument("--y", required=True)
        s.set_defaults(func=cmd_lattice)
    for op in ("ascend", "descend"):
        s = lat.add_parser(op, parents=[inst])
        s.add_argument("--x", required=True)
        s.set_defaults(func=cmd_lattice)
    s = lat.add_parser("relpos", parents=[inst])
    s.add_argument("--chain", required=True, help="maximal short chain as a JSON list")
    s.add_argument("--y", required=True)
    s.set_defaults(func=cmd_relpos)

    sk = sub.add_parser("skeleton").add_subparsers(dest="op", required=True)
    s = sk.add_parser("find", parents=[inst])
    s.add_argument("--chain-c", required=True)
    s.add_argument("--chain-d", required=True)
    s.set_defaults(func=cmd_skeleton)

    bd = sub.add_parser("building").add_subparsers(dest="op", required=True)
    s = bd.add_parser("check", parents=[inst])
    s.add_argument("--axioms", default="b1,b2,b3,star")
    s.add_argument("--samples", type=int, default=10)
    s.add_argument("--window", type=int, default=1)
    s.set_defaults(func=cmd_building)
    s = bd.add_parser("export", parents=[inst])
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.add_argument("--window", type=int, default=2)
    s.set_defaults(func=cmd_building)
    s = bd.add_parser("roundtrip", parents=[inst])
    s.add_argument("--window", type=int, default=2)
    s.set_defaults(func=cmd_building)

    lc = sub.add_parser("lconvex").add_subparsers(dest="op", required=True)
    for op in ("verify", "minimize"):
        s = lc.add_parser(op, parents=[inst])
        s.add_argument("--function", default="valuation")
        s.add_argument("--table", default=None, help="JSON object {encoding: value}")
        s.add_argument("--alpha", default="0")
        if op == "verify":
            s.add_argument("--samples", type=int, default=1000)
        else:
            s.add_argument("--start", default=None)
            s.add_argument("--budget", type=int, default=1000)
        s.set_defaults(func=cmd_lconvex)
    return p


def run(argv=None) -> tuple:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 1), ""
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        L = instance_from_args(args)
        return args.func(args, L)
    except (UsageError, OrderError, ChainError, building.SimplexError) as exc:
        return 1, dumps({"error": str(exc)})
    except ConstructionError as exc:
        return 3, dumps({"error": str(exc), "state": exc.state})
    except (BrokenInstance, AssertionError) as exc:
        return 3, dumps({"error": str(exc), "state": None})
    except building.WindowExhausted as exc:
        return 1, dumps({"error": str(exc)})
    except (LatticeError, AlgebraError) as exc:
        return 1, dumps({"error": str(exc)})


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
