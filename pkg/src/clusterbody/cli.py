"""Command line front end.

Examples
--------
::

    clusterbody seed build --type A --rank 2 --word 1,2,1 --dot
    clusterbody polytope string --type A --rank 3 --word 1,2,1,3,2,1 --lambda 1,1,1
    clusterbody check sl3-table

Output goes to stdout, or into the directory named by ``--out`` or the
``OKL_OUT`` environment variable.  Exit codes: 0 pass, 1 failed check,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .cluster import (
    ClusterError,
    apply_sequence,
    default_engine,
    initial_seed,
    initial_seed_abstract,
    seq_left,
    seq_right_vee,
)
from .exchange import ExchangeError, build_epsilon, mutate_sequence, quiver_dot
from .okounkov import OkounkovError, ValuationSpec, cluster_cone, no_polytope
from .polyhedra import PolyhedronError, extreme_rays, pl_image, tropical_sequence_map
from .rootsys import RootSystemError, Weight, cartan, word_data
from .suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_DEFAULTS = {"path": "", "sequence": "none", "chart": "auto", "degree_cap": 1, "valuation": "seed"}


class UsageError(Exception):
    pass


def _ints(text: Optional[str]) -> List[int]:
    if text is None or text == "":
        return []
    try:
        return [int(x) for x in str(text).replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _job(args):
    if args.type is None or args.rank is None or args.word is None:
        raise UsageError("--type, --rank and --word are required")
    try:
        cd = cartan(args.type, int(args.rank))
        wd = word_data(_ints(args.word), cd, require_reduced=True)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return cd, wd


def _weight(args, cd) -> Weight:
    lam = _ints(args.weight)
    # omitted trailing coordinates are zero
    if not lam or len(lam) > cd.rank or any(x < 0 for x in lam):
        raise UsageError(f"--lambda needs at most {cd.rank} nonnegative entries")
    return Weight(tuple(lam) + (0,) * (cd.rank - len(lam)))


def _emit(args, name: str, text: str) -> None:
    out = args.out or os.environ.get("OKL_OUT")
    if out:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


def _stem(args) -> str:
    return f"{args.type}{args.rank}_" + "".join(str(x) for x in _ints(args.word))


# commands -----------------------------------------------------------------------


def cmd_seed(args) -> int:
    cd, wd = _job(args)
    eps = build_epsilon(wd, cd)
    seq = {"none": [], "left": list(seq_left(wd)), "right-vee": list(seq_right_vee(wd))}[args.sequence]
    seq += _ints(args.path)
    if args.action == "dot" or args.dot:
        eps = mutate_sequence(eps, seq)
        _emit(args, f"{_stem(args)}.dot", quiver_dot(eps, "quiver"))
        return EXIT_OK
    use_t = args.chart == "t" or (args.chart == "auto" and default_engine(cd) is not None)
    if args.chart == "t" and default_engine(cd) is None:
        raise UsageError(f"no torus chart for type {args.type}{args.rank}")
    seed = initial_seed(wd, cd) if use_t else initial_seed_abstract(eps)
    if args.action == "mutate":
        seed = apply_sequence(seed, seq)
    data = seed.to_dict()
    data["word"] = list(wd.word)
    data["path"] = seq
    _emit(args, f"{_stem(args)}_seed.json", _dump(data))
    return EXIT_OK


def cmd_polytope(args) -> int:
    cd, wd = _job(args)
    if cd.series != "A":
        raise UsageError("polytopes need a type A word")
    path = tuple(_ints(args.path))
    if args.kind == "cone":
        val = _valuation(args, wd, cd, path)
        c = cluster_cone(wd, cd, int(args.degree_cap), val)
        data = {"dim": wd.m, "rays": [list(r) for r in extreme_rays(c)], "valuation": val.variant}
        _emit(args, f"{_stem(args)}_cone.json", _dump(data))
        return EXIT_OK
    lam = _weight(args, cd)
    if args.kind == "string":
        P = no_polytope(lam, wd, cd, ValuationSpec.v_tilde_low(wd.m))
    elif args.kind == "nz":
        P = no_polytope(lam, wd, cd, ValuationSpec.v_low(wd.m))
    else:
        start = no_polytope(lam, wd, cd, ValuationSpec.v_seed(wd, cd))
        P = pl_image(start, tropical_sequence_map(build_epsilon(wd, cd), path))
    data = P.to_dict()
    data["lattice_points"] = len(P.lattice_points())
    data["lambda"] = list(lam)
    data["word"] = list(wd.word)
    if args.kind == "transport":
        data["path"] = list(path)
    _emit(args, f"{_stem(args)}_{args.kind}.json", _dump(data))
    return EXIT_OK


def _valuation(args, wd, cd, path) -> ValuationSpec:
    if args.valuation == "low":
        return ValuationSpec.v_low(wd.m)
    if args.valuation == "tilde":
        return ValuationSpec.v_tilde_low(wd.m)
    return ValuationSpec.v_seed(wd, cd, path)


def cmd_check(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    status = EXIT_OK
    for name in names:
        reports = SUITES[name]()
        passed = all(r.passed for r in reports)
        data = {"suite": name, "status": "pass" if passed else "fail", "reports": [r.to_dict() for r in reports]}
        _emit(args, f"check_{name}.json", _dump(data))
        if not passed:
            status = EXIT_FAIL
    return status


# parser -------------------------------------------------------------------------


def _add_job(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", help="Cartan series: A, B, C or D")
    p.add_argument("--rank", type=int)
    p.add_argument("--word", help="reduced word, e.g. 1,2,1")
    p.add_argument("--out", help="output directory (default: $OKL_OUT or stdout)")
    p.add_argument("--config", help="JSON file whose keys mirror the flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterbody", description="Cluster seeds and Newton-Okounkov polytopes of reduced words.")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("seed", help="build, mutate or draw the seed of a word")
    ps.add_argument("action", choices=["build", "mutate", "dot"])
    _add_job(ps)
    ps.add_argument("--path", help="mutation directions, applied left to right")
    ps.add_argument("--sequence", choices=["none", "left", "right-vee"], help="named sweep applied before --path")
    ps.add_argument("--chart", choices=["auto", "t", "abstract"])
    ps.add_argument("--dot", action="store_true", help="write the quiver as DOT")
    ps.set_defaults(func=cmd_seed)

    pp = sub.add_parser("polytope", help="compute a polytope or cone")
    pp.add_argument("kind", choices=["string", "nz", "cone", "transport"])
    _add_job(pp)
    pp.add_argument("--lambda", dest="weight", help="weight in fundamental coordinates, e.g. 1,1")
    pp.add_argument("--path", help="mutation path for transport or seed cones")
    pp.add_argument("--degree-cap", dest="degree_cap", type=int)
    pp.add_argument("--valuation", choices=["seed", "low", "tilde"], help="valuation for cones")
    pp.set_defaults(func=cmd_polytope)

    pc = sub.add_parser("check", help="run a named check suite")
    pc.add_argument("suite", choices=sorted(SUITES) + ["all"])
    pc.add_argument("--out")
    pc.add_argument("--config")
    pc.set_defaults(func=cmd_check)
    return parser


def _apply_config(args) -> None:
    for key, value in _DEFAULTS.items():
        if getattr(args, key, "unset") is None:
            setattr(args, key, value)
    if not getattr(args, "config", None):
        return
    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    for key, value in config.items():
        key = key.replace("-", "_")
        if key == "lambda":
            key = "weight"
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        if not hasattr(args, key):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) in (None, False, _DEFAULTS.get(key)):
            setattr(args, key, value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _apply_config(args)
        return args.func(args)
    except UsageError as exc:
        print(f"clusterbody: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClusterError, ExchangeError, OkounkovError, PolyhedronError) as exc:
        print(f"clusterbody: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
