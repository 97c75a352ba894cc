"""Command-line front end.  Every verb prints one JSON document on stdout.

Exit codes: 0 success, 2 invalid input, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import kronecker as kr
from .config import CapExceeded, current_caps, using_caps
from .grm import gr_measure, gr_measure_oracle
from .io import SchemaError, dumps, parse_algebra_file, parse_json, parse_module_file
from .measures import Measure
from .quiver import is_indecomposable, is_isomorphic
from .subcat import (
    TRUNCATION_NOTE,
    IndUniverse,
    check_laws,
    enumerate_ind,
    gr_filtration,
    intersect_with_witness,
    sub_closure,
    zg_set,
)
from .submod import all_submodules

EXIT_INVALID = 2
EXIT_CAP = 3


class UsageError(ValueError):
    code = "invalid_argument"


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _algebra(args):
    return parse_algebra_file(_read(args.algebra))


def _module(alg, path):
    return parse_module_file(alg, _read(path))


def _indices(text: str, universe: IndUniverse) -> list[int]:
    if not text.strip():
        return []
    try:
        out = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"member list must be comma-separated integers, got {text!r}") from None
    bad = [i for i in out if not 0 <= i < len(universe)]
    if bad:
        raise UsageError(f"member indices {bad} out of range 0..{len(universe) - 1}")
    return out


def _universe(args, alg) -> IndUniverse:
    cache = getattr(args, "cache", None)
    if cache and os.path.exists(cache):
        data = parse_json(_read(cache))
        universe = IndUniverse.from_json(data)
        if universe.alg == alg and universe.max_length == args.max_length and universe.n_max == args.n_max:
            return universe
    universe = enumerate_ind(alg, args.max_length, args.n_max)
    if cache:
        Path(cache).write_text(dumps(universe.to_json()), encoding="utf-8")
    return universe


def _config(args, **extra) -> dict:
    caps = current_caps()
    cfg = {"enum_cap": caps.enum_cap, "hom_cap": caps.hom_cap}
    for name in ("max_length", "n_max"):
        if hasattr(args, name):
            cfg[name] = getattr(args, name)
    cfg.update(extra)
    return cfg


# -- verbs ---------------------------------------------------------------------


def cmd_measure(args):
    alg = _algebra(args)
    x = _module(alg, args.module)
    result = gr_measure(x).to_json()
    if args.oracle:
        result["oracle"] = gr_measure_oracle(x).to_json()
    result["config"] = _config(args, field=alg.p)
    return result


def cmd_submodules(args):
    alg = _algebra(args)
    x = _module(alg, args.module)
    lattice = all_submodules(x)
    return {
        "config": _config(args, field=alg.p),
        "contained_in": lattice.inclusions(),
        "submodules": [
            {"basis": s.to_json(), "dims": list(s.dims), "length": s.length} for s in lattice
        ],
    }


def cmd_indec(args):
    alg = _algebra(args)
    x = _module(alg, args.module)
    if x.length == 0:
        raise UsageError("the zero module is neither decomposable nor indecomposable")
    return {"config": _config(args, field=alg.p), "indecomposable": is_indecomposable(x)}


def cmd_iso(args):
    alg = _algebra(args)
    x, y = _module(alg, args.module), _module(alg, args.other)
    return {"config": _config(args, field=alg.p), "isomorphic": is_isomorphic(x, y)}


def _members_json(u: IndUniverse, members) -> list[dict]:
    return [{"index": i, "label": u.label(i)} for i in sorted(members)]


def cmd_enumerate(args):
    alg = _algebra(args)
    u = _universe(args, alg)
    out = u.to_json()
    out["config"] = _config(args, field=alg.p)
    return out


def cmd_sub_closure(args):
    alg = _algebra(args)
    u = _universe(args, alg)
    c = sub_closure(u, _indices(args.seeds, u))
    return {"config": _config(args, field=alg.p), "members": _members_json(u, c.members)}


def cmd_zg(args):
    alg = _algebra(args)
    u = _universe(args, alg)
    members = _indices(args.members, u)
    return {
        "closed": u.is_closed(members),
        "config": _config(args, field=alg.p),
        "zg": _members_json(u, zg_set(u, members)),
    }


def cmd_intersect(args):
    alg = _algebra(args)
    u = _universe(args, alg)
    family = [sub_closure(u, _indices(f, u)) for f in args.family]
    result, witness = intersect_with_witness(family, u)
    return {
        "config": _config(args, field=alg.p),
        "family": [c.to_json() for c in family],
        "intersection": _members_json(u, result.members),
        "note": TRUNCATION_NOTE,
        "witness": list(witness),
    }


def cmd_filtration(args):
    alg = _algebra(args)
    u = _universe(args, alg)
    try:
        bound = Measure.from_json(json.loads(args.measure))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--measure: {exc}") from None
    zg, sub = gr_filtration(u, bound)
    return {
        "config": _config(args, field=alg.p),
        "measure": bound.to_json(),
        "sub": _members_json(u, sub.members),
        "zg": _members_json(u, zg),
    }


def cmd_laws(args):
    alg = _algebra(args)
    u = _universe(args, alg)
    out = check_laws(u)
    out["config"] = _config(args, field=alg.p)
    return out


def cmd_kronecker_verify(args):
    report = kr.verify(args.max_n, args.field).to_json()
    report["limits"] = {k: v.to_json() for k, v in sorted(kr.limit_measures().items())}
    report["config"] = _config(args, field=args.field)
    return report


def cmd_kronecker_build(args):
    from .io import module_to_json

    lam = None
    if args.kind == "R":
        if args.lam is None:
            raise UsageError("--lambda is required for kind R")
        lam = kr.INFINITY if args.lam in ("inf", "infinity") else int(args.lam)
        if lam != kr.INFINITY and not 0 <= lam < args.field:
            raise UsageError(f"--lambda must be in 0..{args.field - 1} or 'inf'")
    elif args.lam is not None:
        raise UsageError("--lambda is only valid for kind R")
    rep = kr.build(kr.KroneckerFamily(args.kind, args.n, lam), args.field)
    return module_to_json(rep)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grlattice", description=__doc__)
    parser.add_argument("--enum-cap", type=int, default=None, help="cap on enumerated vectors/tuples")
    parser.add_argument("--hom-cap", type=int, default=None, help="cap on enumerated hom-space elements")
    sub = parser.add_subparsers(dest="verb", required=True)

    def module_cmd(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--algebra", required=True)
        p.add_argument("--module", required=True)
        p.set_defaults(func=func)
        return p

    p = module_cmd("measure", cmd_measure, "Gabriel-Roiter measure with a witness chain")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    module_cmd("submodules", cmd_submodules, "submodule lattice")
    module_cmd("indec", cmd_indec, "indecomposability test")
    p = module_cmd("iso", cmd_iso, "isomorphism test")
    p.add_argument("--other", required=True)

    def universe_cmd(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--algebra", required=True)
        p.add_argument("--max-length", type=int, required=True)
        p.add_argument("--n-max", type=int, default=None, help="bound on powers (default: length)")
        p.add_argument("--cache", default=None, help="universe bundle to read or write")
        p.set_defaults(func=func)
        return p

    universe_cmd("enumerate", cmd_enumerate, "indecomposables up to a length bound")
    universe_cmd("sub-closure", cmd_sub_closure, "closure of seed members").add_argument(
        "--seeds", required=True, help="comma-separated member indices"
    )
    universe_cmd("zg", cmd_zg, "members whose closure lies in a set").add_argument(
        "--members", required=True, help="comma-separated member indices"
    )
    universe_cmd("intersect", cmd_intersect, "intersection with a finite witness").add_argument(
        "--family", action="append", required=True, help="seed list; repeat per family member"
    )
    universe_cmd("filtration", cmd_filtration, "members with measure <= I").add_argument(
        "--measure", required=True, help='JSON measure, e.g. {"prefix":[1,2],"tail":null}'
    )
    universe_cmd("laws", cmd_laws, "check every finite-model law")

    k = sub.add_parser("kronecker", help="Kronecker algebra families")
    ksub = k.add_subparsers(dest="kverb", required=True)
    p = ksub.add_parser("verify", help="compare computed measures with closed forms")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--field", type=int, default=2)
    p.set_defaults(func=cmd_kronecker_verify)
    p = ksub.add_parser("build", help="emit a module file")
    p.add_argument("--kind", choices=["P", "R", "Q"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--field", type=int, default=2)
    p.set_defaults(func=cmd_kronecker_build)
    return parser


def _error(code: str, message: str, status: int) -> int:
    sys.stderr.write(json.dumps({"error": code, "message": message}, sort_keys=True) + "\n")
    return status


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("max_n", "n", "max_length"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            return _error("invalid_argument", f"--{name.replace('_', '-')} must be >= 1", EXIT_INVALID)
    try:
        with using_caps(args.enum_cap, args.hom_cap):
            result = args.func(args)
    except SchemaError as exc:
        return _error(exc.code, str(exc), EXIT_INVALID)
    except UsageError as exc:
        return _error(exc.code, str(exc), EXIT_INVALID)
    except CapExceeded as exc:
        return _error("cap_exceeded", str(exc), EXIT_CAP)
    except ValueError as exc:
        return _error("invalid_argument", str(exc), EXIT_INVALID)
    sys.stdout.write(dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
