"""The ``torsorlab`` command: reproducible reports over every module.

Each subcommand builds a plain-dict result, wrapped in a report carrying
the command name, a digest of the inputs, and the wall time.  Text
output is line-oriented; ``--json`` emits one object with sorted keys so
identical inputs give byte-identical output apart from the wall time.

Exit codes: 0 success, 2 invalid input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .abelian import torsion_descent_data
from .cohomology import bar_cohomology, binorm_brauer_quotient
from .errors import InputError, LimitError
from .fans import (
    MissingGaloisAction,
    class_group,
    cox_construction,
    divisor_map,
    galois_intertwining_holds,
    is_smooth_fan,
    orbit_permutation_structure,
    parse_fan,
    spans_ambient,
)
from .groups import group_from_spec, induced_module, trivial_module
from .limits import Limits, parse_limits_env
from .multinorm import (
    MultiNormSpec,
    geometric_shape,
    pic_multinorm,
    torsion_free_criterion,
    torsor_character_map,
    units_check,
)
from .obstruction import (
    integral_search,
    invariant_table,
    minus_one_mod_p_insolvable,
    pic_of_complement,
    validate_parameters,
)


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _resolve_limits(args) -> Limits:
    base = parse_limits_env(os.environ.get("TORSORLAB_LIMITS", ""))
    group_order = getattr(args, "max_group_order", None)
    cochain_dim = getattr(args, "max_cochain_dim", None)
    return Limits(
        group_order if group_order is not None else base.group_order,
        cochain_dim if cochain_dim is not None else base.cochain_dim,
    )


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")] if text else []
    except ValueError:
        raise InputError(f"expected a comma-separated integer list, got {text!r}") from None


def cmd_fan(args, limits: Limits) -> tuple[dict, dict]:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from None
    fan = parse_fan(text)
    inputs = {"input": args.input, "content": text, "report": args.report}
    results: dict = {
        "rank": fan.rank,
        "rays": len(fan.rays),
        "cones": len(fan.cones),
        "spans_ambient": spans_ambient(fan),
        "smooth": is_smooth_fan(fan),
    }
    want = args.report
    if want in ("class-group", "all"):
        cl = class_group(fan)
        descent = torsion_descent_data(divisor_map(fan))
        results["class_group"] = cl.to_json()
        results["class_group_pretty"] = str(cl)
        results["descent"] = {
            "pic": descent.pic.to_json(),
            "s_hat": descent.s_hat.to_json(),
            "check": descent.check,
        }
    if want in ("cox", "all"):
        cox = cox_construction(fan)
        results["cox"] = {
            "tilde_rank": cox.tilde_rank,
            "g_tilde": cox.g_tilde.to_lists(),
            "certificate": list(cox.ray_image_certificate),
        }
    if want in ("galois", "all"):
        if fan.galois is None:
            if want == "galois":
                raise MissingGaloisAction("fan file carries no action lines")
        else:
            results["galois"] = {
                "orbit_sizes": orbit_permutation_structure(fan),
                "intertwining": galois_intertwining_holds(fan),
            }
    return inputs, results


def cmd_cohom(args, limits: Limits) -> tuple[dict, dict]:
    G = group_from_spec(args.group, cap=limits.group_order)
    if args.module == "trivial":
        M = trivial_module(G)
    elif args.module == "regular":
        M = induced_module(G, [0])
    elif args.module.startswith("induced:"):
        M = induced_module(G, _int_list(args.module[len("induced:") :]))
    else:
        raise InputError(f"unknown module {args.module!r}")
    res = bar_cohomology(G, M, args.degree, cochain_cap=limits.cochain_dim)
    inputs = {"group": args.group, "module": args.module, "degree": args.degree}
    results = {
        "group_order": G.order,
        "module_rank": M.rank,
        "degree": args.degree,
        "cohomology": res.group.to_json(),
        "pretty": str(res.group),
        "method": res.method,
    }
    return inputs, results


def cmd_binorm(args, limits: Limits) -> tuple[dict, dict]:
    g1 = group_from_spec(args.g1, cap=limits.group_order)
    g2 = group_from_spec(args.g2, cap=limits.group_order)
    rep = binorm_brauer_quotient(
        g1, g2, group_cap=limits.group_order, cochain_cap=limits.cochain_dim
    )
    inputs = {"g1": args.g1, "g2": args.g2}
    results = {
        "h2": rep.h2.to_json(),
        "h2_pretty": str(rep.h2),
        "vanishing_predicted": rep.vanishing_predicted,
        "kunneth": rep.kunneth_prediction.to_json(),
        "kunneth_pretty": str(rep.kunneth_prediction),
        "agree": rep.agree,
    }
    return inputs, results


def cmd_example(args, limits: Limits) -> tuple[dict, dict]:
    inst = validate_parameters(
        args.p,
        args.q,
        search_bound=args.search_bound,
        prime_bound=args.prime_bound,
        precision=args.precision,
    )
    table = invariant_table(inst)
    solutions = integral_search(inst)
    pic = pic_of_complement()
    inputs = {
        "p": args.p,
        "q": args.q,
        "search_bound": args.search_bound,
        "prime_bound": args.prime_bound,
        "precision": args.precision,
    }
    results = {
        "conditions": [
            "p is prime",
            "q is prime",
            "p = 3 mod 4",
            "q = 1 mod 8",
            "(p/q) = 1",
            "(p/q)_4 = -1",
            "(-q/p) = -1",
        ],
        "invariant_table": [
            {
                "place": str(e.place),
                "symbol": e.symbol,
                "case": e.case_label,
                "confirmed": e.confirmed,
            }
            for e in table.entries
        ],
        "product": table.product,
        "solutions": [list(s) for s in solutions],
        "search_empty": not solutions,
        "minus_one_insolvable_mod_p": minus_one_mod_p_insolvable(inst),
        "pic_complement": pic.to_json(),
        "pic_complement_pretty": str(pic),
    }
    return inputs, results


def cmd_multinorm(args, limits: Limits) -> tuple[dict, dict]:
    try:
        c = Fraction(args.constant)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad constant {args.constant!r}") from None
    spec = MultiNormSpec(
        tuple(_int_list(args.degrees_k)),
        tuple(_int_list(args.degrees_l)),
        tuple(_int_list(args.exponents)),
        c,
    )
    shape = geometric_shape(spec)
    pic = pic_multinorm(shape)
    crit = torsion_free_criterion(spec)
    # raises if any torsor row disagrees with the divisor matrix
    torsor_character_map(spec)
    inputs = {
        "degrees_k": args.degrees_k,
        "degrees_l": args.degrees_l,
        "exponents": args.exponents,
        "constant": str(c),
    }
    results = {
        "shape": {"m_prime": shape.m_prime, "r_list": list(shape.r_list)},
        "units_ok": units_check(shape),
        "pic": pic.to_json(),
        "pic_pretty": str(pic),
        "gcd_is_one": crit.gcd_is_one,
        "pic_torsion_free": crit.pic_torsion_free,
        "torsor_map_matches_divisors": True,
    }
    return inputs, results


_COMMANDS = {
    "fan": cmd_fan,
    "cohom": cmd_cohom,
    "binorm": cmd_binorm,
    "example": cmd_example,
    "multinorm": cmd_multinorm,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsorlab")
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    # accepted on either side of the subcommand; SUPPRESS keeps a trailing
    # omission from clobbering a leading --json
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    fan = sub.add_parser("fan", help="toric fan reports", parents=[common])
    fan.add_argument("--input", required=True)
    fan.add_argument(
        "--report", choices=["class-group", "cox", "galois", "all"], default="all"
    )

    cohom = sub.add_parser("cohom", parents=[common], help="group cohomology")
    cohom.add_argument("--group", required=True)
    cohom.add_argument("--module", default="trivial")
    cohom.add_argument("--degree", type=int, required=True)
    cohom.add_argument("--max-group-order", type=int)
    cohom.add_argument("--max-cochain-dim", type=int)

    binorm = sub.add_parser("binorm", parents=[common], help="binorm Brauer quotient")
    binorm.add_argument("--g1", required=True)
    binorm.add_argument("--g2", required=True)
    binorm.add_argument("--max-group-order", type=int)
    binorm.add_argument("--max-cochain-dim", type=int)

    example = sub.add_parser("example", parents=[common], help="the obstructed affine surface")
    example.add_argument("--p", type=int, required=True)
    example.add_argument("--q", type=int, required=True)
    example.add_argument("--search-bound", type=int, default=100)
    example.add_argument("--prime-bound", type=int, default=100)
    example.add_argument("--precision", type=int, default=20)

    multi = sub.add_parser("multinorm", parents=[common], help="multi-norm variety reports")
    multi.add_argument("--degrees-k", required=True)
    multi.add_argument("--degrees-l", required=True)
    multi.add_argument("--exponents", required=True)
    multi.add_argument("--constant", default="1")
    return parser


def _emit_text(report: dict, out) -> None:
    print(f"torsorlab {report['command']} [{report['digest']}]", file=out)

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                walk(f"{prefix}{i}.", item)
        else:
            print(f"  {prefix[:-1]}: {value}", file=out)

    walk("", report["results"])
    print(f"  wall_time: {report['wall_time']:.3f}s", file=out)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        limits = _resolve_limits(args)
        inputs, results = _COMMANDS[args.command](args, limits)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LimitError as exc:
        print(f"limit exceeded: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    report = {
        "command": args.command,
        "digest": _digest(inputs),
        "results": results,
        "wall_time": round(time.perf_counter() - start, 6),
    }
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        _emit_text(report, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
