"""Command-line interface.

Exit status: 0 on success, 1 when the answer is a refusal (UNREALIZABLE,
UNSAT, a failed check), 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import adf as adf_mod
from .af import parse_af, stable_extensions
from .core import KbError, ModelSet, format_modelset, is_antichain, parse_modelset
from .lp import format_lp, parse_lp, stable_models, supported_models
from .oracle import default_vocabulary, verify_hierarchy
from .proplogic import format_theory, models, parse_theory
from .realize import (
    count_realizations,
    decide_bipolar_realizability,
    encode_bipolar_realizability,
    realize_adf_supported,
    realize_badf_stable,
)
from .sat import from_dimacs, solve, to_dimacs
from .translate import adf_to_lp, adf_to_pl, af_to_adf, af_to_lp, af_to_pl, clark_completion_pl, lp_to_adf

EXTENSIONS = {
    ".af": "af",
    ".apx": "af",
    ".lp": "lp",
    ".adf": "adf",
    ".models": "models",
    ".cnf": "cnf",
    ".pl": "pl",
}


class InputError(Exception):
    pass


class Refusal(Exception):
    """A well-formed request whose answer is negative."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _format_of(path: str, override: str | None) -> str:
    if override:
        return override
    ext = os.path.splitext(path)[1].lower()
    if ext not in EXTENSIONS:
        raise InputError(f"cannot infer the input format of {path!r}; pass --format")
    return EXTENSIONS[ext]


def _load(path: str, fmt: str):
    text = _read(path)
    parsers = {
        "af": parse_af,
        "lp": parse_lp,
        "adf": adf_mod.parse_adf,
        "models": parse_modelset,
        "cnf": from_dimacs,
        "pl": parse_theory,
    }
    return parsers[fmt](text)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _modelset_json(ms: ModelSet) -> dict:
    return {"atoms": list(ms.vocabulary.atoms), "models": [list(m) for m in ms]}


SEMANTICS = {
    ("af", "stable-ext"): stable_extensions,
    ("lp", "supported"): supported_models,
    ("lp", "stable"): stable_models,
    ("adf", "supported"): adf_mod.adf_models,
    ("adf", "stable"): adf_mod.adf_stable_models,
    ("pl", "models"): models,
}


def cmd_solve(args) -> int:
    fmt = _format_of(args.kb, args.format)
    kb = _load(args.kb, fmt)
    fn = SEMANTICS.get((fmt, args.semantics))
    if fn is None:
        valid = sorted(s for f, s in SEMANTICS if f == fmt)
        raise InputError(f"semantics {args.semantics!r} does not apply to {fmt} input (use one of {valid})")
    result = fn(kb)
    if args.json:
        _emit(json.dumps(_modelset_json(result), indent=2) + "\n", None)
    else:
        _emit(format_modelset(result), None)
    return 0


TRANSLATIONS = {
    ("af", "adf"): (af_to_adf, adf_mod.format_adf),
    ("af", "lp"): (af_to_lp, format_lp),
    ("af", "pl"): (af_to_pl, format_theory),
    ("lp", "adf"): (lp_to_adf, adf_mod.format_adf),
    ("lp", "pl"): (clark_completion_pl, format_theory),
    ("adf", "lp"): (adf_to_lp, format_lp),
    ("adf", "pl"): (adf_to_pl, format_theory),
}


def cmd_translate(args) -> int:
    key = (args.source, args.target)
    if key not in TRANSLATIONS:
        raise InputError(f"no translation from {args.source} to {args.target}")
    kb = _load(args.input, args.source)
    fn, fmt = TRANSLATIONS[key]
    _emit(fmt(fn(kb)), args.output)
    return 0


def cmd_realize(args) -> int:
    target = _load(args.target, _format_of(args.target, args.format))
    if not isinstance(target, ModelSet):
        raise InputError("the target must be a model-set file")
    if args.dimacs:
        cnf, vm = encode_bipolar_realizability(target)
        comments = [f"{v} {vm.describe(v)}" for v in range(1, vm.num_vars + 1)]
        _emit(to_dimacs(cnf, comments), args.dimacs)
    if args.semantics == "supported":
        if not target.masks and not len(target.vocabulary):
            raise Refusal("the empty model set has no realization over an empty vocabulary")
        d = realize_adf_supported(target)
    elif args.semantics == "stable":
        if not is_antichain(target):
            raise Refusal("stable model sets are ⊆-antichains; the target is not one")
        if not target.masks and not len(target.vocabulary):
            raise Refusal("the empty model set has no realization over an empty vocabulary")
        d = realize_badf_stable(target)
    else:
        d = decide_bipolar_realizability(target)
        if d is None:
            raise Refusal("no bipolar ADF has exactly these models")
    _emit(adf_mod.format_adf(d), args.output)
    return 0


def cmd_count(args) -> int:
    print(count_realizations(args.n, args.m))
    return 0


def cmd_sat(args) -> int:
    cnf = _load(args.file, "cnf")
    result = solve(cnf)
    if not result.satisfiable:
        print("UNSAT")
        return 1
    print("SAT")
    lits = [v if result.assignment[v] else -v for v in range(1, cnf.num_vars + 1)]
    print("v " + " ".join(map(str, lits + [0])))
    return 0


def cmd_hierarchy(args) -> int:
    if not 1 <= args.atoms <= 3:
        raise InputError("--atoms must be 1, 2 or 3")
    start = time.perf_counter()
    report = verify_hierarchy(default_vocabulary(args.atoms))
    elapsed = time.perf_counter() - start
    if args.json:
        data = report.to_json()
        _emit(json.dumps(data, indent=2, ensure_ascii=False) + "\n", None)
    else:
        _emit(report.to_text(), None)
        print(f"({elapsed:.1f}s)", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_check(args) -> int:
    from .properties import PROPERTIES

    if args.property == "all":
        names = list(PROPERTIES)
    elif args.property in PROPERTIES:
        names = [args.property]
    else:
        raise InputError(f"unknown property {args.property!r}; available: {', '.join(PROPERTIES)}, all")
    status = 0
    for name in names:
        kwargs = {"samples": args.samples} if args.samples is not None else {}
        ok, msg = PROPERTIES[name](**kwargs)
        print(f"{'PASS' if ok else 'FAIL'} {name}: {msg}")
        status = status or (0 if ok else 1)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbrealize",
        description="Two-valued semantics, translations and realizability for AFs, LPs, ADFs and PL.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the model set of a knowledge base")
    p.add_argument("--kb", required=True, help="input file (.af, .lp, .adf, .pl)")
    p.add_argument(
        "--semantics",
        required=True,
        choices=["stable-ext", "supported", "stable", "models"],
        help="stable-ext for AFs; supported (su) or stable (st) for LPs and ADFs; models for PL",
    )
    p.add_argument("--format", choices=["af", "lp", "adf", "pl"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("translate", help="compact translation between formalisms")
    p.add_argument("--from", dest="source", required=True, choices=["af", "lp", "adf"])
    p.add_argument("--to", dest="target", required=True, choices=["adf", "lp", "pl"])
    p.add_argument("input", help="input file, or - for stdin")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("realize", help="build an ADF with a given model set")
    p.add_argument(
        "--semantics",
        required=True,
        choices=["supported", "stable", "bipolar-supported"],
        help="supported (su): any set; stable (st): antichains via a bipolar ADF; bipolar-supported: decide via SAT",
    )
    p.add_argument("--target", required=True, help="model-set file")
    p.add_argument("--format", choices=["models"])
    p.add_argument("--dimacs", help="also write the bipolar-realizability CNF here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("count-realizations", help="number of ADFs with a model set missing m of the 2^n interpretations")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sat", help="SAT solver utilities")
    sat_sub = p.add_subparsers(dest="sat_command", required=True)
    q = sat_sub.add_parser("solve", help="solve a DIMACS CNF file")
    q.add_argument("file")
    q.set_defaults(func=cmd_sat)

    p = sub.add_parser("hierarchy", help="re-derive the expressiveness hierarchy by exhaustive enumeration")
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hierarchy)

    p = sub.add_parser("check", help="run a named invariant suite")
    p.add_argument("--property", required=True, help="suite name, or 'all'")
    p.add_argument("--samples", type=int, help="override the random sample size")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Refusal as exc:
        print("UNREALIZABLE")
        print(f"kbrealize: {exc}", file=sys.stderr)
        return 1
    except (InputError, KbError, OSError, ValueError) as exc:
        print(f"kbrealize: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
