"""Command-line interface.

Exit codes: 0 success, 1 input error (including tripped size budgets),
2 failed property or consistency check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import limits
from .checks import describe_failures, run_poset_checks
from .classify import classify
from .errors import Inconsistent, InputError, SizeGuard
from .poset import Poset, load_poset, poset_ideals
from .randgen import random_poset

_GUARD_HINTS = {
    "box volume": "--max-box (or HIBI_MAX_BOX)",
    "zigzag sequence count": "--max-sequences",
    "potential ideal count": "--max-ideals",
    "poset size": "--max-elements",
}


def _budget_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--max-elements", type=int, default=limits.MAX_ELEMENTS)
    sp.add_argument("--max-box", type=int, default=None,
                    help=f"search-box volume budget (default {limits.MAX_BOX_VOLUME}, "
                         f"env {limits.ENV_MAX_BOX})")
    sp.add_argument("--max-sequences", type=int, default=limits.MAX_SEQUENCES)


def _resolve_max_box(args) -> int:
    if args.max_box is not None:
        return args.max_box
    env = os.environ.get(limits.ENV_MAX_BOX, "").strip()
    if env:
        return int(env)
    return limits.MAX_BOX_VOLUME


def _load_guarded(path: str, max_elements: int) -> Poset:
    p = load_poset(path)
    if len(p) > max_elements:
        raise SizeGuard("poset size", len(p), max_elements)
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hibiring",
        description="Canonical-module generators and classification of Hibi rings "
                    "of finite posets with a unique minimal element.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="classify one poset file")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    _budget_args(sp)

    sp = sub.add_parser("check", help="run the invariant suites over a corpus")
    sp.add_argument("corpus", nargs="?", help="directory of poset JSON files")
    sp.add_argument("--random", type=int, metavar="N", help="generate N random posets")
    sp.add_argument("--n", type=int, default=8, help="elements per random poset")
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--oracle-cap", type=int, default=limits.ORACLE_CAP)
    _budget_args(sp)

    sp = sub.add_parser("export-lattice", help="emit the distributive lattice of ideals")
    sp.add_argument("file")
    sp.add_argument("--max-ideals", type=int, default=limits.MAX_IDEALS)
    sp.add_argument("--max-elements", type=int, default=limits.MAX_ELEMENTS)

    sp = sub.add_parser("random", help="generate random poset documents")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--count", type=int, default=1)
    return ap


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True)


def cmd_analyze(args) -> int:
    p = _load_guarded(args.file, args.max_elements)
    report = classify(p, max_box=_resolve_max_box(args), max_sequences=args.max_sequences)
    if args.json:
        print(_dump(report.to_dict()))
    else:
        _print_report(args.file, p, report)
    return 0 if report.consistent else 2


def _print_report(path: str, p: Poset, report) -> None:
    doc = report.to_dict()
    wit = doc["rmax_witness"]
    wit_str = "(empty)" if not wit["ys"] else "(" + ", ".join(
        v for pair in zip(wit["ys"], wit["xs"]) for v in pair) + ")"
    hist = doc["degree_histogram"]
    hist_str = ("  ".join(f"{k}:{v}" for k, v in hist.items()) if hist else "-")
    nl2 = doc["nonlevel_type2_witness"]
    rows = [
        ("poset", f"{path} ({len(p)} elements)"),
        ("rank r", str(doc["r"])),
        ("r_max", str(doc["r_max"])),
        ("r_max witness", f"{wit_str}  value {wit.get('value', doc['r_max'])}"),
        ("floating set", "{" + ", ".join(doc["floating"]) + "}"),
        ("gorenstein", "yes" if doc["gorenstein"] else "no"),
        ("level", "yes" if doc["level"] else "no"),
        ("CM type", str(doc["cm_type"]) if doc["cm_type"] is not None else "unknown"),
        ("degree histogram", hist_str),
        ("level type-2 z", doc["level_type2_witness"] or "-"),
        ("non-level type-2", f"({nl2[0]}, {nl2[1]})" if nl2 else "-"),
        ("mode", doc["mode"]),
        ("cross-checks", f"{sum(c['passed'] for c in doc['cross_checks'])}"
                         f"/{len(doc['cross_checks'])} passed"),
    ]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}} : {v}")
    for c in doc["cross_checks"]:
        if not c["passed"]:
            print(f"INCONSISTENT {c['name']}: {c['detail']}")


def cmd_check(args) -> int:
    posets: list[tuple[str, Poset, dict | None]] = []
    if args.random is not None:
        if args.seed is None:
            raise InputError("--random requires --seed")
        for i in range(args.random):
            p = random_poset(args.n, args.density, args.seed + i)
            posets.append((f"random[{args.seed + i}]", p, None))
    elif args.corpus:
        root = Path(args.corpus)
        if not root.is_dir():
            raise InputError(f"{args.corpus}: not a directory")
        files = sorted(root.glob("*.json"))
        if not files:
            raise InputError(f"{args.corpus}: no *.json files")
        for f in files:
            with open(f, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            p = _load_guarded(f, args.max_elements)
            posets.append((f.name, p, doc.get("expect")))
    else:
        raise InputError("check needs a corpus directory or --random N")

    max_box = _resolve_max_box(args)
    bad = 0
    for name, p, expect in posets:
        failures: list[str] = []
        try:
            failures.extend(
                run_poset_checks(
                    p,
                    oracle_cap=args.oracle_cap,
                    max_box=max_box,
                    max_sequences=args.max_sequences,
                )
            )
        except SizeGuard as exc:
            print(f"skip {name}: {_guard_message(exc)}")
            continue
        if expect:
            failures.extend(_check_expectations(p, expect, max_box, args.max_sequences))
        if failures:
            bad += 1
            print(f"FAIL {name}")
            print(describe_failures(p, failures))
        else:
            print(f"ok   {name}")
    print(f"checked {len(posets)} posets, {bad} failing")
    return 2 if bad else 0


def _check_expectations(p: Poset, expect: dict, max_box: int, max_sequences: int) -> list[str]:
    report = classify(p, max_box=max_box, max_sequences=max_sequences)
    doc = report.to_dict()
    failures = []
    for key, want in expect.items():
        if key not in doc:
            failures.append(f"expect block names unknown field {key!r}")
            continue
        got = doc[key]
        if got is None and report.mode == "criteria-only":
            continue  # not computable under the current budget
        if got != want:
            failures.append(f"expected {key}={want!r}, computed {got!r}")
    return failures


def cmd_export_lattice(args) -> int:
    p = _load_guarded(args.file, args.max_elements)
    ideals = poset_ideals(p, cap=args.max_ideals)
    listed = [sorted(i) for i in ideals]
    print(_dump({"ideals": listed, "monomials": listed}))
    return 0


def cmd_random(args) -> int:
    for i in range(args.count):
        p = random_poset(args.n, args.density, args.seed + i)
        print(_dump(p.to_dict()))
    return 0


def _guard_message(exc: SizeGuard) -> str:
    hint = _GUARD_HINTS.get(exc.what)
    return f"{exc}" + (f"; raise with {hint}" if hint else "")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "analyze": cmd_analyze,
        "check": cmd_check,
        "export-lattice": cmd_export_lattice,
        "random": cmd_random,
    }[args.command]
    try:
        return handler(args)
    except SizeGuard as exc:
        print(f"error: {_guard_message(exc)}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Inconsistent as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
