"""Command-line front end.

Subcommands: ``generate``, ``analyze``, ``container``, ``verify-theorems`` and
``regen-catalog``.  Exit status is 0 on success, 1 when a requested
container does not exist or a certification fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .connectivity import (
    connectivity,
    has_length2_path_everywhere,
    has_two_bypass_everywhere,
    is_k_strong,
    lemma_bound,
    vertex_connectivity,
)
from .containers import (
    DEFAULT_ORACLE_BOUND,
    Mode,
    ProvenAbsent,
    build_strong_container,
    build_weak_container,
    oracle_container,
    verify_container,
)
from .core import (
    degree_profile,
    near_regular_tournament,
    random_tournament,
    read_tournament,
    strong_decomposition,
    to_text,
)
from .errors import NotConstructible, OrderTooLarge, SearchBudgetExceeded, TournamentError
from .hamilton import DEFAULT_BUDGET, catalog_closed_under_reversal, derive_exceptional_catalog, format_catalog
from .spanning import survey

log = logging.getLogger("tournspan")

ORACLE_ENV = "TOURNSPAN_ORACLE_BOUND"


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    output: str | None = None
    seed: int | None = None
    oracle_bound: int = DEFAULT_ORACLE_BOUND
    budget: int = DEFAULT_BUDGET
    format: str = "text"


class UsageError(Exception):
    pass


def _emit(config: RunConfig, payload: dict, text: str) -> None:
    if config.format == "json":
        payload = dict(payload, config=asdict(config))
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = text
    if config.output and config.subcommand != "generate":
        Path(config.output).write_text(out)
    else:
        sys.stdout.write(out)


def _parse_orders(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty order specification {spec!r}")
    return out


def _default_oracle_bound() -> int:
    raw = os.environ.get(ORACLE_ENV)
    return int(raw) if raw else DEFAULT_ORACLE_BOUND


# ----------------------------------------------------------------------
# generate


def cmd_generate(args, config: RunConfig) -> int:
    if args.kind == "random":
        t = random_tournament(args.n, args.seed)
    else:
        if args.k is None:
            raise UsageError("--k is required for --kind near_regular")
        t = near_regular_tournament(args.n, args.k, args.seed)
    prof = degree_profile(t)
    kappa = connectivity(t)
    if args.out:
        Path(args.out).write_text(to_text(t))
        info = sys.stdout
    else:
        sys.stdout.write(to_text(t))
        info = sys.stderr
    print(f"n={t.n} seed={args.seed} kind={args.kind}", file=info)
    print("out-degrees: " + " ".join(map(str, prof.out_degrees)), file=info)
    print(f"irregularity: {prof.irregularity}", file=info)
    print(f"kappa: {kappa}", file=info)
    return 0


# ----------------------------------------------------------------------
# analyze


def cmd_analyze(args, config: RunConfig) -> int:
    t = read_tournament(args.input)
    prof = degree_profile(t)
    kappa, cert = vertex_connectivity(t)
    dec = strong_decomposition(t)
    k = prof.irregularity if args.k is None else args.k
    bound = lemma_bound(t.n, k)
    sep = sorted(cert.separator) if cert else []
    payload = {
        "meta": {"n": t.n, "irregularity": prof.irregularity, "kappa": kappa},
        "out_degrees": list(prof.out_degrees),
        "in_degrees": list(prof.in_degrees),
        "separator": sep,
        "components": [list(c) for c in dec.components],
        "irregularity_bound": {"k": k, "bound": bound, "satisfied": kappa >= bound},
    }
    lines = [
        f"n: {t.n}",
        "out-degrees: " + " ".join(map(str, prof.out_degrees)),
        "in-degrees: " + " ".join(map(str, prof.in_degrees)),
        f"irregularity: {prof.irregularity}",
        f"kappa: {kappa}",
        "minimum separator: " + (" ".join(map(str, sep)) if sep else "-"),
        "strong components: " + " | ".join(" ".join(map(str, c)) for c in dec.components),
        f"irregularity bound (k={k}): ceil(({t.n} - 2*{k})/3) = {bound}, "
        + ("satisfied" if kappa >= bound else "VIOLATED"),
    ]
    _emit(config, payload, "\n".join(lines) + "\n")
    return 0


# ----------------------------------------------------------------------
# container


def cmd_container(args, config: RunConfig) -> int:
    t = read_tournament(args.input)
    for v in (args.x, args.y):
        if not 0 <= v < t.n:
            raise UsageError(f"vertex {v} outside 0..{t.n - 1}")
    if args.x == args.y:
        raise UsageError("x and y must differ")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    mode = Mode(args.mode)
    try:
        if args.oracle:
            result = oracle_container(t, args.x, args.y, args.k, mode, bound=config.oracle_bound)
        elif mode is Mode.STRONG:
            result = build_strong_container(
                t, args.x, args.y, args.k, oracle_bound=config.oracle_bound, budget=config.budget
            )
        else:
            result = build_weak_container(
                t, args.x, args.y, args.k, oracle_bound=config.oracle_bound, budget=config.budget
            )
    except OrderTooLarge as exc:
        raise UsageError(str(exc)) from None
    except (NotConstructible, SearchBudgetExceeded) as exc:
        trace = getattr(exc, "trace", None)
        payload = {"status": "NotConstructible", "message": str(exc), "trace": trace.to_dict() if trace else None}
        text = f"NotConstructible: {exc}\n"
        if trace is not None:
            text += f"trace: case={trace.case} failure={trace.failure}\n"
        _emit(config, payload, text)
        return 1
    if isinstance(result, ProvenAbsent):
        payload = {"status": "ProvenAbsent", "x": args.x, "y": args.y, "k": args.k, "mode": mode.value}
        _emit(config, payload, f"ProvenAbsent: no spanning {mode.value} {args.k}-container between {args.x} and {args.y}\n")
        return 1
    problems = verify_container(t, result, expect_spanning=True)
    payload = {"status": "ok" if not problems else "invalid", "container": result.to_dict(),
               "violations": [asdict(v) for v in problems]}
    lines = [f"{mode.value} container between {result.x} and {result.y}, {len(result)} paths, spanning={result.spanning}"]
    for p in result.paths:
        lines.append("  " + " -> ".join(map(str, p)))
    lines.append("verification: " + ("ok" if not problems else "; ".join(v.detail for v in problems)))
    tr = result.trace
    if tr is not None:
        lines.append(f"trace: case={tr.case} base={tr.base} length2={tr.length2} "
                     f"length3={tr.length3} deleted={tr.deleted}")
        for note in tr.notes:
            lines.append(f"  note: {note}")
    _emit(config, payload, "\n".join(lines) + "\n")
    return 0 if not problems else 1


# ----------------------------------------------------------------------
# verify-theorems


def _minimal_budget(n: int) -> int:
    return 1 - n % 2


def _pairwise_suite(name, orders, seeds, need_strength, extra_filter, build):
    rows = []
    failures = 0
    for n in orders:
        for seed in seeds:
            t = near_regular_tournament(n, _minimal_budget(n), seed)
            entry = {"suite": name, "n": n, "seed": seed}
            if not is_k_strong(t, need_strength) or (extra_filter and not extra_filter(t)):
                entry["status"] = "filtered"
                rows.append(entry)
                continue
            bad = []
            for x in range(n):
                for y in range(x + 1, n):
                    try:
                        c = build(t, x, y)
                        if verify_container(t, c, expect_spanning=True):
                            bad.append([x, y])
                    except (NotConstructible, SearchBudgetExceeded):
                        bad.append([x, y])
            entry["status"] = "certified" if not bad else "failed"
            entry["failed_pairs"] = bad
            failures += bool(bad)
            rows.append(entry)
    return rows, failures


def cmd_verify_theorems(args, config: RunConfig) -> int:
    seeds = list(range(args.seed_start, args.seed_start + args.seeds))
    suites = ["thm10", "prop11", "sec3", "bypass", "sec4"] if args.suite == "all" else [args.suite]
    kw = dict(oracle_bound=config.oracle_bound, budget=config.budget)
    results = {}
    failures = 0
    for suite in suites:
        if suite == "sec4":
            orders = _parse_orders(args.n) if args.n else [13]
            k = 0 if args.k is None else args.k
            t = 2 if args.t is None else args.t
            res = survey(orders, [k], [t], seeds, config.oracle_bound, config.budget)
            results[suite] = res.to_dict()
            failures += not res.ok
            continue
        k = args.k if args.k is not None else {"thm10": 1, "prop11": 1, "sec3": 2, "bypass": 2}[suite]
        default_n = {"thm10": "9..11", "prop11": "9..11", "sec3": "13..15", "bypass": "13..15"}[suite]
        orders = _parse_orders(args.n or default_n)
        if suite == "thm10":
            rows, bad = _pairwise_suite(suite, orders, seeds, 2 * k + 1, None,
                                        lambda t, x, y: build_weak_container(t, x, y, k + 2, **kw))
        elif suite == "prop11":
            rows, bad = _pairwise_suite(suite, orders, seeds, 2 * k, has_length2_path_everywhere,
                                        lambda t, x, y: build_weak_container(t, x, y, k + 2, **kw))
        elif suite == "sec3":
            rows, bad = _pairwise_suite(suite, orders, seeds, 2 * k, None,
                                        lambda t, x, y: build_strong_container(t, x, y, k, **kw))
        else:
            rows, bad = _pairwise_suite(suite, orders, seeds, 2 * k + 1, has_two_bypass_everywhere,
                                        lambda t, x, y: build_strong_container(t, x, y, k + 1, inferred=True, **kw))
        results[suite] = {"k": k, "instances": rows}
        failures += bad
    lines = []
    for suite, res in results.items():
        if suite == "sec4":
            s = res["summary"]
            lines.append(f"sec4: {s['certified']} certified, {s['failed']} failed, "
                         f"{s['hypothesis_not_met']} below threshold, {s['skipped']} skipped")
            continue
        inst = res["instances"]
        cert = sum(r["status"] == "certified" for r in inst)
        fail = sum(r["status"] == "failed" for r in inst)
        filt = sum(r["status"] == "filtered" for r in inst)
        lines.append(f"{suite} (k={res['k']}): {cert}/{cert + fail} certified, {filt} filtered out")
    lines.append("result: " + ("ok" if not failures else "FAILED"))
    _emit(config, {"suites": results, "ok": not failures}, "\n".join(lines) + "\n")
    return 0 if not failures else 1


# ----------------------------------------------------------------------
# regen-catalog


def cmd_regen_catalog(args, config: RunConfig) -> int:
    entries = derive_exceptional_catalog()
    text = format_catalog(entries)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    info = sys.stdout if args.out else sys.stderr
    print(f"{len(entries)} exceptional configurations; closed under reversal: "
          f"{catalog_closed_under_reversal(entries)}", file=info)
    for e in entries:
        print(f"  pair {e.pair[0]} {e.pair[1]}, kappa {connectivity(e.tournament)}", file=info)
    return 0


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tournspan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--oracle-bound", type=int, default=None,
                        help=f"largest order searched exactly (default {DEFAULT_ORACLE_BOUND}, env {ORACLE_ENV})")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget for path searches")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a tournament in tourn-v1 format")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--kind", choices=["random", "near_regular"], required=True)
    g.add_argument("--k", type=int, help="irregularity budget (near_regular)")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", parents=[common], help="degrees, connectivity, decomposition")
    a.add_argument("input")
    a.add_argument("--k", type=int, help="irregularity budget for the bound (default: i(T))")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("container", parents=[common], help="build or search a spanning container")
    c.add_argument("input")
    c.add_argument("--x", type=int, required=True)
    c.add_argument("--y", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--mode", choices=["strong", "weak"], required=True)
    c.add_argument("--oracle", action="store_true", help="exact search instead of the builder")
    c.add_argument("--out")
    c.set_defaults(func=cmd_container)

    v = sub.add_parser("verify-theorems", parents=[common], help="certify theorem instances on seeded samples")
    v.add_argument("--suite", choices=["thm10", "prop11", "sec3", "bypass", "sec4", "all"], default="all")
    v.add_argument("--n", help="orders, e.g. 13 or 9..11 or 12,14")
    v.add_argument("--k", type=int, help="theorem parameter (irregularity budget for sec4)")
    v.add_argument("--t", type=int, help="target for sec4")
    v.add_argument("--seeds", type=int, default=5, help="number of seeds")
    v.add_argument("--seed-start", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_theorems)

    r = sub.add_parser("regen-catalog", parents=[common], help="rederive the exceptional 6-vertex catalog")
    r.add_argument("--out")
    r.set_defaults(func=cmd_regen_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    config = RunConfig(
        subcommand=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "out", None),
        seed=getattr(args, "seed", None),
        oracle_bound=args.oracle_bound if args.oracle_bound is not None else _default_oracle_bound(),
        budget=args.budget,
        format=args.format,
    )
    try:
        return args.func(args, config)
    except (UsageError, TournamentError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
