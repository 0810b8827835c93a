"""Command-line front end: ``seqpivot {replay-tables,simulate,verify,sweep}``.

Exit status: 0 success or all properties hold, 1 a property or golden replay
failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import golden
from .core import (
    DomainError,
    ProjectInstance,
    format_rational,
    pivotal_spec,
    to_rational,
    zero_h_spec,
    zero_tax,
)
from .sequential import PlayTrace, check_order, play, sweep_orders
from .strategies import STRATEGY_IDS, named_strategy, strategy_vector
from .verification import (
    UTILITY,
    VALUATION,
    build_grid,
    check_groves_invariance,
    check_lemma_compat,
    nash_check,
    verify_ic,
    verify_optimal,
    verify_socially_optimal,
    welfare_maximality,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

SCHEMES = {"pivotal": pivotal_spec, "h0": zero_h_spec, "zero": zero_tax}
SUITES = ("optimal", "social", "compat", "ic", "nash", "invariance", "welfare-max", "all")


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    instance: ProjectInstance
    true_types: tuple[Fraction, ...] | None
    order: tuple[int, ...] | str
    strategies: tuple[str, ...]
    steps: int
    extra: tuple[Fraction, ...]
    fmt: str
    out: str | None
    measure: str = "utility"
    tie_measure: str | None = None


def label(player: int) -> str:
    return chr(ord("A") + player - 1) if player <= 26 else f"P{player}"


def _rationals(text: str | None) -> tuple[Fraction, ...]:
    if not text:
        return ()
    try:
        return tuple(to_rational(part) for part in text.split(","))
    except (DomainError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def _config(args, need_types: bool) -> RunConfig:
    try:
        cost = to_rational(args.cost)
    except (DomainError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    types = _rationals(getattr(args, "types", None))
    n = args.players or (len(types) if types else None)
    if n is None:
        if need_types:
            raise ConfigError("--types is required")
        n = 3
    if types and len(types) != n:
        raise ConfigError(f"--players {n} but {len(types)} types given")
    try:
        instance = ProjectInstance(n, cost)
        if types:
            types = instance.profile(types)
        raw_order = getattr(args, "order", None) or "identity"
        if raw_order == "all":
            order = "all"
        elif raw_order == "identity":
            order = tuple(range(1, n + 1))
        else:
            order = check_order([int(p) for p in raw_order.split(",")], n)
        names = tuple(s.strip() for s in (getattr(args, "strategy", None) or "").split(",") if s.strip())
        for name in names:
            if name not in STRATEGY_IDS:
                raise ConfigError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGY_IDS)}")
        if len(names) not in (0, 1, n):
            raise ConfigError(f"give one strategy or {n}, got {len(names)}")
        extra = tuple(instance.check_type(v) for v in _rationals(getattr(args, "extra", None)))
    except (DomainError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        instance=instance,
        true_types=types or None,
        order=order,
        strategies=names,
        steps=getattr(args, "steps", 6),
        extra=extra,
        fmt=args.format,
        out=args.out,
        measure=getattr(args, "measure", UTILITY),
        tie_measure=getattr(args, "tie_measure", None),
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vector(cfg: RunConfig, default: str):
    names = cfg.strategies or (default,)
    if len(names) == 1:
        return strategy_vector(names[0], cfg.instance)
    return tuple(named_strategy(name, i, cfg.instance) for i, name in enumerate(names, start=1))


# -- renderers -------------------------------------------------------------


def render_table(trace: PlayTrace) -> str:
    """Per-player table laid out like the recorded examples."""
    header = ("player", "type", "submitted type", "tax", "u_i")
    rows = [header]
    for i in range(len(trace.true_types)):
        rows.append(
            (
                label(i + 1),
                format_rational(trace.true_types[i]),
                format_rational(trace.announcements[i]),
                format_rational(trace.outcome.taxes[i]),
                format_rational(trace.outcome.utilities[i]),
            )
        )
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    lines = [" | ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    order = ", ".join(label(p) for p in trace.order)
    lines.append(
        f"order {order}; decision {trace.outcome.decision}; "
        f"social welfare {format_rational(trace.outcome.social_welfare)}"
    )
    return "\n".join(lines) + "\n"


def _sweep_rows(results) -> list[dict]:
    rows = []
    for order, trace in results:
        rows.append(
            {
                "order": ",".join(str(p) for p in order),
                "labels": "".join(label(p) for p in order),
                "announcements": ",".join(format_rational(a) for a in trace.announcements),
                "taxes": ",".join(format_rational(t) for t in trace.outcome.taxes),
                "decision": trace.outcome.decision,
                "social_welfare": format_rational(trace.outcome.social_welfare),
                "budget_balanced": trace.budget_balanced,
            }
        )
    return rows


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- commands --------------------------------------------------------------


def cmd_replay_tables(args) -> int:
    actual = golden.recompute()
    problems = golden.diff(golden.GOLDEN, actual)
    if args.format == "json":
        text = json.dumps({"match": not problems, "diff": problems, "tables": actual}, sort_keys=True, indent=2) + "\n"
    else:
        lines = [f"{name}: {'ok' if not any(p.startswith(name + '.') for p in problems) else 'MISMATCH'}"
                 for name in golden.GOLDEN]
        lines += problems
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _config(args, need_types=True)
    if cfg.order == "all":
        raise ConfigError("simulate takes one order; use sweep for all orders")
    trace = play(cfg.instance, SCHEMES[args.mechanism](), cfg.order, _vector(cfg, "truth"), cfg.true_types)
    if cfg.fmt == "json":
        text = json.dumps(trace.to_dict(), sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _csv(_sweep_rows([(trace.order, trace)]))
    else:
        text = render_table(trace)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config(args, need_types=True)
    try:
        results = sweep_orders(cfg.instance, SCHEMES[args.mechanism](), _vector(cfg, "truth"), cfg.true_types)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    rows = _sweep_rows(results)
    if cfg.fmt == "json":
        text = json.dumps(rows, sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _csv(rows)
    else:
        text = "".join(render_table(trace) + "\n" for _, trace in results)
    _emit(text, cfg.out)
    return EXIT_OK


def _run_suite(suite: str, cfg: RunConfig, mechanisms: Sequence[str]):
    inst = cfg.instance
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            grid = build_grid(inst, cfg.steps, cfg.extra)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
    players = range(1, inst.n + 1)
    names = cfg.strategies
    verdicts = []
    if suite in ("optimal", "all"):
        for name in names or ("thm3", "thm5"):
            verdicts += [verify_optimal(named_strategy(name, i, inst), inst, grid) for i in players]
    if suite in ("social", "all"):
        for name in names or ("thm5",):
            verdicts += [verify_socially_optimal(named_strategy(name, i, inst), inst, grid) for i in players]
    if suite in ("compat", "all"):
        verdicts.append(check_lemma_compat(inst, grid))
    if suite in ("ic", "all"):
        verdicts += [verify_ic(inst, SCHEMES[m](), grid) for m in mechanisms]
    if suite in ("nash", "all"):
        for name in names or ("thm3", "thm5"):
            vec = strategy_vector(name, inst)
            kw = {"measure": cfg.measure, "tie_measure": cfg.tie_measure}
            verdicts.append(nash_check(vec, inst, grid, **kw))
            verdicts.append(nash_check(strategy_vector("truth", inst), inst, grid, base=vec, **kw))
    if suite in ("invariance", "all"):
        for name in names or STRATEGY_IDS:
            verdicts += [
                check_groves_invariance(named_strategy(name, i, inst), inst, grid, pivotal_spec(), zero_h_spec())
                for i in players
            ]
    if suite in ("welfare-max", "all"):
        for name in names or ("thm5",):
            verdicts.append(welfare_maximality(inst, grid, name))
    return verdicts


def cmd_verify(args) -> int:
    cfg = _config(args, need_types=False)
    if args.vector:
        cfg = RunConfig(**{**cfg.__dict__, "strategies": tuple(args.vector.split(","))})
        for name in cfg.strategies:
            if name not in STRATEGY_IDS:
                raise ConfigError(f"unknown strategy {name!r}")
    mechanisms = args.mechanism.split(",") if args.mechanism else ["pivotal", "h0"]
    for m in mechanisms:
        if m not in SCHEMES:
            raise ConfigError(f"unknown mechanism {m!r}; choose from {', '.join(SCHEMES)}")
    verdicts = _run_suite(args.suite, cfg, mechanisms)
    if cfg.fmt == "json":
        text = json.dumps([v.to_dict(max_violations=5) for v in verdicts], sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        rows = []
        for v in verdicts:
            w = v.witness.to_dict() if v.witness else {}
            rows.append({
                "property": v.property,
                "holds": v.holds,
                "checked": v.checked,
                "witness_profile": ",".join(w.get("profile") or []),
                "witness_player": w.get("player") or "",
                "witness_deviation": json.dumps(w.get("deviation")) if w else "",
                "lhs": w.get("lhs") or "",
                "rhs": w.get("rhs") or "",
            })
        text = _csv(rows)
    else:
        text = "\n".join(v.summary() for v in verdicts) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_FAIL


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqpivot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, types=True):
        p.add_argument("--cost", default="300", help="project cost c (integer, decimal or p/q)")
        p.add_argument("--players", type=int, help="number of players n")
        if types:
            p.add_argument("--types", help="comma-separated true types")
        p.add_argument("--format", choices=("json", "csv", "table"), default="table")
        p.add_argument("--out", help="write the report to PATH instead of stdout")

    p = sub.add_parser("replay-tables", help="recompute the recorded examples and diff them")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_replay_tables)

    p = sub.add_parser("simulate", help="play one sequential mechanism")
    common(p)
    p.add_argument("--order", help="comma-separated 1-based player order (default 1..n)")
    p.add_argument("--strategy", "--vector", dest="strategy", help=f"one of {', '.join(STRATEGY_IDS)}, or one per player")
    p.add_argument("--mechanism", choices=tuple(SCHEMES), default="pivotal")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="play every player order")
    common(p)
    p.add_argument("--order", default="all", help=argparse.SUPPRESS)
    p.add_argument("--strategy", "--vector", dest="strategy")
    p.add_argument("--mechanism", choices=tuple(SCHEMES), default="pivotal")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run exhaustive verification suites")
    p.add_argument("suite", choices=SUITES)
    common(p, types=False)
    p.add_argument("--steps", type=int, default=6, help="grid steps m (points 0, c/m, ..., c)")
    p.add_argument("--extra", help="comma-separated extra grid points")
    p.add_argument("--strategy", help="strategy ids to check")
    p.add_argument("--vector", help="strategy-vector ids (nash, welfare-max)")
    p.add_argument("--mechanism", help="comma-separated tax schemes for ic (pivotal,h0,zero)")
    p.add_argument("--measure", choices=(UTILITY, VALUATION), default=UTILITY,
                   help="score for the nash dominance clause")
    p.add_argument("--tie-measure", choices=(UTILITY, VALUATION),
                   help="score for the nash sequential-play clause (default: --measure)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"seqpivot: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"seqpivot: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
