"""Command-line surface.

Subcommands: eval, sweep, fit, shape, compare, simulate.  Output is CSV
on stdout by default, JSON with --json.  Exit codes: 0 success, 2 usage
error, 3 data error, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass

from . import formulas
from .atp import fit_report, parse_stats
from .engine import metrics_exact
from .errors import ConsistencyError, ServelabError
from .shaping import ShapingTargets, compare_table, recommend_cutoff
from .simulate import SimConfig, estimate_metrics, mc_backend
from .svg import polyline_chart
from .types import RuleKind, ServeProfile, schedule_for

__all__ = ["main", "entrypoint", "SweepSpec"]

_METRIC_ORDER = ("win_prob", "bp_prob", "expected_points", "expected_bps")
_EVAL_TOL = 1e-9


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 2
        raise _UsageError(message)


@dataclass(frozen=True)
class SweepSpec:
    """Grid request for sweep: which variable runs, over what range.

    With variable "p" both profile entries equal the grid value; with
    variable "p_F" the grid value is p_F and p_S = 1 - p_F + delta.
    """

    variable: str
    start: float
    stop: float
    step: float
    delta: float | None = None

    def __post_init__(self):
        if self.variable not in ("p", "p_F"):
            raise _UsageError(f"variable must be p or p_F, got {self.variable!r}")
        if not self.start < self.stop:
            raise _UsageError(f"start must be < stop, got {self.start} >= {self.stop}")
        if not (0.0 < self.step <= self.stop - self.start + 1e-9):
            raise _UsageError(
                f"step must lie in (0, stop - start], got {self.step}"
            )
        if self.delta is not None and not (0.0 <= self.delta <= 0.5):
            raise _UsageError(f"delta must lie in [0, 0.5], got {self.delta}")

    def grid(self) -> list[float]:
        n = int((self.stop - self.start) / self.step + 1e-9)
        vals = [self.start + i * self.step for i in range(n + 1)]
        return [min(v, self.stop) for v in vals]


def _prob(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (0.0 <= v <= 1.0):
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {v}")
    return v


def _posint(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not (0 <= v < 2**64):
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _f6(v) -> str:
    return "" if v is None else f"{v:.6f}"


def _f3(v) -> str:
    return "" if v is None else f"{v:.3f}"


def _add_game_flags(p: argparse.ArgumentParser):
    p.add_argument("--game", required=True, choices=[k.value for k in RuleKind])
    p.add_argument("--p", type=_prob, help="per-point chance for A/T games")
    p.add_argument("--pf", type=_prob, help="full-serve chance for Bj/B/C games")
    p.add_argument("--ps", type=_prob, help="single-serve / receiving chance")
    p.add_argument("--x", type=int, default=None,
                   help="single-serve cutoff for game C (default 3)")
    p.add_argument("--order", type=int, choices=(1, 2), default=None,
                   help="serve order variant for Bj/B (default 1)")


def _resolve_game(args) -> tuple[RuleKind, ServeProfile, int, int]:
    kind = RuleKind(args.game)
    scalar = kind in (RuleKind.A, RuleKind.T)
    if scalar:
        if args.p is None:
            raise _UsageError(f"--p is required for game {kind.value}")
        if args.pf is not None or args.ps is not None:
            raise _UsageError(f"game {kind.value} takes --p, not --pf/--ps")
        prof = ServeProfile(args.p, args.p)
    else:
        if args.pf is None or args.ps is None:
            raise _UsageError(f"--pf and --ps are required for game {kind.value}")
        if args.p is not None:
            raise _UsageError(f"game {kind.value} takes --pf/--ps, not --p")
        prof = ServeProfile(args.pf, args.ps)
    if args.x is not None and kind is not RuleKind.C:
        raise _UsageError("--x only applies to game C")
    if args.order is not None and kind not in (RuleKind.BJ, RuleKind.B):
        raise _UsageError("--order only applies to games Bj and B")
    x = 3 if args.x is None else args.x
    if not (0 <= x <= 6):
        raise _UsageError(f"--x must lie in 0..6, got {x}")
    return kind, prof, x, args.order or 1


def _closed_metrics(kind: RuleKind, prof: ServeProfile, x: int) -> dict[str, float]:
    p = prof.p_f
    if kind is RuleKind.A:
        return {
            "win_prob": formulas.p_win_A(p),
            "bp_prob": formulas.p_bp_A(p),
            "expected_points": formulas.e_points_A(p),
            "expected_bps": formulas.e_bp_A(p),
        }
    if kind is RuleKind.T:
        return {
            "win_prob": formulas.p_win_T(p),
            "bp_prob": formulas.p_bp_T(p),
            "expected_points": formulas.e_points_T(p),
            "expected_bps": formulas.e_bp_T(p),
        }
    if kind is RuleKind.BJ:
        return {
            "win_prob": formulas.p_win_Bj(prof),
            "expected_points": formulas.e_points_Bj(prof),
        }
    if kind is RuleKind.B:
        return {
            "win_prob": formulas.p_win_B(prof),
            "expected_points": formulas.e_points_B(prof),
        }
    if kind is RuleKind.C and x == 3:
        return {
            "win_prob": formulas.p_win_C(prof),
            "bp_prob": formulas.p_bp_C(prof),
            "expected_points": formulas.e_points_C(prof),
            "expected_bps": formulas.e_bp_C(prof),
        }
    return {}


def _cmd_eval(args) -> int:
    kind, prof, x, order = _resolve_game(args)
    sched = schedule_for(kind, order=order, x=x)
    m = metrics_exact(sched, prof)
    closed = _closed_metrics(kind, prof, x)
    rows = []
    worst = 0.0
    for name in _METRIC_ORDER:
        engine_v = getattr(m, name)
        if engine_v is None:
            continue
        closed_v = closed.get(name)
        if closed_v is not None:
            worst = max(worst, abs(closed_v - engine_v))
        rows.append((name, closed_v, engine_v))
    if args.json:
        doc = {
            "game": kind.value,
            "profile": {"p_f": prof.p_f, "p_s": prof.p_s},
            "x": x if kind is RuleKind.C else None,
            "metrics": {n: {"closed_form": c, "engine": e} for n, c, e in rows},
            "max_disagreement": worst,
        }
        print(json.dumps(doc, indent=2))
    else:
        print("metric,closed_form,engine")
        for name, c, e in rows:
            print(f"{name},{_f6(c)},{_f6(e)}")
    if worst > _EVAL_TOL:
        print(
            f"error: closed form and engine disagree by {worst:.3e}",
            file=sys.stderr,
        )
        return 4
    return 0


@contextlib.contextmanager
def _out_stream(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _cmd_sweep(args) -> int:
    spec = SweepSpec(args.var, args.start, args.stop, args.step, args.delta)
    kinds = []
    for name in args.games.split(","):
        name = name.strip()
        try:
            kinds.append(RuleKind(name))
        except ValueError:
            raise _UsageError(f"unknown game {name!r} (choose from A,Bj,T,B,C)")
    if not kinds:
        raise _UsageError("at least one game is required")
    x = 3 if args.x is None else args.x
    if not (0 <= x <= 6):
        raise _UsageError(f"--x must lie in 0..6, got {x}")
    delta = spec.delta if spec.delta is not None else 0.0
    two_var = spec.variable == "p_F"
    rows = []
    series: dict[str, list[tuple[float, float]]] = {}
    for v in spec.grid():
        if two_var:
            ps = 1.0 - v + delta
            if not (0.0 <= ps <= 1.0):
                raise _UsageError(
                    f"p_S = 1 - p_F + delta = {ps:.6f} leaves [0, 1] at p_F = {v:.6f}"
                )
            prof = ServeProfile(v, ps)
        else:
            prof = ServeProfile(v, v)
        for kind in kinds:
            sched = schedule_for(kind, x=x)
            try:
                m = metrics_exact(sched, prof)
            except ServelabError as exc:  # singular corner of the grid
                print(f"warning: skipped {kind.value} at {v:.6f}: {exc}", file=sys.stderr)
                continue
            for name in _METRIC_ORDER:
                value = getattr(m, name)
                if value is None:
                    continue
                rows.append((kind.value, name, prof, value))
                series.setdefault(f"{kind.value}:{name}", []).append((v, value))
    with _out_stream(args.out) as fh:
        if two_var:
            fh.write("game,metric,p_f,p_s,value\n")
            for game, name, prof, value in rows:
                fh.write(f"{game},{name},{_f6(prof.p_f)},{_f6(prof.p_s)},{_f6(value)}\n")
        else:
            fh.write("game,metric,p,value\n")
            for game, name, prof, value in rows:
                fh.write(f"{game},{name},{_f6(prof.p_f)},{_f6(value)}\n")
    if args.svg:
        chart = polyline_chart(
            sorted(series.items()),
            title="metric sweep",
            x_label=spec.variable,
            y_label="value",
        )
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(chart)
    return 0


def _cmd_fit(args) -> int:
    rows = parse_stats(args.csv)
    if not rows:
        raise _UsageError("stats file has no data rows")
    fit_rows, summary = fit_report(rows)
    if args.json:
        doc = {
            "rows": [
                {
                    "rank": r.stats.rank,
                    "name": r.stats.name,
                    "p_emp": r.p_emp,
                    "predicted": r.predicted,
                    "observed": r.stats.p_t_won,
                    "residual": r.residual,
                }
                for r in fit_rows
            ],
            "summary": {
                "max_abs_residual": summary.max_abs_residual,
                "mean_residual": summary.mean_residual,
                "nonpositive_count": summary.nonpositive_count,
                "n_rows": summary.n_rows,
            },
        }
        print(json.dumps(doc, indent=2))
        return 0
    print("rank,name,p_emp,predicted,observed,residual")
    for r in fit_rows:
        print(
            f"{r.stats.rank},{r.stats.name},{_f6(r.p_emp)},{_f6(r.predicted)},"
            f"{_f6(r.stats.p_t_won)},{r.residual:+.6f}"
        )
    print(f"# rows {summary.n_rows}")
    print(f"# max_abs_residual {summary.max_abs_residual:.6f}")
    print(f"# mean_residual {summary.mean_residual:+.6f}")
    print(f"# nonpositive_residuals {summary.nonpositive_count} of {summary.n_rows}")
    return 0


def _find_player(rows, selector: str):
    try:
        rank = int(selector)
    except ValueError:
        rank = None
    for stats in rows:
        if rank is not None and stats.rank == rank:
            return stats
        if rank is None and stats.name.casefold() == selector.casefold():
            return stats
    raise ServelabError(f"no player matching {selector!r} in the stats file")


def _cmd_shape(args) -> int:
    rows = parse_stats(args.csv)
    low = _find_player(rows, args.low)
    high = _find_player(rows, args.high)
    targets = ShapingTargets(args.p_low, args.p_high)
    sol = recommend_cutoff(low, high, targets)
    if args.json:
        doc = {
            "low": low.name,
            "high": high.name,
            "p_trad": sol.p_trad,
            "p_exc": sol.p_exc,
            "x_low": sol.x_low,
            "x_high": sol.x_high,
            "x_recommended": sol.x_recommended,
            "warning": sol.warning,
        }
        print(json.dumps(doc, indent=2))
        return 0
    print(f"p_trad,{_f6(sol.p_trad)}")
    print(f"p_exc,{_f6(sol.p_exc)}")
    print(f"x_low,{sol.x_low:.2f}")
    print(f"x_high,{sol.x_high:.2f}")
    print(f"x_recommended,{sol.x_recommended}")
    if sol.warning:
        print(f"# warning: {sol.warning}")
    return 0


def _cmd_compare(args) -> int:
    rows = parse_stats(args.csv)
    if not rows:
        raise _UsageError("stats file has no data rows")
    x = 3 if args.x is None else args.x
    if not (0 <= x <= 6):
        raise _UsageError(f"--x must lie in 0..6, got {x}")
    table = compare_table(rows, x)
    cols = ("p_emp", "p_s_won", "p_t", "p_c", "p_t_br", "p_c_br",
            "e_t", "e_c", "e_t_br", "e_c_br")
    if args.json:
        doc = {
            "x": x,
            "rows": [
                {"rank": r.rank, **{c: getattr(r, c) for c in cols}} for r in table
            ],
        }
        print(json.dumps(doc, indent=2))
        return 0
    print("rank," + ",".join(cols))
    for r in table:
        print(f"{r.rank}," + ",".join(_f6(getattr(r, c)) for c in cols))
    print("# 3-decimal view")
    for r in table:
        print(f"# {r.rank}," + ",".join(_f3(getattr(r, c)) for c in cols))
    return 0


def _cmd_simulate(args) -> int:
    kind, prof, x, order = _resolve_game(args)
    sched = schedule_for(kind, order=order, x=x)
    cfg = SimConfig(
        n_games=args.n, seed=args.seed, max_deuce_cycles=args.max_deuce_cycles
    )
    res = estimate_metrics(sched, prof, cfg)
    m = metrics_exact(sched, prof)
    rows = []
    for name in _METRIC_ORDER:
        est = getattr(res, name)
        if est is None:
            continue
        engine_v = getattr(m, name)
        z = None
        if est.std_err:
            z = (est.mean - engine_v) / est.std_err
        rows.append((name, est.mean, est.std_err, engine_v, z))
    if args.json:
        doc = {
            "game": kind.value,
            "backend": mc_backend(),
            "n_games": res.n_games,
            "seed": args.seed,
            "metrics": {
                n: {"mc_mean": mean, "mc_std_err": se, "engine": ev, "z": z}
                for n, mean, se, ev, z in rows
            },
        }
        print(json.dumps(doc, indent=2))
        return 0
    print("metric,mc_mean,mc_std_err,engine,z")
    for name, mean, se, engine_v, z in rows:
        z_text = "" if z is None else f"{z:+.3f}"
        print(f"{name},{_f6(mean)},{_f6(se)},{_f6(engine_v)},{z_text}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="servelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("eval", help="closed-form and engine metrics for one game")
    _add_game_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep", help="metric curves over a probability grid")
    p.add_argument("--games", required=True, help="comma list, e.g. A,T")
    p.add_argument("--var", choices=("p", "p_F"), default="p")
    p.add_argument("--start", type=_prob, required=True)
    p.add_argument("--stop", type=_prob, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--delta", type=float, default=None,
                   help="offset in p_S = 1 - p_F + delta (p_F sweeps)")
    p.add_argument("--x", type=int, default=None, help="cutoff when sweeping game C")
    p.add_argument("--out", required=True, help="output CSV path, - for stdout")
    p.add_argument("--svg", default=None, help="optional SVG chart path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fit", help="model residuals for a stats table")
    p.add_argument("csv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("shape", help="solve the single-serve cutoff")
    p.add_argument("csv")
    p.add_argument("--low", required=True, help="weaker player: rank or exact name")
    p.add_argument("--high", required=True, help="stronger player: rank or exact name")
    p.add_argument("--p-low", type=_prob, default=0.60, dest="p_low")
    p.add_argument("--p-high", type=_prob, default=0.75, dest="p_high")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_shape)

    p = sub.add_parser("compare", help="existing-vs-proposed table for a stats file")
    p.add_argument("csv")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("simulate", help="Monte Carlo check against the engine")
    _add_game_flags(p)
    p.add_argument("--n", type=_posint, default=10_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--max-deuce-cycles", type=_posint, default=10**6,
                   dest="max_deuce_cycles")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else int(exc.code)
    if getattr(args, "func", None) is None:
        print("usage error: a subcommand is required (see --help)", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ServelabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
