"""Solve for the single-serve cutoff x and build the existing-vs-proposed
comparison table.

The idea: pick a target game-win probability band, invert the existing
game's win curve to find the per-point probabilities that band maps to,
then ask how many early points may keep the second serve so that a
player's blended point chance averages out to the target.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas
from .atp import PlayerStats, p_emp
from .engine import metrics_exact
from .errors import ConsistencyError, DegenerateProfile, RangeError
from .types import ServeProfile, rule_c

__all__ = [
    "ShapingTargets",
    "ShapingSolution",
    "CompareRow",
    "invert_p_win_T",
    "solve_x",
    "recommend_cutoff",
    "compare_table",
]


@dataclass(frozen=True)
class ShapingTargets:
    """Desired band for the server's game-win probability."""

    p_win_low: float = 0.60
    p_win_high: float = 0.75

    def __post_init__(self):
        if not (0.5 < self.p_win_low < self.p_win_high < 1.0):
            raise RangeError(
                "targets must satisfy 0.5 < low < high < 1, got "
                f"({self.p_win_low}, {self.p_win_high})"
            )


@dataclass(frozen=True)
class ShapingSolution:
    p_trad: float  # point chance whose game-win value is the low target
    p_exc: float  # point chance whose game-win value is the high target
    x_low: float  # cutoff solving the weaker player onto p_trad
    x_high: float  # cutoff solving the stronger player onto p_exc
    x_recommended: int
    warning: str | None = None


def invert_p_win_T(target: float) -> float:
    """The unique p with p_win_T(p) = target, by bisection to 1e-9.

    p_win_T is strictly increasing on (0, 1), so plain bisection on
    [1e-6, 1 - 1e-6] suffices.
    """
    if not (0.0 < target < 1.0):
        raise RangeError(f"target must lie in (0, 1), got {target}")
    lo, hi = 1e-6, 1.0 - 1e-6
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if formulas.p_win_T(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12:
            break
    return 0.5 * (lo + hi)


def solve_x(stats: PlayerStats, p_target: float) -> float:
    """Cutoff x mixing x full-serve points with single-serve points so
    the average point chance hits p_target.

    The game length entering the mix is the existing game's expected
    length at the target (an approximation: the new rule would change
    the length slightly).  The result is real-valued and not clamped;
    out-of-range values simply report that no cutoff in 0..6 works.
    """
    blended = p_emp(stats)
    denom = blended - stats.p_s_won
    if abs(denom) < 1e-12:
        raise DegenerateProfile(
            "blended and single-serve chances coincide; the cutoff has no effect"
        )
    return (p_target - stats.p_s_won) / denom * formulas.e_points_T(p_target)


def recommend_cutoff(
    low: PlayerStats, high: PlayerStats, targets: ShapingTargets | None = None
) -> ShapingSolution:
    """Cutoff recommendation from a weaker and a stronger player.

    The weaker player anchors the low target, the stronger the high
    one.  Each cutoff is rounded to the nearest integer; when the two
    disagree, the weaker player's value wins and a warning says so.
    """
    targets = ShapingTargets() if targets is None else targets
    p_trad = invert_p_win_T(targets.p_win_low)
    p_exc = invert_p_win_T(targets.p_win_high)
    x_low = solve_x(low, p_trad)
    x_high = solve_x(high, p_exc)
    r_low = round(x_low)
    r_high = round(x_high)
    warning = None
    if r_low != r_high:
        warning = (
            f"rounded cutoffs disagree ({r_low} from {low.name!r}, "
            f"{r_high} from {high.name!r}); recommending the weaker player's {r_low}"
        )
    return ShapingSolution(
        p_trad=p_trad,
        p_exc=p_exc,
        x_low=x_low,
        x_high=x_high,
        x_recommended=r_low,
        warning=warning,
    )


@dataclass(frozen=True)
class CompareRow:
    """One player's metrics under the existing game (T columns) and the
    proposed game (C columns)."""

    rank: int
    p_emp: float
    p_s_won: float
    p_t: float
    p_c: float
    p_t_br: float
    p_c_br: float
    e_t: float
    e_c: float
    e_t_br: float
    e_c_br: float


def compare_table(rows: list[PlayerStats], x: int = 3) -> list[CompareRow]:
    """Existing-vs-proposed table over player rows at cutoff x.

    T metrics come from the closed forms at the blended chance; C(x)
    metrics from the exact engine at (p_F = blend, p_S = second-serve
    rate).  For x = 3 the closed C forms are cross-checked against the
    engine to 1e-9 as a self-test.
    """
    if not isinstance(x, int) or not (0 <= x <= 6):
        raise RangeError(f"x must be an integer in 0..6, got {x!r}")
    out = []
    sched = rule_c(x)
    for stats in rows:
        blended = p_emp(stats)
        prof = ServeProfile(p_f=blended, p_s=stats.p_s_won)
        mc = metrics_exact(sched, prof)
        if x == 3:
            closed = (
                formulas.p_win_C(prof),
                formulas.p_bp_C(prof),
                formulas.e_points_C(prof),
                formulas.e_bp_C(prof),
            )
            eng = (mc.win_prob, mc.bp_prob, mc.expected_points, mc.expected_bps)
            worst = max(abs(a - b) for a, b in zip(closed, eng))
            if worst > 1e-9:
                raise ConsistencyError(
                    f"closed C forms diverged from the engine by {worst:.3e} "
                    f"for rank {stats.rank}"
                )
        out.append(
            CompareRow(
                rank=stats.rank,
                p_emp=blended,
                p_s_won=stats.p_s_won,
                p_t=formulas.p_win_T(blended),
                p_c=mc.win_prob,
                p_t_br=formulas.p_bp_T(blended),
                p_c_br=mc.bp_prob,
                e_t=formulas.e_points_T(blended),
                e_c=mc.expected_points,
                e_t_br=formulas.e_bp_T(blended),
                e_c_br=mc.expected_bps,
            )
        )
    return out
