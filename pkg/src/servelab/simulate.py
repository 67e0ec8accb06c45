"""Monte Carlo oracle: simulate games under any ServeSchedule.

RNG specification (fully reproducible, no library default involved)
-------------------------------------------------------------------
The generator is splitmix64.  With GAMMA = 0x9E3779B97F4A7C15 and the
finalizer

    mix64(z): z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
              z ^= z >> 27;  z *= 0x94D049BB133111EB;
              z ^= z >> 31          (all arithmetic mod 2**64)

game number i (0-based, absolute) owns the substream keyed by

    base_i = mix64(seed + (i + 1) * GAMMA)

and its k-th draw (k = 0, 1, ...) is

    u = (mix64(base_i + k * GAMMA) >> 11) * 2**-53   in [0, 1).

One draw is consumed per point, in playing order; F wins the point iff
u < its source probability.  Because every game owns an independent
substream, sharding the batch over workers or machines cannot change
the totals.  The compiled kernel (_mc_kernel, built from Cython) and
the pure-Python fallback (_mc_fallback) implement this identically and
are bit-for-bit interchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .errors import DeuceCapExceeded, RangeError
from .types import ServeProfile, ServeSchedule

try:
    from . import _mc_kernel as _kernel

    _BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _mc_fallback as _kernel

    _BACKEND = "pure-python"

from ._mc_fallback import GAMMA, INV53, MASK, mix64

__all__ = [
    "SimConfig",
    "SimResult",
    "MetricEstimate",
    "SplitMix64",
    "substream",
    "simulate_game",
    "estimate_metrics",
    "mc_backend",
]


def mc_backend() -> str:
    """Which kernel estimate_metrics uses: 'compiled' or 'pure-python'."""
    return _BACKEND


class SplitMix64:
    """Draw stream for one simulated game (see module docstring)."""

    __slots__ = ("base", "k")

    def __init__(self, base: int):
        self.base = base & MASK
        self.k = 0

    def next_double(self) -> float:
        u = mix64((self.base + self.k * GAMMA) & MASK)
        self.k += 1
        return (u >> 11) * INV53


def substream(seed: int, game_index: int) -> SplitMix64:
    """Independent per-game stream; game_index is the absolute 0-based index."""
    return SplitMix64(mix64((seed + (game_index + 1) * GAMMA) & MASK))


@dataclass(frozen=True)
class SimConfig:
    n_games: int
    seed: int
    max_deuce_cycles: int = 10**6
    first_game: int = 0  # absolute index of the first game (shard offset)

    def __post_init__(self):
        if self.n_games < 1:
            raise RangeError(f"n_games must be >= 1, got {self.n_games}")
        if self.max_deuce_cycles < 1:
            raise RangeError(f"max_deuce_cycles must be >= 1, got {self.max_deuce_cycles}")
        if not (0 <= self.seed <= MASK):
            raise RangeError("seed must fit in 64 bits")
        if self.first_game < 0:
            raise RangeError(f"first_game must be >= 0, got {self.first_game}")


@dataclass(frozen=True)
class MetricEstimate:
    mean: float
    std_err: float | None  # None when n_games == 1


@dataclass(frozen=True)
class SimResult:
    win_prob: MetricEstimate
    expected_points: MetricEstimate
    bp_prob: MetricEstimate | None
    expected_bps: MetricEstimate | None
    n_games: int
    truncated_games: int


def simulate_game(
    sched: ServeSchedule,
    prof: ServeProfile,
    rng: SplitMix64,
    max_deuce_cycles: int = 10**6,
) -> tuple[bool, int, int]:
    """Play one game; returns (f_won, points, break_points).

    break_points is counted only for all-F-served schedules (it is 0,
    and reported as absent, at the aggregation level otherwise).
    """
    count_bp = sched.all_f_served
    pts = 0
    bps = 0
    f = s = 0
    for p in sched.prefix_probs(prof):
        if count_bp and s == 3 and f <= 2:
            bps += 1
        pts += 1
        if rng.next_double() < p:
            f += 1
            if f == 4:
                return True, pts, bps
        else:
            s += 1
            if s == 4:
                return False, pts, bps
    cyc = sched.cycle_probs(prof)
    d = 0
    cycles = 0
    while True:
        if cycles >= max_deuce_cycles:
            raise DeuceCapExceeded(
                f"tied region still undecided after {cycles} cycles"
            )
        for c in cyc:
            if count_bp and d == -1:
                bps += 1
            pts += 1
            d += 1 if rng.next_double() < c else -1
            if d == 2 or d == -2:
                return d == 2, pts, bps
        cycles += 1


def _estimate(s1: int, s2: int, n: int) -> MetricEstimate:
    mean = s1 / n
    if n == 1:
        return MetricEstimate(mean, None)
    var = (s2 - s1 * s1 / n) / (n - 1)
    if var < 0.0:  # guard against rounding at zero variance
        var = 0.0
    return MetricEstimate(mean, sqrt(var / n))


def estimate_metrics(
    sched: ServeSchedule, prof: ServeProfile, cfg: SimConfig
) -> SimResult:
    """Sample means and standard errors over cfg.n_games games.

    Deterministic given (seed, first_game, n_games, schedule, profile);
    raises DeuceCapExceeded if any game hits the deuce cycle cap.
    """
    count_bp = sched.all_f_served
    wins, bp_games, pts, pts_sq, bps, bps_sq, truncated = _kernel.run_batch(
        cfg.seed,
        cfg.first_game,
        cfg.n_games,
        sched.prefix_probs(prof),
        sched.cycle_probs(prof),
        count_bp,
        cfg.max_deuce_cycles,
    )
    if truncated:
        raise DeuceCapExceeded(
            f"{truncated} of {cfg.n_games} games hit the deuce cycle cap "
            f"({cfg.max_deuce_cycles}); profile is pathological"
        )
    n = cfg.n_games
    return SimResult(
        win_prob=_estimate(wins, wins, n),  # indicator: sum of squares = sum
        expected_points=_estimate(pts, pts_sq, n),
        bp_prob=_estimate(bp_games, bp_games, n) if count_bp else None,
        expected_bps=_estimate(bps, bps_sq, n) if count_bp else None,
        n_games=n,
        truncated_games=0,
    )
