"""Domain vocabulary: probabilities, serve profiles, rule kinds, schedules.

All types are immutable values and safe to share between threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import RangeError

__all__ = [
    "PointSource",
    "RuleKind",
    "ServeProfile",
    "ServeSchedule",
    "GameMetrics",
    "AlgebraTerm",
    "eval_term",
    "rule_a",
    "rule_bj",
    "rule_t",
    "rule_b",
    "rule_c",
    "schedule_for",
]


def _check_unit(name: str, value: float) -> float:
    if not (0.0 <= value <= 1.0):
        raise RangeError(f"{name} must lie in [0, 1], got {value!r}")
    return float(value)


class PointSource(enum.Enum):
    """Which probability governs a point, and who serves it.

    F_FULL   - player F serves with both attempts available (resolves to p_F)
    F_SINGLE - player F serves but a first-serve fault loses the point
               (resolves to p_S)
    S_SERVE  - player S serves (also resolves to p_S: numerically the same
               weaker chance for F, semantically a different server)
    """

    F_FULL = "F_FULL"
    F_SINGLE = "F_SINGLE"
    S_SERVE = "S_SERVE"

    @property
    def server(self) -> str:
        return "S" if self is PointSource.S_SERVE else "F"

    def prob(self, prof: "ServeProfile") -> float:
        return prof.p_f if self is PointSource.F_FULL else prof.p_s


class RuleKind(enum.Enum):
    """The five game variants the library evaluates.

    A  - deuce-type game, F serves every point
    BJ - deuce-type game, serve alternating every point
    T  - the existing tennis game (F serves throughout, two attempts)
    B  - complete game with the serve alternating every point
    C  - proposed game: second serve allowed only on the first x points
    """

    A = "A"
    BJ = "Bj"
    T = "T"
    B = "B"
    C = "C"


@dataclass(frozen=True)
class ServeProfile:
    """The pair (p_F, p_S).

    p_f: chance F wins a point on a full (two-attempt) serve.
    p_s: chance F wins a point under the weaker condition, i.e. when S
         serves or when F is restricted to a single attempt.
    """

    p_f: float
    p_s: float

    def __post_init__(self):
        _check_unit("p_f", self.p_f)
        _check_unit("p_s", self.p_s)

    def swapped(self) -> "ServeProfile":
        """Complement both entries; relabels which player is favoured."""
        return ServeProfile(1.0 - self.p_f, 1.0 - self.p_s)


@dataclass(frozen=True)
class ServeSchedule:
    """Per-point probability-source pattern for one game.

    prefix: sources for points 1..6 (a complete game reaches 3:3 or is
        decided within six points, so six entries always suffice).  An
        empty prefix means a deuce-type game that starts directly in the
        tied region.
    deuce_cycle: repeating unit of length 1 or 2 applied at and after the
        first tie at 3:3 (or from the start, for deuce-type games).
    """

    prefix: tuple[PointSource, ...]
    deuce_cycle: tuple[PointSource, ...]

    def __post_init__(self):
        if len(self.prefix) not in (0, 6):
            raise RangeError(
                f"prefix must cover points 1..6 or be empty, got length {len(self.prefix)}"
            )
        if len(self.deuce_cycle) not in (1, 2):
            raise RangeError(
                f"deuce cycle length must be 1 or 2, got {len(self.deuce_cycle)}"
            )

    @property
    def deuce_only(self) -> bool:
        return not self.prefix

    @property
    def all_f_served(self) -> bool:
        """True when F serves every point, so break points are defined."""
        return all(src.server == "F" for src in self.prefix + self.deuce_cycle)

    def prefix_probs(self, prof: ServeProfile) -> tuple[float, ...]:
        return tuple(src.prob(prof) for src in self.prefix)

    def cycle_probs(self, prof: ServeProfile) -> tuple[float, ...]:
        return tuple(src.prob(prof) for src in self.deuce_cycle)


_F = PointSource.F_FULL
_G = PointSource.F_SINGLE
_S = PointSource.S_SERVE


def rule_a() -> ServeSchedule:
    """Deuce-type game, F serving every point."""
    return ServeSchedule(prefix=(), deuce_cycle=(_F,))


def rule_bj(order: int = 1) -> ServeSchedule:
    """Deuce-type game with the serve alternating every point.

    order=1 starts with F's serve, order=2 with S's; both give the same
    metrics.
    """
    if order not in (1, 2):
        raise RangeError(f"order must be 1 or 2, got {order!r}")
    cycle = (_F, _S) if order == 1 else (_S, _F)
    return ServeSchedule(prefix=(), deuce_cycle=cycle)


def rule_t() -> ServeSchedule:
    """The existing tennis game: F serves all points with two attempts."""
    return ServeSchedule(prefix=(_F,) * 6, deuce_cycle=(_F,))


def rule_b(order: int = 1) -> ServeSchedule:
    """Complete game with the serve alternating every point.

    order=1 is the plain alternation F,S,F,S,...  order=2 alternates in
    pairs after the opening point (F,S,S,F,F,S then S,F repeating), the
    way tie-break service order works; the two orders give identical
    metrics.
    """
    if order not in (1, 2):
        raise RangeError(f"order must be 1 or 2, got {order!r}")
    if order == 1:
        return ServeSchedule(prefix=(_F, _S, _F, _S, _F, _S), deuce_cycle=(_F, _S))
    return ServeSchedule(prefix=(_F, _S, _S, _F, _F, _S), deuce_cycle=(_S, _F))


def rule_c(x: int = 3) -> ServeSchedule:
    """Proposed game: two serve attempts only on the first x points.

    From point x+1 on, F still serves but a first-serve fault loses the
    point, so those points resolve at p_S.  The headline proposal is x=3.
    """
    if not isinstance(x, int) or not (0 <= x <= 6):
        raise RangeError(f"x must be an integer in 0..6, got {x!r}")
    return ServeSchedule(prefix=(_F,) * x + (_G,) * (6 - x), deuce_cycle=(_G,))


def schedule_for(kind: RuleKind, order: int = 1, x: int | None = None) -> ServeSchedule:
    """Canned schedule for a rule kind (order for Bj/B, x for C)."""
    if kind is RuleKind.A:
        return rule_a()
    if kind is RuleKind.BJ:
        return rule_bj(order)
    if kind is RuleKind.T:
        return rule_t()
    if kind is RuleKind.B:
        return rule_b(order)
    if kind is RuleKind.C:
        return rule_c(3 if x is None else x)
    raise RangeError(f"unknown rule kind {kind!r}")


@dataclass(frozen=True)
class GameMetrics:
    """The four outputs of one game evaluation.

    bp_prob / expected_bps are None for schedules where the serve changes
    hands (a break point is undefined there).  When present, the count is
    at least the indicator.
    """

    win_prob: float
    expected_points: float
    bp_prob: float | None = None
    expected_bps: float | None = None

    def __post_init__(self):
        if (self.bp_prob is None) != (self.expected_bps is None):
            raise RangeError("bp_prob and expected_bps must be present together")

    @property
    def has_bp(self) -> bool:
        return self.bp_prob is not None


@dataclass(frozen=True)
class AlgebraTerm:
    """One monomial of the four-variable serve algebra.

    A plain term evaluates to

        coeff * p_S**alpha * q_S**beta * p_F**gamma * q_F**delta

    with q = 1 - p throughout.  A symmetric term adds the swapped twin
    with exponents (beta, alpha, delta, gamma); swapping exponents this
    way equals complementing both profile entries.
    """

    coeff: int
    exponents: tuple[int, int, int, int]
    symmetric: bool = False

    def __post_init__(self):
        if self.coeff < 0:
            raise RangeError(f"coeff must be >= 0, got {self.coeff}")
        if len(self.exponents) != 4 or any(e < 0 for e in self.exponents):
            raise RangeError(f"exponents must be four non-negative integers, got {self.exponents!r}")


def eval_term(t: AlgebraTerm, prof: ServeProfile) -> float:
    """Evaluate a monomial (or its symmetric pair) on a profile."""
    ps, pf = prof.p_s, prof.p_f
    qs, qf = 1.0 - ps, 1.0 - pf
    a, b, c, d = t.exponents
    val = ps**a * qs**b * pf**c * qf**d
    if t.symmetric:
        val += ps**b * qs**a * pf**d * qf**c
    return t.coeff * val
