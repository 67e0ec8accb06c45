"""servelab: win probability, break points, and game length for tennis
serve-rule variants.

The library models a game as a Markov chain over the score with a
random-walk closure of the tied region.  Five rule variants are covered:

* A  - deuce-type game, one player serving throughout
* Bj - deuce-type game, serve alternating every point
* T  - the existing tennis game (two serve attempts, fixed server)
* B  - complete game with the serve alternating every point
* C(x) - proposed game: a second serve attempt only on the first x
  points (headline value x = 3)

Three independent evaluation paths keep each other honest: closed-form
expressions (formulas), exact lattice propagation (engine), and a
seedable Monte Carlo simulator (simulate) with a compiled kernel and a
pure-Python fallback.
"""

from .atp import (
    FitRow,
    FitSummary,
    PlayerStats,
    dbl_fault_correct,
    fit_report,
    load_sample,
    p_emp,
    parse_stats,
    sample_path,
)
from .engine import TieClosure, deuce_closure, metrics_exact, walk_expected_duration
from .errors import (
    ConsistencyError,
    DegenerateProfile,
    DeuceCapExceeded,
    MixedServerBreakpoint,
    ParseError,
    RangeError,
    ServelabError,
    SingularProfile,
)
from .formulas import (
    e_bp_A,
    e_bp_C,
    e_bp_T,
    e_points_A,
    e_points_B,
    e_points_Bj,
    e_points_C,
    e_points_T,
    p_bp_A,
    p_bp_C,
    p_bp_T,
    p_win_A,
    p_win_B,
    p_win_Bj,
    p_win_C,
    p_win_T,
    p_win_T_omalley,
)
from .shaping import (
    CompareRow,
    ShapingSolution,
    ShapingTargets,
    compare_table,
    invert_p_win_T,
    recommend_cutoff,
    solve_x,
)
from .simulate import (
    MetricEstimate,
    SimConfig,
    SimResult,
    SplitMix64,
    estimate_metrics,
    mc_backend,
    simulate_game,
    substream,
)
from .types import (
    AlgebraTerm,
    GameMetrics,
    PointSource,
    RuleKind,
    ServeProfile,
    ServeSchedule,
    eval_term,
    rule_a,
    rule_b,
    rule_bj,
    rule_c,
    rule_t,
    schedule_for,
)

__version__ = "0.1.0"
