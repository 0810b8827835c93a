"""Exhaustive certification of optimality, welfare and equilibrium claims on grids."""
from .grid import MAX_PROFILES, Grid, GridTooLarge, build_grid
from .optimality import (
    OptSet,
    check_groves_invariance,
    check_lemma_compat,
    check_spec_purity,
    compute_opt_set,
    verify_ic,
    verify_optimal,
    verify_socially_optimal,
)
from .equilibrium import (
    EQUAL,
    GREATER,
    INCOMPARABLE,
    UTILITY,
    VALUATION,
    Comparison,
    deviation_universe,
    dominance_relation,
    nash_check,
    optimality_dominance_crosscheck,
)
from .welfare import check_last_mover, max_welfare_over_optimal, welfare_maximality
