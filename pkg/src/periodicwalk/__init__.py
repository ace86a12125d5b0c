"""Discrete-time coined walks on a line with periodically placed scattering sites.

The package splits into a dense state-vector kernel (`core`), a slow
branch-expansion reference (`oracle`), position statistics
(`observables`), parameter sweeps with fit helpers (`experiments`) and a
deterministic CSV-producing command line (`cli`).
"""

from __future__ import annotations

__version__ = "0.1.0"

from .core import (
    NORM_DRIFT_TOL,
    CapacityError,
    CoinDirection,
    DOWN,
    NormDriftError,
    PotentialProfile,
    UP,
    WalkState,
    check_norm,
    coin_at,
    evolve,
    hadamard_coin,
    initial_state,
    is_scattering_site,
    point_state,
    scattering_coin,
    step,
)
from .observables import Distribution, Moments, distribution, moments, q1_law, symmetry_residual
from .oracle import MAX_ORACLE_STEPS, PathSumResult, path_sum_evolve

__all__ = [
    "__version__",
    "NORM_DRIFT_TOL",
    "MAX_ORACLE_STEPS",
    "CapacityError",
    "CoinDirection",
    "DOWN",
    "Distribution",
    "Moments",
    "NormDriftError",
    "PathSumResult",
    "PotentialProfile",
    "UP",
    "WalkState",
    "check_norm",
    "coin_at",
    "distribution",
    "evolve",
    "hadamard_coin",
    "initial_state",
    "is_scattering_site",
    "moments",
    "path_sum_evolve",
    "point_state",
    "q1_law",
    "scattering_coin",
    "step",
    "symmetry_residual",
]
