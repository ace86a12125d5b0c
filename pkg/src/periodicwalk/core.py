"""State-vector kernel for discrete-time coined walks on the integer line.

The walker carries a two-level coin.  Each step applies a site-dependent
coin matrix and then shifts: the DOWN component moves one site to the
left, the UP component one site to the right.  Sites at integer multiples
of a period ``q`` apply the scattering coin ``C(theta)``, every other
site the Hadamard coin.  ``q = 1`` makes every site a scatterer, and
``theta = pi/4`` makes the scattering coin coincide with Hadamard, so
both limits reduce to familiar walks.

Amplitudes live in a dense complex table allocated once for the longest
walk a state will host; a walk of N steps never leaves [-N, N], so the
table never needs to grow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

__all__ = [
    "NORM_DRIFT_TOL",
    "CapacityError",
    "CoinDirection",
    "DOWN",
    "NormDriftError",
    "PotentialProfile",
    "UP",
    "WalkState",
    "check_norm",
    "coin_at",
    "evolve",
    "hadamard_coin",
    "initial_state",
    "is_scattering_site",
    "point_state",
    "scattering_coin",
    "step",
]

#: Largest |norm - 1| tolerated at the end of an evolution before results
#: are considered corrupt.  Per-step drift is far smaller in practice.
NORM_DRIFT_TOL = 1e-9

_SQRT_HALF = math.sqrt(0.5)


class CapacityError(RuntimeError):
    """A step would push amplitude past the edge of the allocated table."""


class NormDriftError(RuntimeError):
    """A state's norm has drifted from 1 by more than NORM_DRIFT_TOL."""


class CoinDirection(IntEnum):
    """Coin basis labels.  DOWN shifts to x - 1, UP shifts to x + 1."""

    DOWN = 0
    UP = 1


DOWN = CoinDirection.DOWN
UP = CoinDirection.UP


def hadamard_coin() -> np.ndarray:
    """Return the Hadamard coin as a 2x2 complex matrix in (DOWN, UP) order.

    H = (1/sqrt 2) [[1, 1], [1, -1]].
    """
    h = _SQRT_HALF
    return np.array([[h, h], [h, -h]], dtype=np.complex128)


def scattering_coin(theta: float) -> np.ndarray:
    """Return the scattering coin C(theta) as a 2x2 complex matrix.

    C(theta) = [[sin theta, cos theta], [cos theta, -sin theta]] in
    (DOWN, UP) order: sin(theta) is the transmission amplitude and
    cos(theta) the reflection amplitude, so theta = pi/2 transmits
    perfectly and theta = 0 reflects perfectly.  theta is used as given,
    with no range reduction, and must be finite.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    t = math.sin(theta)
    r = math.cos(theta)
    return np.array([[t, r], [r, -t]], dtype=np.complex128)


@dataclass(frozen=True)
class PotentialProfile:
    """Periodic arrangement of coins: C(theta) wherever x % q == 0, Hadamard elsewhere.

    The origin is always a scattering site.  Negative positions follow
    mathematical modulo, so x = -q, -2q, ... are scattering sites too.
    """

    period_q: int
    theta: float

    def __post_init__(self) -> None:
        q = int(self.period_q)
        if q != self.period_q or q < 1:
            raise ValueError(f"period_q must be an integer >= 1, got {self.period_q!r}")
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError(f"theta must be finite, got {self.theta!r}")
        object.__setattr__(self, "period_q", q)
        object.__setattr__(self, "theta", theta)

    @property
    def transmission(self) -> float:
        """Amplitude for passing straight through a scattering site, sin(theta)."""
        return math.sin(self.theta)

    @property
    def reflection(self) -> float:
        """Amplitude for bouncing back at a scattering site, cos(theta)."""
        return math.cos(self.theta)

    @property
    def reduced_theta(self) -> float:
        """theta folded into [0, 2*pi).  Display convenience only; evolution uses theta as given."""
        return self.theta % (2.0 * math.pi)


def is_scattering_site(profile: PotentialProfile, x) -> bool | np.ndarray:
    """True where x is an integer multiple of the period.  Accepts scalars or arrays."""
    return x % profile.period_q == 0


def coin_at(profile: PotentialProfile, x: int) -> np.ndarray:
    """Coin matrix applied at position x under the given profile."""
    if is_scattering_site(profile, x):
        return scattering_coin(profile.theta)
    return hadamard_coin()


@dataclass(frozen=True)
class WalkState:
    """Dense amplitude table over (position, coin direction).

    Row ``i`` holds the (DOWN, UP) amplitudes of position ``i - origin_offset``,
    so the table spans positions -origin_offset .. +origin_offset.  The table
    is sized once, up front, for the longest walk it will host; ``capacity``
    is the number of steps that fit.  ``steps_taken`` doubles as the support
    bound: all amplitude lies within |x| <= steps_taken, on sites of the
    same parity as steps_taken reachable from the start.
    """

    amplitudes: np.ndarray
    origin_offset: int
    steps_taken: int

    @property
    def capacity(self) -> int:
        """Total number of steps the table can absorb before amplitude would fall off."""
        return self.origin_offset

    def amplitude(self, x: int, direction: CoinDirection) -> complex:
        """Amplitude of the (x, direction) basis state; zero outside the table."""
        i = x + self.origin_offset
        if 0 <= i < self.amplitudes.shape[0]:
            return complex(self.amplitudes[i, direction])
        return 0j

    def norm(self) -> float:
        """l2 norm of the full amplitude table."""
        a = self.amplitudes
        return float(np.sqrt(np.sum(a.real * a.real + a.imag * a.imag)))


def _validated_capacity(capacity_steps: int) -> int:
    capacity = int(capacity_steps)
    if capacity != capacity_steps or capacity < 1:
        raise ValueError(f"capacity_steps must be an integer >= 1, got {capacity_steps!r}")
    return capacity


def initial_state(capacity_steps: int) -> WalkState:
    """Walker at the origin with coin state (|DOWN> + i|UP>) / sqrt 2.

    This coin choice gives a position distribution symmetric about the
    origin for every profile, because both coins are real matrices of the
    form [[a, b], [b, -a]].

    Parameters
    ----------
    capacity_steps:
        Number of steps the state must be able to absorb; sizes the table.
    """
    capacity = _validated_capacity(capacity_steps)
    amps = np.zeros((2 * capacity + 1, 2), dtype=np.complex128)
    amps[capacity, DOWN] = _SQRT_HALF
    amps[capacity, UP] = 1j * _SQRT_HALF
    return WalkState(amplitudes=amps, origin_offset=capacity, steps_taken=0)


def point_state(position: int, direction: CoinDirection, capacity_steps: int) -> WalkState:
    """Unit amplitude on a single (position, direction) cell.

    steps_taken is primed to |position| so the support bound holds for a
    walker that reached ``position`` from the origin.
    """
    capacity = _validated_capacity(capacity_steps)
    position = int(position)
    if abs(position) > capacity:
        raise ValueError(f"position {position} lies outside a table of capacity {capacity}")
    amps = np.zeros((2 * capacity + 1, 2), dtype=np.complex128)
    amps[position + capacity, CoinDirection(direction)] = 1.0
    return WalkState(amplitudes=amps, origin_offset=capacity, steps_taken=abs(position))


def _site_coin_table(profile: PotentialProfile, origin_offset: int, n_rows: int) -> np.ndarray:
    """Per-row coin matrices for the whole table, shape (n_rows, 2, 2)."""
    positions = np.arange(n_rows) - origin_offset
    table = np.empty((n_rows, 2, 2), dtype=np.complex128)
    table[:] = hadamard_coin()
    table[is_scattering_site(profile, positions)] = scattering_coin(profile.theta)
    return table


def _advance(amps: np.ndarray, table: np.ndarray) -> np.ndarray:
    # Coin acts at the pre-shift position; then DOWN slides one row toward
    # -x and UP one row toward +x.  Rows stay exact zeros outside the
    # support because 0 * finite == 0 in IEEE754.
    coined = np.einsum("xij,xj->xi", table, amps)
    out = np.zeros_like(amps)
    out[:-1, DOWN] = coined[1:, DOWN]
    out[1:, UP] = coined[:-1, UP]
    return out


def step(state: WalkState, profile: PotentialProfile) -> WalkState:
    """Advance the walk by one step.

    Raises CapacityError when the table has no room left; amplitude is
    never silently truncated at the edges.
    """
    if state.steps_taken >= state.capacity:
        raise CapacityError(
            f"state has taken {state.steps_taken} of {state.capacity} steps; table is full"
        )
    table = _site_coin_table(profile, state.origin_offset, state.amplitudes.shape[0])
    return WalkState(
        amplitudes=_advance(state.amplitudes, table),
        origin_offset=state.origin_offset,
        steps_taken=state.steps_taken + 1,
    )


def evolve(state: WalkState, profile: PotentialProfile, n_steps: int) -> WalkState:
    """Apply ``n_steps`` steps and return the final state.

    The coin table is built once and reused, so this is the fast path for
    long walks.  Identical inputs give bit-identical outputs: the kernel
    is pure numpy with a fixed operation order and no randomness.

    Raises
    ------
    ValueError
        If n_steps is negative.
    CapacityError
        If steps_taken + n_steps would exceed the table capacity.
    """
    n = int(n_steps)
    if n != n_steps or n < 0:
        raise ValueError(f"n_steps must be a non-negative integer, got {n_steps!r}")
    if n == 0:
        return state
    if state.steps_taken + n > state.capacity:
        raise CapacityError(
            f"{n} more steps after {state.steps_taken} would exceed capacity {state.capacity}"
        )
    table = _site_coin_table(profile, state.origin_offset, state.amplitudes.shape[0])
    amps = state.amplitudes
    for _ in range(n):
        amps = _advance(amps, table)
    return WalkState(
        amplitudes=amps,
        origin_offset=state.origin_offset,
        steps_taken=state.steps_taken + n,
    )


def check_norm(state: WalkState) -> None:
    """Raise NormDriftError if the state's norm has drifted beyond NORM_DRIFT_TOL."""
    drift = abs(state.norm() - 1.0)
    if drift > NORM_DRIFT_TOL:
        raise NormDriftError(f"norm drifted from 1 by {drift:.3e} after {state.steps_taken} steps")
