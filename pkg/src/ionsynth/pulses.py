"""Pulses, schedules, and the exact pairwise propagator.

A pulse drives one channel for an interaction length x = |g|*tau at laser
phase theta.  On each coupled pair (u = lower component, v = upper component)
with Rabi frequency Omega the evolution is the exact two-level rotation

    u' = cos(x*Omega) * u - i * exp(+i*theta) * sin(x*Omega) * v
    v' = cos(x*Omega) * v - i * exp(-i*theta) * sin(x*Omega) * u

and the identity on untouched components.  Shifting theta by pi inverts a
pulse, which is what turns a de-evolution schedule into a preparation
schedule.

The closed-form solvers pick (x, theta) so that a pulse sends one chosen
amplitude of a pair exactly to zero, transferring its population to the
partner component.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .channels import CHANNELS, ChannelId, LambDickeParams, coupled_pairs, dense_hamiltonian
from .fock import Component, DomainError, StateVector, Truncation, index_of

__all__ = [
    "Pulse",
    "Schedule",
    "Direction",
    "wrap_angle",
    "apply_pulse",
    "apply_schedule",
    "dagger_schedule",
    "solve_kill_lower",
    "solve_kill_upper",
    "oracle_apply",
]


def wrap_angle(theta: float) -> float:
    """Map an angle to the interval (-pi, pi]."""
    r = math.remainder(theta, math.tau)
    if r <= -math.pi:
        r += math.tau
    return r


@dataclass(frozen=True)
class Pulse:
    """One laser pulse: channel, interaction length x = |g|*tau >= 0, phase.

    ``note`` records which component the pulse was solved to null; it is an
    audit annotation and does not influence the dynamics.
    """

    channel: ChannelId
    x: float
    theta: float
    note: Component | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.x) or self.x < 0:
            raise DomainError(f"pulse length x must be finite and >= 0, got {self.x!r}")
        if not math.isfinite(self.theta):
            raise DomainError(f"pulse phase theta must be finite, got {self.theta!r}")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))


class Direction(str, Enum):
    DEEVOLUTION = "deevolution"
    PREPARATION = "preparation"


@dataclass(frozen=True)
class Schedule:
    """An ordered pulse program plus the metadata needed to replay it."""

    pulses: tuple[Pulse, ...]
    lamb_dicke: LambDickeParams
    truncation: Truncation
    direction: Direction
    target: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "pulses", tuple(self.pulses))

    def __len__(self) -> int:
        return len(self.pulses)


@dataclass(frozen=True)
class _PairTable:
    """Vectorized view of a channel's coupled pairs under one configuration."""

    src_index: np.ndarray
    dst_index: np.ndarray
    omega: np.ndarray
    row_by_src: dict[int, int] = field(repr=False)


@lru_cache(maxsize=256)
def _pair_table(cid: ChannelId, truncation: Truncation, ld: LambDickeParams) -> _PairTable:
    pairs, _ = coupled_pairs(CHANNELS[cid], truncation, ld)
    src = np.array([index_of(p.src, truncation) for p in pairs], dtype=np.intp)
    dst = np.array([index_of(p.dst, truncation) for p in pairs], dtype=np.intp)
    omega = np.array([p.omega for p in pairs], dtype=np.float64)
    return _PairTable(src, dst, omega, {int(s): k for k, s in enumerate(src)})


def _rotate_inplace(amps: np.ndarray, table: _PairTable, x: float, theta: float) -> None:
    if x == 0.0 or table.src_index.size == 0:
        return
    u = amps[table.src_index]
    v = amps[table.dst_index]
    ang = x * table.omega
    c = np.cos(ang)
    s = np.sin(ang)
    amps[table.src_index] = c * u + (-1j * cmath.exp(1j * theta)) * (s * v)
    amps[table.dst_index] = c * v + (-1j * cmath.exp(-1j * theta)) * (s * u)


def apply_pulse(
    state: StateVector, pulse: Pulse, ld: LambDickeParams = LambDickeParams()
) -> StateVector:
    """Apply one pulse exactly; returns a new state, norm preserved."""
    amps = state.amplitudes.copy()
    _rotate_inplace(amps, _pair_table(pulse.channel, state.truncation, ld), pulse.x, pulse.theta)
    return StateVector._wrap(amps, state.truncation)


def apply_schedule(state: StateVector, schedule: Schedule) -> StateVector:
    """Apply every pulse of ``schedule`` in order."""
    if schedule.truncation != state.truncation:
        raise DomainError(
            f"schedule truncation j_max={schedule.truncation.j_max} does not match "
            f"state truncation j_max={state.truncation.j_max}"
        )
    amps = state.amplitudes.copy()
    tables: dict[ChannelId, _PairTable] = {}
    for pulse in schedule.pulses:
        table = tables.get(pulse.channel)
        if table is None:
            table = tables[pulse.channel] = _pair_table(
                pulse.channel, schedule.truncation, schedule.lamb_dicke
            )
        _rotate_inplace(amps, table, pulse.x, pulse.theta)
    return StateVector._wrap(amps, state.truncation)


def dagger_schedule(schedule: Schedule) -> Schedule:
    """Exact inverse program: reversed order, every phase shifted by pi."""
    flipped = (
        Direction.PREPARATION
        if schedule.direction is Direction.DEEVOLUTION
        else Direction.DEEVOLUTION
    )
    return Schedule(
        tuple(
            Pulse(p.channel, p.x, p.theta + math.pi, p.note)
            for p in reversed(schedule.pulses)
        ),
        schedule.lamb_dicke,
        schedule.truncation,
        flipped,
        schedule.target,
    )


def solve_kill_lower(q_lower: complex, q_upper: complex, omega: float) -> tuple[float, float]:
    """Pulse parameters (x, theta) that null the lower amplitude of a pair.

    The returned angles satisfy the transfer condition
    i*exp(-i*theta)*q_lower*cos(x*omega) + q_upper*sin(x*omega) = 0
    with x*omega in [0, pi/2].  A zero lower amplitude needs no pulse: (0, 0).
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    if q_lower == 0:
        return 0.0, 0.0
    theta = wrap_angle(cmath.phase(q_lower) - cmath.phase(q_upper) - 0.5 * math.pi)
    return math.atan2(abs(q_lower), abs(q_upper)) / omega, theta


def solve_kill_upper(q_lower: complex, q_upper: complex, omega: float) -> tuple[float, float]:
    """Pulse parameters (x, theta) that null the upper amplitude of a pair.

    The returned angles satisfy the transfer condition
    i*exp(i*theta)*q_upper*cos(x*omega) + q_lower*sin(x*omega) = 0
    with x*omega in [0, pi/2].  A zero upper amplitude needs no pulse: (0, 0).
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    if q_upper == 0:
        return 0.0, 0.0
    theta = wrap_angle(cmath.phase(q_lower) - cmath.phase(q_upper) + 0.5 * math.pi)
    return math.atan2(abs(q_upper), abs(q_lower)) / omega, theta


def oracle_apply(
    state: StateVector, pulse: Pulse, ld: LambDickeParams = LambDickeParams()
) -> StateVector:
    """Reference propagator: exp(-i*x*H) via dense Hermitian eigendecomposition.

    Slow but structurally independent of the pairwise fast path; used to
    cross-check :func:`apply_pulse`.
    """
    h = dense_hamiltonian(CHANNELS[pulse.channel], pulse.theta, state.truncation, ld)
    w, vecs = np.linalg.eigh(h)
    phases = np.exp(-1j * pulse.x * w)
    out = vecs @ (phases * (vecs.conj().T @ state.amplitudes))
    return StateVector._wrap(out, state.truncation)
