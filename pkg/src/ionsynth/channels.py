"""The nine resonant Raman channels and their coupling strengths.

Each channel couples pairs of basis components that differ by one electronic
level and a fixed change of vibrational occupation:

* an *exchange* channel moves one quantum from one mode into another,
* a *carrier* channel leaves the occupation unchanged,
* the *red sideband* channel removes one quantum from the x mode.

Coupling strengths are generalized Rabi frequencies in units of the base
coupling magnitude |g|: square-root occupation factors times a diagonal
Lamb-Dicke correction for each participating mode.  The correction for a mode
holding n quanta is

    nonlinearity(eps, n) = exp(-eps**2 / 2) * L1_n(eps**2) / (n + 1)

with ``L1_n`` the generalized Laguerre polynomial of order 1; it tends to 1 in
the small-eps limit, recovering the familiar sqrt factors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np
from scipy.special import eval_genlaguerre

from .fock import (
    Component,
    DomainError,
    Level,
    Occupation,
    Truncation,
    enumerate_basis,
    index_of,
)

__all__ = [
    "LambDickeParams",
    "ChannelId",
    "ChannelKind",
    "Mode",
    "ChannelSpec",
    "CoupledPair",
    "CHANNELS",
    "nonlinearity",
    "rabi",
    "partner_occupation",
    "coupled_pairs",
    "dense_hamiltonian",
]


@dataclass(frozen=True)
class LambDickeParams:
    """Lamb-Dicke parameters per mode, plus the one used by carrier-type beams.

    The defaults are the working point used throughout the test suite:
    eps_x=0.3, eps_y=0.1, eps_z=0.2 for the exchange channels and
    eps_carrier=0.1 for carrier and red-sideband pulses.
    """

    eps_x: float = 0.3
    eps_y: float = 0.1
    eps_z: float = 0.2
    eps_carrier: float = 0.1

    def __post_init__(self) -> None:
        for name in ("eps_x", "eps_y", "eps_z", "eps_carrier"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)) or value < 0:
                raise DomainError(f"{name} must be a finite non-negative real, got {value!r}")

    def mode_eps(self, mode: "Mode") -> float:
        return (self.eps_x, self.eps_y, self.eps_z)[mode]


class ChannelId(IntEnum):
    H1 = 1
    H2 = 2
    H3 = 3
    H4 = 4
    H5 = 5
    H6 = 6
    H7 = 7
    H8 = 8
    H9 = 9


class ChannelKind(Enum):
    EXCHANGE = "exchange"
    CARRIER = "carrier"
    RED_SIDEBAND = "red_sideband"


class Mode(IntEnum):
    X = 0
    Y = 1
    Z = 2


@dataclass(frozen=True)
class ChannelSpec:
    """Static description of one channel.

    ``raised``/``lowered`` are the modes whose occupation goes up/down when the
    electronic state climbs from ``lower_level`` to ``upper_level``; carriers
    have neither, the red sideband only lowers.
    """

    cid: ChannelId
    kind: ChannelKind
    raised: Mode | None
    lowered: Mode | None
    lower_level: Level
    upper_level: Level


CHANNELS: dict[ChannelId, ChannelSpec] = {
    spec.cid: spec
    for spec in (
        ChannelSpec(ChannelId.H1, ChannelKind.EXCHANGE, Mode.Y, Mode.Z, Level.A, Level.B),
        ChannelSpec(ChannelId.H2, ChannelKind.CARRIER, None, None, Level.A, Level.B),
        ChannelSpec(ChannelId.H3, ChannelKind.EXCHANGE, Mode.Y, Mode.Z, Level.B, Level.C),
        ChannelSpec(ChannelId.H4, ChannelKind.CARRIER, None, None, Level.B, Level.C),
        ChannelSpec(ChannelId.H5, ChannelKind.EXCHANGE, Mode.X, Mode.Y, Level.A, Level.B),
        ChannelSpec(ChannelId.H6, ChannelKind.CARRIER, None, None, Level.C, Level.D),
        ChannelSpec(ChannelId.H7, ChannelKind.EXCHANGE, Mode.Y, Mode.Z, Level.C, Level.D),
        ChannelSpec(ChannelId.H8, ChannelKind.EXCHANGE, Mode.X, Mode.Y, Level.B, Level.C),
        ChannelSpec(ChannelId.H9, ChannelKind.RED_SIDEBAND, None, Mode.X, Level.A, Level.B),
    )
}


def nonlinearity(eps: float, n: int) -> float:
    """Diagonal Lamb-Dicke correction <n| F_eps |n>.

    Equals exp(-eps**2/2) * L1_n(eps**2) / (n+1), which is also the closed form
    of the finite series sum_k (-1)**k eps**(2k) n! / ((k+1)! k! (n-k)!) times
    exp(-eps**2/2).  At eps=0 the factor is exactly 1.
    """
    if eps < 0 or not math.isfinite(eps):
        raise DomainError(f"eps must be a finite non-negative real, got {eps!r}")
    if n < 0:
        raise DomainError(f"occupation must be non-negative, got {n!r}")
    x = eps * eps
    return math.exp(-0.5 * x) * float(eval_genlaguerre(n, 1, x)) / (n + 1)


def rabi(spec: ChannelSpec, occ: Occupation, ld: LambDickeParams) -> float:
    """Generalized Rabi frequency of ``spec`` acting on the lower-level state ``occ``.

    Returns 0 for transitions the channel cannot drive (annihilating an empty
    mode).
    """
    if spec.kind is ChannelKind.CARRIER:
        return nonlinearity(ld.eps_carrier, occ.nx)
    if spec.kind is ChannelKind.RED_SIDEBAND:
        if occ.nx < 1:
            return 0.0
        return math.sqrt(occ.nx) * nonlinearity(ld.eps_carrier, occ.nx - 1)
    n_up = occ[spec.raised]
    n_down = occ[spec.lowered]
    if n_down < 1:
        return 0.0
    return (
        math.sqrt((n_up + 1) * n_down)
        * nonlinearity(ld.mode_eps(spec.raised), n_up)
        * nonlinearity(ld.mode_eps(spec.lowered), n_down - 1)
    )


def partner_occupation(spec: ChannelSpec, occ: Occupation) -> Occupation | None:
    """Occupation reached from ``occ`` when the electronic state climbs, or None."""
    if spec.kind is ChannelKind.CARRIER:
        return occ
    if spec.kind is ChannelKind.RED_SIDEBAND:
        return occ.with_delta(Mode.X, -1) if occ.nx >= 1 else None
    if occ[spec.lowered] < 1:
        return None
    return occ.with_delta(spec.raised, +1).with_delta(spec.lowered, -1)


@dataclass(frozen=True)
class CoupledPair:
    """One two-component block the channel rotates: src on the lower level,
    dst on the upper level, with Rabi frequency omega > 0."""

    src: Component
    dst: Component
    omega: float


def coupled_pairs(
    spec: ChannelSpec, truncation: Truncation, ld: LambDickeParams
) -> tuple[list[CoupledPair], list[Component]]:
    """Partition the basis into coupled pairs and untouched components.

    Every component appears exactly once: either in one pair or in the
    untouched list.  Pairs never leave the truncation because each channel
    preserves or lowers the total quantum number.  Zero-Rabi combinations are
    classified as untouched so later pulse solving never divides by zero.
    """
    basis = enumerate_basis(truncation)
    claimed = np.zeros(len(basis), dtype=bool)
    pairs: list[CoupledPair] = []
    for k, comp in enumerate(basis):
        if comp.level is not spec.lower_level:
            continue
        pocc = partner_occupation(spec, comp.occ)
        if pocc is None:
            continue
        omega = rabi(spec, comp.occ, ld)
        if omega <= 0.0:
            continue
        dst = Component(pocc, spec.upper_level)
        pairs.append(CoupledPair(comp, dst, omega))
        claimed[k] = True
        claimed[index_of(dst, truncation)] = True
    untouched = [comp for k, comp in enumerate(basis) if not claimed[k]]
    return pairs, untouched


def dense_hamiltonian(
    spec: ChannelSpec, theta: float, truncation: Truncation, ld: LambDickeParams
) -> np.ndarray:
    """Full Hamiltonian matrix of one channel at phase ``theta``, in units of |g|.

    The part that raises the electronic state carries the conjugated coupling:
    <dst|H|src> = omega * exp(-i*theta) for every coupled pair, and the matrix
    is Hermitian by construction.
    """
    dim = truncation.dim
    h = np.zeros((dim, dim), dtype=np.complex128)
    raising = cmath.exp(-1j * theta)
    pairs, _ = coupled_pairs(spec, truncation, ld)
    for pair in pairs:
        i = index_of(pair.src, truncation)
        j = index_of(pair.dst, truncation)
        h[j, i] = pair.omega * raising
        h[i, j] = pair.omega * raising.conjugate()
    return h
