"""Fabry-Perot cavity in vacuum: Airy buildup, motional resonances, radiated photons."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, InvalidInputError
from .units import NATURAL, Units

RESONANCE_RTOL = 1e-6


@dataclass(frozen=True)
class Cavity:
    r1: float
    r2: float
    length: float
    units: Units = NATURAL

    def __post_init__(self):
        for r in (self.r1, self.r2):
            if not 0 <= r < 1:
                raise InvalidInputError(f"amplitude reflectivity {r} outside [0, 1)")
        if not self.length > 0:
            raise InvalidInputError("cavity length must be positive")

    @classmethod
    def from_finesse(cls, finesse: float, length: float, units: Units = NATURAL) -> "Cavity":
        """Symmetric cavity with the requested finesse."""
        if not finesse > 0:
            raise InvalidInputError("finesse must be positive")
        # r1 = r2 = s solves F s² + π s - F = 0; rationalized root is stable for large F
        s = 2 * finesse / (math.pi + math.sqrt(math.pi**2 + 4 * finesse**2))
        return cls(s, s, length, units)

    @property
    def r(self) -> float:
        return self.r1 * self.r2

    @property
    def tau(self) -> float:
        """One-way propagation time ``L/c``."""
        return self.length / self.units.c

    @property
    def finesse(self) -> float:
        return math.pi * math.sqrt(self.r) / (1.0 - self.r)


@dataclass(frozen=True)
class MotionSpec:
    mode: Literal["elongation", "translation"]
    omega: float
    amplitude: float
    duration: float

    def __post_init__(self):
        if self.mode not in ("elongation", "translation"):
            raise InvalidInputError(f"unknown motion mode {self.mode!r}")
        if self.amplitude < 0:
            raise InvalidInputError("amplitude must be non-negative")
        if not self.duration > 0:
            raise InvalidInputError("duration must be positive")
        if not self.omega > 0:
            raise InvalidInputError("drive frequency must be positive")

    @property
    def peak_velocity(self) -> float:
        return self.omega * self.amplitude


def airy_buildup(cav: Cavity, omega):
    """Intracavity intensity buildup ``(1 - r²)/(1 - 2r cos 2ωτ + r²)``, ``r = r1 r2``."""
    w = np.asarray(omega, dtype=float)
    r = cav.r
    return (1 - r * r) / (1 - 2 * r * np.cos(2 * w * cav.tau) + r * r)


def parity_mode(n: int) -> str:
    return "elongation" if n % 2 == 0 else "translation"


def resonance_frequencies(cav: Cavity, n_max: int) -> list[tuple[int, float, str]]:
    """Motional resonances ``ω_n = nπ/τ`` for ``n = 2..n_max`` with their parity.

    Even ``n`` are excited by modulating the length, odd ``n`` by a rigid
    translation of the cavity.
    """
    if n_max < 2:
        raise InvalidInputError("motional resonances start at n = 2")
    return [
        (n, n * math.pi / cav.tau, "even" if n % 2 == 0 else "odd") for n in range(2, int(n_max) + 1)
    ]


def resonance_index(cav: Cavity, motion: MotionSpec) -> int:
    """Resonance order ``n`` matched by the drive, enforcing ``n ≥ 2`` and mode parity."""
    x = motion.omega * cav.tau / math.pi
    n = int(round(x))
    if n < 2 or abs(x - n) > RESONANCE_RTOL * x:
        raise DomainError(
            f"drive ω = {motion.omega:.12g} is not a motional resonance nπ/τ with n ≥ 2 "
            f"(ωτ/π = {x:.9g})"
        )
    if parity_mode(n) != motion.mode:
        raise DomainError(
            f"resonance n = {n} is excited by {parity_mode(n)}, not {motion.mode}"
        )
    return n


def photon_number(periods: float, beta: float, finesse: float) -> float:
    """``(ωT/2π)·(v/c)²·F`` from its three factors."""
    return periods * beta**2 * finesse


def radiated_photons(cav: Cavity, motion: MotionSpec) -> float:
    """Expected number of photons radiated by resonant harmonic mirror motion.

    Order-of-magnitude law with prefactor 1: ``N = (ωT/2π) (v/c)² F``, ``v = ωa``.
    """
    resonance_index(cav, motion)
    beta = motion.peak_velocity / cav.units.c
    if beta >= 1:
        raise DomainError(f"peak velocity reaches v/c = {beta:g}")
    periods = motion.omega * motion.duration / (2 * math.pi)
    return photon_number(periods, beta, cav.finesse)
