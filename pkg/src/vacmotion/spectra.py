"""Vacuum and thermal correlation spectra and fluctuation-dissipation conversions.

Conventions
-----------
* Fourier transform ``f(x) = ∫ d⁴k/(2π)⁴ exp(-i k·x) f[k]``; ω is ``k0``.
* Metric ``η = diag(1, -1, -1, -1)``.
* Step and sign functions use the symmetric values ``θ(0) = 1/2``, ``ε(0) = 0``.

Functions accept scalars or numpy arrays for frequency arguments and return
the same shape.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import InvalidInputError, SingularityError
from .units import NATURAL, Units

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA.setflags(write=False)


def heaviside(x):
    return np.heaviside(x, 0.5)


def sign(x):
    return np.sign(x)


@dataclass(frozen=True)
class FrequencyGrid:
    points: np.ndarray
    spacing: Literal["linear", "logarithmic"] = "linear"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).ravel()
        if pts.size == 0:
            raise InvalidInputError("frequency grid is empty")
        if not np.all(np.isfinite(pts)):
            raise InvalidInputError("frequency grid contains non-finite points")
        if pts.size > 1 and not np.all(np.diff(pts) > 0):
            raise InvalidInputError("frequency grid must be strictly increasing")
        if self.spacing == "logarithmic" and pts[0] <= 0:
            raise InvalidInputError("logarithmic grid needs positive points")
        if self.spacing not in ("linear", "logarithmic"):
            raise InvalidInputError(f"unknown spacing {self.spacing!r}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def linear(cls, start: float, stop: float, count: int) -> "FrequencyGrid":
        return cls(np.linspace(start, stop, int(count)), "linear")

    @classmethod
    def logarithmic(cls, start: float, stop: float, count: int) -> "FrequencyGrid":
        if start <= 0 or stop <= 0:
            raise InvalidInputError("logarithmic grid needs positive endpoints")
        return cls(np.geomspace(start, stop, int(count)), "logarithmic")

    def __len__(self):
        return self.points.size

    def same_as(self, other: "FrequencyGrid") -> bool:
        return len(self) == len(other) and np.array_equal(self.points, other.points)


@dataclass(frozen=True)
class Spectrum:
    grid: FrequencyGrid
    values: np.ndarray
    units: str = "natural"
    kind: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).ravel()
        if vals.size != len(self.grid):
            raise InvalidInputError(
                f"{vals.size} values for a grid of {len(self.grid)} points"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def omega(self) -> np.ndarray:
        return self.grid.points

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def is_real(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.values.imag) <= atol))


@dataclass(frozen=True)
class ThermalState:
    """Inverse temperature ``beta = hbar/(k_B T)``; ``inf`` is the vacuum."""

    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise InvalidInputError(f"beta must be positive, got {self.beta}")

    @classmethod
    def from_temperature(cls, T: float, units: Units = NATURAL) -> "ThermalState":
        if T < 0:
            raise InvalidInputError("negative temperature")
        if T == 0:
            return cls(np.inf)
        return cls(units.hbar / (units.k_B * T))

    @property
    def is_vacuum(self) -> bool:
        return np.isinf(self.beta)


@dataclass(frozen=True)
class WaveFourVector:
    k0: float
    k1: float
    k2: float
    k3: float

    @classmethod
    def of(cls, k) -> "WaveFourVector":
        return k if isinstance(k, cls) else cls(*(float(c) for c in k))

    @property
    def upper(self) -> np.ndarray:
        return np.array([self.k0, self.k1, self.k2, self.k3])

    @property
    def lower(self) -> np.ndarray:
        return ETA @ self.upper

    @property
    def square(self) -> float:
        return self.k0**2 - self.k1**2 - self.k2**2 - self.k3**2


def _check_same_grid(a: Spectrum, b: Spectrum):
    if not a.grid.same_as(b.grid):
        raise InvalidInputError("spectra are sampled on different grids")


def decompose_correlation(C_forward: Spectrum, C_backward: Spectrum, units: Units = NATURAL):
    """Split a correlation into anticommutator ``sigma`` and commutator ``xi``.

    ``C_backward`` is ``C_BA`` already sampled at the reversed argument.
    Returns ``(sigma, xi)`` with ``2ħσ = C_AB + C_BA`` and ``2ħξ = C_AB - C_BA``.
    """
    _check_same_grid(C_forward, C_backward)
    two_hbar = 2.0 * units.hbar
    sigma = (C_forward.values + C_backward.values) / two_hbar
    xi = (C_forward.values - C_backward.values) / two_hbar
    return (
        Spectrum(C_forward.grid, sigma, C_forward.units, "anticommutator"),
        Spectrum(C_forward.grid, xi, C_forward.units, "commutator"),
    )


def vacuum_fd(xi: Spectrum, units: Units = NATURAL):
    """Zero-temperature fluctuation-dissipation relations.

    Returns ``(C, sigma)`` with ``C = 2ħθ(ω)ξ`` and ``σ = ε(ω)ξ``.
    """
    w = xi.omega
    C = 2.0 * units.hbar * heaviside(w) * xi.values
    sigma = sign(w) * xi.values
    return (
        Spectrum(xi.grid, C, xi.units, "vacuum correlation"),
        Spectrum(xi.grid, sigma, xi.units, "vacuum anticommutator"),
    )


def thermal_fd(xi: Spectrum, state: ThermalState, units: Units = NATURAL) -> Spectrum:
    """Planck-law correlation ``C = 2ħξ/(1 - exp(-βω))``.

    At ``β = ∞`` this is exactly :func:`vacuum_fd`. At ``ω = 0`` the value
    is the limit ``2ħξ'(0)/β``, with the slope estimated from the grid
    neighbours; a nonzero ``ξ(0)`` makes the correlation singular.
    """
    if not xi.is_real():
        raise InvalidInputError("commutator spectrum must be real for thermal_fd")
    if state.is_vacuum:
        C, _ = vacuum_fd(xi, units)
        return Spectrum(xi.grid, C.values, xi.units, "thermal correlation")
    w = xi.omega
    x = xi.values.real
    beta = state.beta
    out = np.empty_like(x)
    zero = w == 0
    nz = ~zero
    # 1 - exp(-βω) = -expm1(-βω), accurate for small βω
    out[nz] = 2.0 * units.hbar * x[nz] / (-np.expm1(-beta * w[nz]))
    if np.any(zero):
        i = int(np.flatnonzero(zero)[0])
        if x[i] != 0:
            raise SingularityError("thermal correlation diverges at ω = 0 when ξ(0) ≠ 0")
        if len(w) < 2:
            raise SingularityError("cannot take the ω → 0 limit on a one-point grid")
        slope = np.gradient(x, w)[i]
        out[i] = 2.0 * units.hbar * slope / beta
    return Spectrum(xi.grid, out, xi.units, "thermal correlation")


def thermal_sigma(xi: Spectrum, state: ThermalState) -> Spectrum:
    """Thermal anticommutator ``σ = coth(βω/2) ξ``; ``ε(ω)ξ`` in vacuum."""
    w = xi.omega
    if state.is_vacuum:
        vals = sign(w) * xi.values
    else:
        with np.errstate(divide="ignore"):
            vals = xi.values / np.tanh(state.beta * w / 2)
        if np.any(w == 0) and np.any(xi.values[w == 0] != 0):
            raise SingularityError("thermal anticommutator diverges at ω = 0")
        vals = np.where(w == 0, 0.0, vals)
    return Spectrum(xi.grid, vals, xi.units, "thermal anticommutator")


def unruh_temperature(a: float, units: Units = NATURAL) -> float:
    """Temperature ``ħa/(2π k_B c)`` seen by an observer with proper acceleration ``a``."""
    if a < 0:
        raise InvalidInputError("proper acceleration must be non-negative")
    return units.hbar * a / (2.0 * np.pi * units.k_B * units.c)


def field_correlation_position(x0: float, xvec, eps: float, units: Units = NATURAL) -> np.ndarray:
    """Vacuum correlation of the potential in Feynman gauge, position domain.

    Returns the 4×4 complex matrix ``(ħ/π) η_μν / ((x0 - iε)² - |x|²)``.
    """
    if not eps > 0:
        raise InvalidInputError("regulator eps must be positive")
    r2 = float(np.dot(xvec, xvec))
    scalar = (units.hbar / np.pi) / ((x0 - 1j * eps) ** 2 - r2)
    return scalar * ETA


def field_spectrum_onshell(k, units: Units = NATURAL) -> np.ndarray:
    """Momentum-domain potential correlation with the ``δ(k²)`` factor stripped.

    Returns the 4×4 density ``2ħθ(k0)·π·η_μν`` that multiplies ``δ(k²)``.
    """
    k = WaveFourVector.of(k)
    return 2.0 * units.hbar * heaviside(k.k0) * np.pi * ETA


def stress_projector(k):
    """Transverse projectors built from a non-null wave vector.

    Returns ``(pi2, pi4)`` with ``pi2[μ,ν] = η_μν - k_μk_ν/k²`` and
    ``pi4[μ,ν,ρ,σ] = (pi2[μ,ρ]pi2[ν,σ] + pi2[μ,σ]pi2[ν,ρ])/2 - pi2[μ,ν]pi2[ρ,σ]/3``,
    all indices down.
    """
    k = WaveFourVector.of(k)
    k2 = k.square
    if k2 == 0:
        raise SingularityError("projector is undefined on the light cone")
    kl = k.lower
    pi2 = ETA - np.outer(kl, kl) / k2
    pi4 = (
        0.5 * (np.einsum("mr,ns->mnrs", pi2, pi2) + np.einsum("ms,nr->mnrs", pi2, pi2))
        - np.einsum("mn,rs->mnrs", pi2, pi2) / 3.0
    )
    return pi2, pi4


def stress_spectrum(k, indices, units: Units = NATURAL) -> float:
    """Vacuum spectrum of the Maxwell stress tensor, ``(ħ²/40π) θ(ω)θ(k²) (k²)² π_μνρσ``."""
    k = WaveFourVector.of(k)
    k2 = k.square
    if k.k0 <= 0 or k2 <= 0:
        return 0.0
    _, pi4 = stress_projector(k)
    return float(units.hbar**2 / (40.0 * np.pi) * k2**2 * pi4[tuple(indices)])


def momentum_density_spectrum(omega, units: Units = NATURAL):
    """``C_pp = (ħ²/12π) θ(ω) ω³`` for a scalar field in two dimensions."""
    w = np.asarray(omega, dtype=float)
    return units.hbar**2 * heaviside(w) * w**3 / (12 * np.pi)


def force_spectrum_perfect_mirror(omega, units: Units = NATURAL):
    """``C_FF = (ħ²/3πc²) θ(ω) ω³``: reflection doubles the momentum, so four times ``C_pp``."""
    w = np.asarray(omega, dtype=float)
    return units.hbar**2 * heaviside(w) * w**3 / (3 * np.pi * units.c**2)


def force_commutator_perfect_mirror(omega, units: Units = NATURAL):
    """``ξ_FF = (ħ/6πc²) ω³``."""
    w = np.asarray(omega, dtype=float)
    return units.hbar * w**3 / (6 * np.pi * units.c**2)
