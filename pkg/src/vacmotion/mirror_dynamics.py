"""Linear response of a mirror to vacuum radiation pressure.

The force susceptibility ``χ_FF`` has dissipative part ``ξ_FF = (ħ/6πc²) ω³``
for a perfect mirror in a two-dimensional scalar vacuum. Two models are
provided:

``perfect``
    ``χ_FF = i (ħ/6πc²) ω³`` with the reactive part subtracted to zero. It is
    not square-integrable against any dispersion kernel and yields a runaway
    mechanical equation.
``cutoff``
    ``χ_FF = (ħ/6πc²) Ω³ · u²/(2(1 - iu)²)``, ``u = ω/Ω``. Its only pole is at
    ``ω = -iΩ`` so it is causal; ``Im χ_FF = (ħ/6πc²) ω³/(1 + u²)²`` is
    non-negative for ``ω > 0`` and matches the perfect mirror below the
    cutoff; ``Re χ_FF ≈ δm ω²`` with ``δm = ħΩ/(12πc²)`` is a mass shift.

A third kind, ``none``, switches the coupling off.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np
from scipy import integrate

from .errors import ConsistencyError, InvalidInputError, SingularityError
from .spectra import FrequencyGrid, Spectrum, heaviside
from .units import NATURAL, Units

POLE_RTOL = 1e-12


@dataclass(frozen=True)
class ForceSusceptibilityModel:
    kind: Literal["perfect", "cutoff", "none"] = "perfect"
    cutoff: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("perfect", "cutoff", "none"):
            raise InvalidInputError(f"unknown force model {self.kind!r}")
        if self.kind == "cutoff" and not (self.cutoff is not None and self.cutoff > 0):
            raise InvalidInputError("cutoff model needs a positive cutoff frequency")

    def mass_shift(self, units: Units = NATURAL) -> float:
        """Inertial mass added by the reactive part at low frequency."""
        if self.kind != "cutoff":
            return 0.0
        return units.hbar * self.cutoff / (12 * math.pi * units.c**2)


PERFECT = ForceSusceptibilityModel("perfect")
DECOUPLED = ForceSusceptibilityModel("none")


@dataclass(frozen=True)
class OscillatorModel:
    """Mirror of mass ``m`` bound at ``omega0``.

    With ``bare_mass`` the mass enters the response as given; otherwise it is
    the observed mass and the force model's mass shift is removed from it.
    """

    mass: float
    omega0: float = 0.0
    bare_mass: bool = True

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidInputError("mass must be positive")
        if self.omega0 < 0:
            raise InvalidInputError("proper frequency must be non-negative")

    def bare(self, force_model: ForceSusceptibilityModel, units: Units = NATURAL) -> float:
        if self.bare_mass:
            return self.mass
        m0 = self.mass - force_model.mass_shift(units)
        if not m0 > 0:
            raise InvalidInputError(
                "cutoff energy exceeds the mirror mass; no causal bare mass exists"
            )
        return m0


def chi_FF(model: ForceSusceptibilityModel, omega, units: Units = NATURAL):
    w = np.asarray(omega, dtype=float)
    A = units.hbar / (6 * math.pi * units.c**2)
    if model.kind == "none":
        return np.zeros_like(w, dtype=complex)
    if model.kind == "perfect":
        return 1j * A * w**3
    Om = model.cutoff
    u = w / Om
    return A * Om**3 * u * u / (2 * (1 - 1j * u) ** 2)


def chi_qq(osc: OscillatorModel, force_model: ForceSusceptibilityModel, omega, units: Units = NATURAL):
    """Mechanical response ``1/(m₀(ω₀² - ω²) - χ_FF)``."""
    w = np.asarray(omega, dtype=float)
    m0 = osc.bare(force_model, units)
    bare = m0 * (osc.omega0**2 - w**2)
    denom = bare - chi_FF(force_model, w, units)
    scale = m0 * np.maximum(osc.omega0**2, w**2)
    pole = np.abs(denom) <= POLE_RTOL * np.where(scale > 0, scale, 1.0)
    if np.any(pole):
        bad = np.atleast_1d(w)[np.atleast_1d(pole)][0]
        raise SingularityError(f"mechanical response has a pole at ω = {bad:.12g}")
    return 1.0 / denom


def force_correlation(force_model: ForceSusceptibilityModel, omega, units: Units = NATURAL):
    """``C_FF = 2ħθ(ω) Im χ_FF``."""
    w = np.asarray(omega, dtype=float)
    return 2 * units.hbar * heaviside(w) * chi_FF(force_model, w, units).imag


def langevin_position_spectrum(
    osc: OscillatorModel,
    force_model: ForceSusceptibilityModel,
    grid: FrequencyGrid,
    units: Units = NATURAL,
    rtol: float = 1e-10,
) -> Spectrum:
    """Position noise ``C_qq = 2ħθ(ω) Im χ_qq``, cross-checked against ``|χ_qq|² C_FF``."""
    w = grid.points
    chi = chi_qq(osc, force_model, w, units)
    direct = 2 * units.hbar * heaviside(w) * chi.imag
    via_force = np.abs(chi) ** 2 * force_correlation(force_model, w, units)
    scale = np.maximum(np.abs(direct), np.abs(via_force))
    tiny = np.finfo(float).tiny
    bad = np.abs(direct - via_force) > rtol * scale + tiny
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise ConsistencyError(
            f"fluctuation-dissipation routes disagree at ω = {w[i]:.12g}: "
            f"{direct[i]:.17g} vs {via_force[i]:.17g}"
        )
    return Spectrum(grid, direct, units.name, "position noise")


def compton_wavelength(mass: float, units: Units = NATURAL) -> float:
    return units.hbar / (mass * units.c)


def compton_background(mass: float, omega, units: Units = NATURAL):
    """Position diffusion ``λ_C² θ(ω)/ω`` of a free mirror (order of magnitude, prefactor 1)."""
    if not mass > 0:
        raise InvalidInputError("mass must be positive")
    w = np.asarray(omega, dtype=float)
    if np.any(w == 0):
        raise SingularityError("diffusion background diverges at ω = 0")
    return compton_wavelength(mass, units) ** 2 * heaviside(w) / w


@dataclass
class CausalityReport:
    kind: str
    causal: Optional[bool]
    max_discrepancy: float
    note: str = ""
    omega: np.ndarray = field(default_factory=lambda: np.empty(0))
    reactive: np.ndarray = field(default_factory=lambda: np.empty(0))
    reconstructed: np.ndarray = field(default_factory=lambda: np.empty(0))


def dispersion_reactive(force_model: ForceSusceptibilityModel, omega: float, units: Units = NATURAL) -> float:
    """Reactive part from the dissipative one, once subtracted at ω = 0.

    ``Re χ(ω) - Re χ(0) = (2ω²/π) P∫₀^∞ Im χ(ν) / (ν(ν² - ω²)) dν``
    """
    im = lambda nu: float(chi_FF(force_model, nu, units).imag)
    w = float(omega)
    if w == 0:
        return 0.0
    # split 1/(ν(ν²-ω²)) = [1/(ν(ν+ω))] / (ν-ω); Cauchy weight on the finite piece
    g = lambda nu: im(nu) / (nu * (nu + w)) if nu > 0 else 0.0
    upper = 50.0 * max(w, force_model.cutoff or w)
    pv, _ = integrate.quad(g, 0.0, upper, weight="cauchy", wvar=w, limit=400, epsabs=0.0, epsrel=1e-9)
    tail, _ = integrate.quad(
        lambda nu: im(nu) / (nu * (nu * nu - w * w)), upper, np.inf, limit=400, epsabs=0.0, epsrel=1e-9
    )
    return 2 * w * w / math.pi * (pv + tail)


def causality_check(force_model: ForceSusceptibilityModel, grid: FrequencyGrid, units: Units = NATURAL) -> CausalityReport:
    """Kramers-Kronig consistency between the reactive and dissipative parts.

    The discrepancy at each positive grid point is normalized by ``|χ_FF(ω)|``.
    """
    if force_model.kind == "none":
        return CausalityReport("none", True, 0.0, "identically zero susceptibility")
    if force_model.kind == "perfect":
        return CausalityReport(
            "perfect",
            False,
            math.inf,
            "non-causal as a mechanical equation: ω³ growth admits no dispersion relation "
            "and the third-derivative force produces runaway solutions",
        )
    w = grid.points[grid.points > 0]
    re = chi_FF(force_model, w, units).real
    kk = np.array([dispersion_reactive(force_model, x, units) for x in w])
    mag = np.abs(chi_FF(force_model, w, units))
    disc = float(np.max(np.abs(kk - re) / mag)) if w.size else 0.0
    return CausalityReport("cutoff", disc < 0.02, disc, "once-subtracted dispersion relation", w, re, kk)
