"""Gravitational vacuum: linearized curvature, its zero-point spectrum, geodesic noise."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, InvalidInputError, SingularityError
from .mirror_dynamics import compton_background, compton_wavelength
from .spectra import ETA, WaveFourVector, heaviside
from .units import Units, si

ONSHELL_TOL = 1e-10
CROSSOVER_RTOL = 1e-6


@dataclass(frozen=True)
class PlanckScales:
    mass: float
    length: float
    frequency: float


def planck_units(units: Units | None = None) -> PlanckScales:
    """``m_P = √(ħc/G)``, ``l_P = √(ħG/c³)``; SI by default."""
    u = units or si()
    length = math.sqrt(u.hbar * u.G / u.c**3)
    return PlanckScales(math.sqrt(u.hbar * u.c / u.G), length, u.c / length)


@dataclass(frozen=True)
class MetricPerturbation:
    h: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=complex)
        if h.shape != (4, 4):
            raise InvalidInputError("metric perturbation must be 4×4")
        if not np.allclose(h, h.T, rtol=0, atol=1e-14 * max(1.0, np.abs(h).max())):
            raise InvalidInputError("metric perturbation must be symmetric")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)


def riemann_tensor(h: MetricPerturbation, k) -> np.ndarray:
    """All components of the first-order Riemann tensor ``R_λμρν[k]``."""
    kl = WaveFourVector.of(k).lower
    H = h.h if isinstance(h, MetricPerturbation) else MetricPerturbation(h).h
    kk = np.outer(kl, kl)
    return 0.5 * (
        np.einsum("mn,rl->lmrn", kk, H)
        + np.einsum("rl,mn->lmrn", kk, H)
        - np.einsum("mr,nl->lmrn", kk, H)
        - np.einsum("nl,mr->lmrn", kk, H)
    )


def riemann_linearized(h: MetricPerturbation, k, indices) -> complex:
    """``R_λμρν = ½(k_μk_ν h_ρλ + k_ρk_λ h_μν - k_μk_ρ h_νλ - k_νk_λ h_μρ)``."""
    lam, mu, rho, nu = indices
    kl = WaveFourVector.of(k).lower
    H = h.h if isinstance(h, MetricPerturbation) else MetricPerturbation(h).h
    return complex(
        0.5
        * (
            kl[mu] * kl[nu] * H[rho, lam]
            + kl[rho] * kl[lam] * H[mu, nu]
            - kl[mu] * kl[rho] * H[nu, lam]
            - kl[nu] * kl[lam] * H[mu, rho]
        )
    )


def curvature_kernel(k) -> np.ndarray:
    """``ℛ_λμρν = ½(k_λk_ρη_μν + k_μk_νη_λρ - k_μk_ρη_λν - k_λk_νη_μρ)``."""
    kl = WaveFourVector.of(k).lower
    kk = np.outer(kl, kl)
    return 0.5 * (
        np.einsum("lr,mn->lmrn", kk, ETA)
        + np.einsum("mn,lr->lmrn", kk, ETA)
        - np.einsum("mr,ln->lmrn", kk, ETA)
        - np.einsum("ln,mr->lmrn", kk, ETA)
    )


def _check_onshell(k: WaveFourVector):
    if k.k0 <= 0:
        raise DomainError("curvature spectrum is supported on positive frequencies only")
    if abs(k.square) > ONSHELL_TOL * k.k0**2:
        raise DomainError(f"k is off the light cone (k²/k0² = {k.square / k.k0**2:.3g})")


def riemann_vacuum_spectrum_tensor(k, planck_length: float = 1.0) -> np.ndarray:
    """Full 8-index density multiplying ``θ(k0) δ(k²)``."""
    k = WaveFourVector.of(k)
    _check_onshell(k)
    R = curvature_kernel(k)
    C = (
        np.einsum("lmLM,rnPN->lmrnLMPN", R, R)
        + np.einsum("lmPN,rnLM->lmrnLMPN", R, R)
        - np.einsum("lmrn,LMPN->lmrnLMPN", R, R)
    )
    return 16 * math.pi**2 * planck_length**2 * C


def riemann_vacuum_spectrum(k, indices, planck_length: float = 1.0) -> float:
    """One component ``(λ,μ,ρ,ν; λ',μ',ρ',ν')`` of the curvature zero-point spectrum."""
    k = WaveFourVector.of(k)
    _check_onshell(k)
    l, m, r, n, L, M, P, N = indices
    R = curvature_kernel(k)
    val = R[l, m, L, M] * R[r, n, P, N] + R[l, m, P, N] * R[r, n, L, M] - R[l, m, r, n] * R[L, M, P, N]
    return float(16 * math.pi**2 * planck_length**2 * val)


def einstein_contraction(C: np.ndarray) -> np.ndarray:
    """Linearized Einstein tensor built from the first index block of an 8-index spectrum."""
    ricci = np.einsum("lr,lmrnABCD->mnABCD", ETA, C)  # η^{λρ} has the same entries as η_{λρ}
    scalar = np.einsum("mn,mnABCD->ABCD", ETA, ricci)
    return ricci - 0.5 * np.einsum("mn,ABCD->mnABCD", ETA, scalar)


def geodesic_noise(omega, units: Units | None = None, factor: float = 1.0):
    """Length noise ``factor · l_P² θ(ω)/ω`` from gravitational vacuum fluctuations."""
    u = units or si()
    p = planck_units(u)
    w = np.asarray(omega, dtype=float)
    if np.any(np.abs(w) >= p.frequency):
        raise DomainError("frequency reaches the Planck frequency c/l_P")
    if np.any(w == 0):
        raise SingularityError("geodesic noise diverges at ω = 0")
    return factor * p.length**2 * heaviside(w) / w


Regime = Literal["compton-dominated", "planck-dominated", "crossover"]


def regime_classifier(mass: float, units: Units | None = None) -> Regime:
    """Which noise floor dominates: ``λ_C`` above ``l_P`` means Compton-dominated."""
    if not mass > 0:
        raise InvalidInputError("mass must be positive")
    u = units or si()
    lc = compton_wavelength(mass, u)
    lp = planck_units(u).length
    if abs(lc - lp) <= CROSSOVER_RTOL * lp:
        return "crossover"
    return "compton-dominated" if lc > lp else "planck-dominated"


def noise_ratio(mass: float, omega, units: Units | None = None):
    """``geodesic_noise / compton_background``, equal to ``(m/m_P)²``."""
    u = units or si()
    return geodesic_noise(omega, u) / compton_background(mass, omega, u)
