"""Quantum limits for interferometric position measurement.

The probe adds ``δq = δφ/(2K₀) + 2ħK₀ χ δI`` to the position record. With
``X = δφ/(2K₀)`` and ``Y = 2ħK₀ δI`` the added noise is the quadratic form

    σ_qq = σ_XX + |χ|² σ_YY + 2 Re(χ) σ_XY,

where the symmetrized probe covariances obey ``σ_φφ σ_II - σ_φI² ≥ 1/4``
(vacuum: ``σ_φφ = σ_II = 1/2``). Equivalently ``det Σ_XY ≥ ħ²/4``, and the
minimum of ``tr(M Σ)`` over that set is ``ħ √det M = ħ |Im χ|`` with
``M = [[1, Re χ], [Re χ, |χ|²]]``. Uncorrelated vacuum probes at the best
``K₀`` give ``ħ|χ|``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import InvalidInputError, SingularityError
from .units import NATURAL, Units

log = logging.getLogger(__name__)

HEISENBERG = 0.25
VACUUM_NOISE = 0.5
SQUEEZING_CAP_DB = 60.0


@dataclass(frozen=True)
class ProbeState:
    K0: float
    sigma_phiphi: float
    sigma_II: float
    sigma_phiI: float = 0.0

    def __post_init__(self):
        if not self.K0 > 0:
            raise InvalidInputError("mean wave-vector must be positive")
        if self.sigma_phiphi < 0 or self.sigma_II < 0:
            raise InvalidInputError("noise spectral densities must be non-negative")

    @classmethod
    def vacuum(cls, K0: float) -> "ProbeState":
        return cls(K0, VACUUM_NOISE, VACUUM_NOISE, 0.0)

    @property
    def determinant(self) -> float:
        return self.sigma_phiphi * self.sigma_II - self.sigma_phiI**2

    def is_admissible(self, rtol: float = 1e-9) -> bool:
        # the determinant cancels between terms of size σ_φφσ_II for squeezed states
        scale = max(HEISENBERG, self.sigma_phiphi * self.sigma_II)
        return self.determinant >= HEISENBERG - rtol * scale

    @property
    def squeezing_db(self) -> float:
        """Noise reduction of the most squeezed quadrature below vacuum, in dB."""
        a, b, c = self.sigma_phiphi, self.sigma_II, self.sigma_phiI
        lam_min = 0.5 * (a + b) - math.hypot(0.5 * (a - b), c)
        if lam_min <= 0:
            return math.inf
        return 10 * math.log10(VACUUM_NOISE / lam_min)


@dataclass(frozen=True)
class MechanicalSusceptibility:
    mass: float
    omega0: float
    gamma: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidInputError("mass must be positive")
        if self.omega0 < 0 or self.gamma < 0:
            raise InvalidInputError("omega0 and gamma must be non-negative")


def chi_mech(s: MechanicalSusceptibility, omega):
    """``1/(m(ω₀² - ω² - iγω))``."""
    w = np.asarray(omega, dtype=float)
    denom = s.mass * (s.omega0**2 - w**2 - 1j * s.gamma * w)
    if np.any(denom == 0):
        raise SingularityError("undamped oscillator driven exactly at resonance")
    return 1.0 / denom


def sql_bound(s: MechanicalSusceptibility, omega, units: Units = NATURAL):
    return units.hbar * np.abs(chi_mech(s, omega))


def uql_bound(s: MechanicalSusceptibility, omega, units: Units = NATURAL):
    return units.hbar * np.abs(chi_mech(s, omega).imag)


def noise_from_covariance(chi: complex, sxx: float, syy: float, sxy: float) -> float:
    return sxx + abs(chi) ** 2 * syy + 2 * chi.real * sxy


def measured_position_noise(
    probe: ProbeState, s: MechanicalSusceptibility, omega: float, units: Units = NATURAL
) -> float:
    if not probe.is_admissible():
        raise InvalidInputError(
            f"probe violates the Heisenberg bound: det = {probe.determinant:.6g} < 1/4"
        )
    chi = complex(chi_mech(s, omega))
    hbar, K0 = units.hbar, probe.K0
    return (
        probe.sigma_phiphi / (4 * K0**2)
        + 4 * hbar**2 * K0**2 * abs(chi) ** 2 * probe.sigma_II
        + 2 * hbar * chi.real * probe.sigma_phiI
    )


def sql_wavevector(s: MechanicalSusceptibility, omega: float, units: Units = NATURAL,
                   sigma_phiphi: float = VACUUM_NOISE, sigma_II: float = VACUUM_NOISE) -> float:
    """``K₀`` balancing phase noise against backaction for an uncorrelated probe."""
    chi = abs(complex(chi_mech(s, omega)))
    return (sigma_phiphi / (16 * units.hbar**2 * chi**2 * sigma_II)) ** 0.25


def _probe_from_xy(sxx, syy, sxy, hbar):
    """Map an ``(X, Y)`` covariance to a probe, choosing ``K₀`` so ``σ_φφ = σ_II``."""
    K0 = (syy / sxx) ** 0.25 / math.sqrt(4 * hbar)
    return ProbeState(K0, 4 * K0**2 * sxx, syy / (4 * hbar**2 * K0**2), sxy / hbar)


def _squeezed(r: float, theta: float):
    """Pure state with ``σ_φφσ_II - σ_φI² = 1/4`` squeezed by ``e^{-2r}`` along angle ``theta``."""
    lo, hi = 0.5 * math.exp(-2 * r), 0.5 * math.exp(2 * r)
    c, sn = math.cos(theta), math.sin(theta)
    return lo * c * c + hi * sn * sn, lo * sn * sn + hi * c * c, (lo - hi) * c * sn


def _capped_noise(chi: complex, r: float, theta: float, hbar: float) -> tuple[float, float]:
    """Best noise and ``K₀`` for a fixed squeezed state; ``K₀`` enters as ``αK₀⁻² + βK₀²``."""
    spp, sii, spi = _squeezed(r, theta)
    alpha = spp / 4
    beta = 4 * hbar**2 * abs(chi) ** 2 * sii
    K0 = (alpha / beta) ** 0.25
    return 2 * math.sqrt(alpha * beta) + 2 * hbar * chi.real * spi, K0


def optimize_probe(
    s: MechanicalSusceptibility,
    omega: float,
    units: Units = NATURAL,
    cap_db: float = SQUEEZING_CAP_DB,
) -> ProbeState:
    """Heisenberg-saturating probe that minimizes the added position noise.

    The ideal optimum reaches ``ħ|Im χ|``; it needs infinite squeezing where
    ``Im χ → 0``. If it exceeds ``cap_db`` the squeezing is held at the cap
    and the angle and ``K₀`` are optimized instead.
    """
    hbar = units.hbar
    chi = complex(chi_mech(s, omega))
    b = abs(chi) ** 2
    c = chi.real
    det = b - c * c
    d = hbar / 2
    if det > 0:
        root = math.sqrt(det)
        ideal = _probe_from_xy(d * b / root, d / root, -d * c / root, hbar)
        if ideal.squeezing_db <= cap_db:
            # terms of size sql²/uql cancel down to uql, so rounding of the
            # covariances limits attainment to about eps·(sql/uql)²
            gap = np.finfo(float).eps * b / det
            if gap > 1e-6:
                log.warning("UQL attainable only to ~%.1e relative (sql/uql = %.3g)", gap, math.sqrt(b / det))
            return ideal
    r_cap = cap_db / 10 * math.log(10) / 2
    f = lambda th: _capped_noise(chi, r_cap, th, hbar)[0]
    grid = np.linspace(-math.pi / 2, math.pi / 2, 721)
    i = int(np.argmin([f(t) for t in grid]))
    step = grid[1] - grid[0]
    res = optimize.minimize_scalar(f, bounds=(grid[i] - step, grid[i] + step), method="bounded",
                                   options={"xatol": 1e-14})
    noise, K0 = _capped_noise(chi, r_cap, res.x, hbar)
    spp, sii, spi = _squeezed(r_cap, res.x)
    probe = ProbeState(K0, spp, sii, spi)
    log.info(
        "squeezing capped at %.1f dB: noise %.6g vs ideal %.6g",
        cap_db, noise, hbar * abs(chi.imag),
    )
    return probe


def random_admissible_probe(rng: np.random.Generator, max_log_squeeze: float = 3.0) -> ProbeState:
    """Random probe satisfying the Heisenberg bound (possibly mixed)."""
    r = rng.uniform(0, max_log_squeeze)
    theta = rng.uniform(-math.pi, math.pi)
    spp, sii, spi = _squeezed(r, theta)
    excess = 1 + rng.exponential(0.5)
    K0 = math.exp(rng.uniform(-5, 5))
    return ProbeState(K0, spp * excess, sii * excess, spi * excess)
