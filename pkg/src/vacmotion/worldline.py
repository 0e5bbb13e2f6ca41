"""Relativistic worldline kinematics.

A :class:`Worldline` maps a parameter ``λ`` to a contravariant four-vector.
Derivatives are handled as *jets*: a ``(4, 4)`` array whose row ``n`` is the
``n``-th derivative of ``x^μ`` with respect to the parameter. Jets come
either from an analytic function supplied by the caller, from exact
truncated-Taylor propagation (used for conformal images), or from central
finite differences of the position.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np
from scipy import integrate, optimize

from .errors import InvalidInputError, KinematicsError, SingularityError
from .spectra import ETA
from .units import NATURAL, Units

JET_ORDER = 3


def mdot(a, b):
    """Minkowski product with signature (+, -, -, -); works on trailing axis."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 0] - np.sum(a[..., 1:] * b[..., 1:], axis=-1)


@dataclass(frozen=True)
class FourVector:
    components: np.ndarray
    index: Literal["contravariant", "covariant"] = "contravariant"

    def __post_init__(self):
        comps = np.array(self.components, dtype=float).reshape(4)
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    def lowered(self) -> "FourVector":
        if self.index == "covariant":
            return self
        return FourVector(ETA @ self.components, "covariant")

    def raised(self) -> "FourVector":
        if self.index == "contravariant":
            return self
        return FourVector(ETA @ self.components, "contravariant")

    @property
    def square(self) -> float:
        return float(mdot(self.components, self.components))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.components, dtype=dtype)

    def __iter__(self):
        return iter(self.components)


def _as_vec(x) -> np.ndarray:
    if isinstance(x, FourVector):
        return x.raised().components
    v = np.asarray(x, dtype=float)
    if v.shape != (4,):
        raise InvalidInputError(f"expected four components, got shape {v.shape}")
    return v


# -- truncated Taylor arithmetic ---------------------------------------------
# A jet stores derivatives; products use Leibniz' rule on Taylor coefficients.

_FACT = np.array([math.factorial(n) for n in range(JET_ORDER + 1)], dtype=float)


def _to_taylor(jet):
    return jet / _FACT.reshape((-1,) + (1,) * (np.ndim(jet) - 1))


def _from_taylor(coef):
    return coef * _FACT.reshape((-1,) + (1,) * (np.ndim(coef) - 1))


def _series_mul(a, b):
    n = a.shape[0]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for i in range(n):
        for j in range(n - i):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


def _series_recip(a):
    n = a.shape[0]
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for i in range(1, n):
        out[i] = -sum(a[j] * out[i - j] for j in range(1, i + 1)) / a[0]
    return out


def _series_mdot(a, b):
    return _series_mul(a[:, 0], b[:, 0]) - sum(_series_mul(a[:, i], b[:, i]) for i in range(1, 4))


def conformal_denominator(x, a) -> float:
    x = _as_vec(x)
    a = _as_vec(a)
    return float(1.0 - 2.0 * mdot(a, x) + mdot(a, a) * mdot(x, x))


def conformal_map(x, a, *, tol: float = 1e-12) -> FourVector:
    """Special conformal transformation ``x̄ = (x - a x²)/(1 - 2a·x + a² x²)``.

    Equivalently ``x̄/x̄² = x/x² - a``: a translation by ``-a`` in inverted
    coordinates.
    """
    xv = _as_vec(x)
    av = _as_vec(a)
    D = conformal_denominator(xv, av)
    scale = max(1.0, abs(mdot(av, av) * mdot(xv, xv)), abs(2 * mdot(av, xv)))
    if abs(D) <= tol * scale:
        raise SingularityError(f"point {xv.tolist()} is mapped to infinity (D = {D:g})")
    return FourVector((xv - av * mdot(xv, xv)) / D)


def conformal_map_jet(jet: np.ndarray, a) -> np.ndarray:
    """Push a position jet through the conformal map, exactly to third order."""
    av = _as_vec(a)
    t = _to_taylor(np.asarray(jet, dtype=float))
    x2 = _series_mdot(t, t)
    ax = t @ ETA @ av
    D = -2.0 * ax + mdot(av, av) * x2
    D[0] += 1.0
    if abs(D[0]) < 1e-14:
        raise SingularityError("worldline point is mapped to infinity")
    num = t - x2[:, None] * av[None, :]
    out = _series_mul(num, _series_recip(D)[:, None])
    return _from_taylor(out)


# -- worldlines ------------------------------------------------------------

JetFn = Callable[[float], np.ndarray]


def _fd_jet(position: Callable[[float], np.ndarray], lam: float, h: float) -> np.ndarray:
    f = {k: np.asarray(position(lam + k * h), dtype=float) for k in range(-3, 4) if k}
    f0 = np.asarray(position(lam), dtype=float)
    d1 = (-f[2] + 8 * f[1] - 8 * f[-1] + f[-2]) / (12 * h)
    d2 = (-f[2] + 16 * f[1] - 30 * f0 + 16 * f[-1] - f[-2]) / (12 * h * h)
    h3 = 10.0 * h
    g = {k: np.asarray(position(lam + k * h3), dtype=float) for k in range(-3, 4) if k}
    # seven-point stencil, O(h⁴) like the first two
    d3 = (-g[3] + 8 * g[2] - 13 * g[1] + 13 * g[-1] - 8 * g[-2] + g[-3]) / (8 * h3**3)
    return np.stack([f0, d1, d2, d3])


@dataclass(frozen=True)
class Worldline:
    """Trajectory ``λ ↦ x^μ(λ)``.

    ``jet_fn`` returns the ``(4, 4)`` derivative stack for analytic or
    propagated sources; without it, finite differences of ``position`` with
    step ``h = max(step, step·|λ|)`` are used.
    """

    position: Callable[[float], np.ndarray]
    parameterization: Literal["proper-time", "coordinate-time", "general"] = "general"
    jet_fn: Optional[JetFn] = None
    step: float = 1e-4

    def __post_init__(self):
        if not self.step > 0:
            raise InvalidInputError("finite-difference step must be positive")

    @property
    def derivative_source(self) -> str:
        return "analytic" if self.jet_fn is not None else "finite-difference"

    def jet(self, lam: float) -> np.ndarray:
        if self.jet_fn is not None:
            return np.asarray(self.jet_fn(lam), dtype=float)
        h = max(self.step, self.step * abs(lam))
        return _fd_jet(self.position, lam, h)

    def finite_difference(self, step: Optional[float] = None) -> "Worldline":
        return Worldline(self.position, self.parameterization, None, step or self.step)

    def proper_jet(self, lam: float) -> np.ndarray:
        """Derivatives with respect to proper time at parameter ``lam``."""
        return proper_time_jet(self.jet(lam))


def proper_time_jet(jet: np.ndarray) -> np.ndarray:
    """Convert parameter derivatives to proper-time derivatives via the chain rule."""
    x0, x1, x2, x3 = jet
    s2 = mdot(x1, x1)
    if not s2 > 0:
        raise KinematicsError(f"worldline is not timelike (ẋ² = {s2:g})")
    s = math.sqrt(s2)
    p = mdot(x1, x2)
    ds = p / s
    dds = (mdot(x2, x2) + mdot(x1, x3)) / s - p * p / s**3
    u = x1 / s
    acc = x2 / s2 - x1 * ds / s**3
    jerk = x3 / s**3 - 3 * x2 * ds / s**4 - x1 * dds / s**4 + 3 * x1 * ds * ds / s**5
    return np.stack([x0, u, acc, jerk])


# -- standard trajectories -----------------------------------------------------


def rest(origin=(0.0, 0.0, 0.0)) -> Worldline:
    o = np.asarray(origin, dtype=float)
    pos = lambda t: np.concatenate([[t], o])
    jet = lambda t: np.stack([pos(t), [1.0, 0, 0, 0], np.zeros(4), np.zeros(4)])
    return Worldline(pos, "proper-time", jet)


def uniform_velocity(v, origin=(0.0, 0.0, 0.0)) -> Worldline:
    """Coordinate-time parameterized inertial motion with 3-velocity ``v``."""
    v = np.asarray(v, dtype=float).reshape(3)
    if np.dot(v, v) >= 1.0:
        raise KinematicsError("speed must be below c = 1")
    o = np.asarray(origin, dtype=float)
    pos = lambda t: np.concatenate([[t], o + v * t])
    vel = np.concatenate([[1.0], v])
    jet = lambda t: np.stack([pos(t), vel, np.zeros(4), np.zeros(4)])
    return Worldline(pos, "coordinate-time", jet)


def hyperbolic(acceleration: float, axis: int = 1) -> Worldline:
    """Uniformly accelerated motion, proper-time parameterized.

    ``x⁰ = sinh(aτ)/a``, ``x^axis = cosh(aτ)/a``.
    """
    a = float(acceleration)
    if not a > 0:
        raise InvalidInputError("acceleration must be positive")

    def jet(tau):
        ch, sh = math.cosh(a * tau), math.sinh(a * tau)
        out = np.zeros((4, 4))
        out[0, 0], out[0, axis] = sh / a, ch / a
        out[1, 0], out[1, axis] = ch, sh
        out[2, 0], out[2, axis] = a * sh, a * ch
        out[3, 0], out[3, axis] = a * a * ch, a * a * sh
        return out

    return Worldline(lambda tau: jet(tau)[0], "proper-time", jet)


def hyperbolic_coordinate_time(acceleration: float) -> Worldline:
    """Same hyperbola parameterized by coordinate time: ``x¹ = sqrt(1/a² + t²)``."""
    a = float(acceleration)

    def jet(t):
        r = math.sqrt(1.0 / a**2 + t * t)
        out = np.zeros((4, 4))
        out[0, 0], out[1, 0] = t, 1.0
        out[0, 1] = r
        out[1, 1] = t / r
        out[2, 1] = 1.0 / (a * a * r**3)
        out[3, 1] = -3.0 * t / (a * a * r**5)
        return out

    return Worldline(lambda t: jet(t)[0], "coordinate-time", jet)


def sinusoid(amplitude: float, frequency: float, axis: int = 1) -> Worldline:
    """Coordinate-time parameterized oscillation ``x^axis = ε sin(Ωt)``."""
    e, w = float(amplitude), float(frequency)

    def jet(t):
        s, c = math.sin(w * t), math.cos(w * t)
        out = np.zeros((4, 4))
        out[0, 0], out[1, 0] = t, 1.0
        out[0, axis] = e * s
        out[1, axis] = e * w * c
        out[2, axis] = -e * w * w * s
        out[3, axis] = -e * w**3 * c
        return out

    return Worldline(lambda t: jet(t)[0], "coordinate-time", jet)


# -- operations ------------------------------------------------------------


def proper_time(w: Worldline, lam0: float, lam1: float, *, rtol: float = 1e-10) -> float:
    """Proper time elapsed between two parameter values by adaptive quadrature."""

    def speed(lam):
        d = w.jet(lam)[1]
        s2 = mdot(d, d)
        if s2 <= 0:
            raise KinematicsError(f"spacelike or null tangent at λ = {lam:g} (ẋ² = {s2:g})")
        return math.sqrt(s2)

    val, err = integrate.quad(speed, lam0, lam1, epsabs=0.0, epsrel=rtol, limit=200)
    return float(val)


def abraham_vector(w: Worldline, lam: float) -> FourVector:
    """``Γ^μ = d³x^μ/dτ³ + (d²x/dτ²)² dx^μ/dτ`` at parameter value ``lam``."""
    jet = w.proper_jet(lam)
    if not np.all(np.isfinite(jet)):
        raise KinematicsError(f"derivatives are not finite at λ = {lam:g}")
    u, acc, jerk = jet[1], jet[2], jet[3]
    return FourVector(jerk + mdot(acc, acc) * u)


def radiation_reaction(w: Worldline, lam: float, units: Units = NATURAL) -> FourVector:
    """Reaction force ``(ħ/6πc²) Γ^μ`` on a perfect mirror in a 2D scalar vacuum."""
    gamma = abraham_vector(w, lam).components
    return FourVector(units.hbar / (6 * math.pi * units.c**2) * gamma)


def four_velocity(w: Worldline, lam: float) -> FourVector:
    return FourVector(w.proper_jet(lam)[1])


def map_worldline(
    w: Worldline,
    a,
    *,
    check_range: Optional[tuple[float, float]] = None,
    samples: int = 256,
    reparameterize: bool = True,
    tau_origin: float = 0.0,
) -> Worldline:
    """Image of a worldline under :func:`conformal_map`.

    Derivatives of the image come from exact jet propagation when ``w`` has
    an analytic jet; otherwise by finite differences of the mapped position.
    With ``reparameterize`` the result is parameterized by its own proper
    time, measured from the image of ``λ = tau_origin``. ``check_range`` is
    scanned for sign changes of the conformal denominator.
    """
    av = _as_vec(a)
    if check_range is not None:
        lams = np.linspace(check_range[0], check_range[1], samples)
        D = np.array([conformal_denominator(w.position(l), av) for l in lams])
        crossing = np.append(np.sign(D[:-1]) != np.sign(D[1:]), False)
        bad = np.flatnonzero(crossing | (np.abs(D) < 1e-12))
        if bad.size:
            raise KinematicsError(
                f"worldline crosses the singular locus near λ = {lams[bad[0]]:.6g}"
            )

    def pos(lam):
        try:
            return conformal_map(w.position(lam), av).components
        except SingularityError as exc:
            raise KinematicsError(f"singular locus at λ = {lam:g}") from exc

    if w.jet_fn is not None:
        def jet(lam):
            try:
                return conformal_map_jet(w.jet(lam), av)
            except SingularityError as exc:
                raise KinematicsError(f"singular locus at λ = {lam:g}") from exc
        image = Worldline(pos, "general", jet, w.step)
    else:
        image = Worldline(pos, "general", None, w.step)

    if not reparameterize:
        return image
    return reparameterize_by_proper_time(image, tau_origin)


def reparameterize_by_proper_time(w: Worldline, lam_origin: float = 0.0) -> Worldline:
    """Return ``w`` with proper time as parameter, ``τ = 0`` at ``λ = lam_origin``."""

    def lam_of(tau):
        if tau == 0:
            return lam_origin
        s0 = math.sqrt(mdot(w.jet(lam_origin)[1], w.jet(lam_origin)[1]))
        guess = lam_origin + tau / s0
        f = lambda lam: proper_time(w, lam_origin, lam) - tau
        lo, hi = sorted((lam_origin, guess))
        span = max(abs(guess - lam_origin), 1e-12)
        for _ in range(60):
            if f(lo) <= 0 <= f(hi):
                break
            lo, hi = lo - span, hi + span
            span *= 2
        return optimize.brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    def pos(tau):
        return w.position(lam_of(tau))

    if w.jet_fn is None:
        return Worldline(pos, "proper-time", None, w.step)

    def jet(tau):
        return proper_time_jet(w.jet(lam_of(tau)))

    return Worldline(pos, "proper-time", jet, w.step)


def sample(w: Worldline, lams) -> np.ndarray:
    """Rows ``(λ, x⁰, x¹, x², x³)`` for CSV output."""
    lams = np.asarray(lams, dtype=float)
    return np.column_stack([lams, np.array([w.position(l) for l in lams])])
