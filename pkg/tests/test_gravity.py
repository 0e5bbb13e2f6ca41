import itertools
import math

import numpy as np
import pytest
import scipy.constants as sc
from hypothesis import given
from hypothesis import strategies as st

from vacmotion import gravity as gr
from vacmotion.errors import DomainError, InvalidInputError, SingularityError
from vacmotion.units import ELECTRON_MASS_SI, NATURAL, si

from conftest import random_null

ETA = np.diag([1.0, -1, -1, -1])


def _kernel_oracle(k):
    kl = ETA @ np.asarray(k, float)
    R = np.zeros((4,) * 4)
    for l, m, r, n in itertools.product(range(4), repeat=4):
        R[l, m, r, n] = 0.5 * (
            kl[l] * kl[r] * ETA[m, n] + kl[m] * kl[n] * ETA[l, r]
            - kl[m] * kl[r] * ETA[l, n] - kl[l] * kl[n] * ETA[m, r]
        )
    return R


def test_planck_values():
    p = gr.planck_units()
    assert p.mass == pytest.approx(22e-9, rel=0.02)
    assert p.length == pytest.approx(1.6e-35, rel=0.02)
    assert p.mass == pytest.approx(math.sqrt(sc.hbar * sc.c / sc.G), rel=1e-9)
    assert p.mass * p.length == pytest.approx(si().hbar / si().c, rel=1e-12)


def test_riemann_linearized_symmetries(rng):
    for _ in range(20):
        h = rng.normal(size=(4, 4))
        h = h + h.T
        k = rng.normal(size=4)
        R = gr.riemann_tensor(h, k)
        assert np.allclose(R, -R.transpose(1, 0, 2, 3), atol=1e-12)
        assert np.allclose(R, R.transpose(2, 3, 0, 1), atol=1e-12)
        idx = tuple(rng.integers(0, 4, size=4))
        assert gr.riemann_linearized(h, k, idx) == pytest.approx(R[idx], abs=1e-12)
    with pytest.raises(InvalidInputError):
        gr.MetricPerturbation(np.triu(np.ones((4, 4))))


def test_component_matches_bruteforce():
    k = (1.0, 0.0, 0.0, 1.0)
    R = _kernel_oracle(k)
    idx = (0, 1, 0, 1, 0, 1, 0, 1)
    l, m, r, n, L, M, P, N = idx
    want = 16 * math.pi**2 * (R[l, m, L, M] * R[r, n, P, N] + R[l, m, P, N] * R[r, n, L, M] - R[l, m, r, n] * R[L, M, P, N])
    assert gr.riemann_vacuum_spectrum(k, idx) == pytest.approx(want, abs=1e-14)
    assert np.allclose(gr.curvature_kernel(k), R, atol=1e-15)


def test_spectrum_symmetries_and_einstein(rng):
    for k in random_null(rng, 50):
        C = gr.riemann_vacuum_spectrum_tensor(k)
        scale = max(1.0, np.abs(C).max())
        for perm in [(1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)]:
            first = perm + (4, 5, 6, 7)
            second = (0, 1, 2, 3) + tuple(p + 4 for p in perm)
            sgn = 1 if perm == (2, 3, 0, 1) else -1
            assert np.abs(C - sgn * C.transpose(first)).max() < 1e-12 * scale
            assert np.abs(C - sgn * C.transpose(second)).max() < 1e-12 * scale
        assert np.abs(gr.einstein_contraction(C)).max() < 1e-10 * scale


def test_offshell_rejected():
    with pytest.raises(DomainError):
        gr.riemann_vacuum_spectrum((1.0, 0.0, 0.0, 0.5), (0,) * 8)
    with pytest.raises(DomainError):
        gr.riemann_vacuum_spectrum((-1.0, 0.0, 0.0, 1.0), (0,) * 8)


def test_geodesic_noise():
    assert gr.geodesic_noise(1.0) == pytest.approx(2.6122803024e-70, rel=1e-8)
    w = np.logspace(-3, 5, 30)
    assert np.allclose(gr.geodesic_noise(w) * w, gr.planck_units().length ** 2, rtol=1e-14)
    assert gr.geodesic_noise(1.0, factor=3.0) == pytest.approx(3 * gr.geodesic_noise(1.0))
    with pytest.raises(SingularityError):
        gr.geodesic_noise(0.0)
    with pytest.raises(DomainError):
        gr.geodesic_noise(2.0, NATURAL)


def test_regimes():
    mp = gr.planck_units().mass
    assert gr.regime_classifier(ELECTRON_MASS_SI) == "compton-dominated"
    assert gr.regime_classifier(1e-3) == "planck-dominated"
    assert gr.regime_classifier(mp) == "crossover"
    assert gr.regime_classifier(mp * (1 - 1e-3)) == "compton-dominated"
    assert gr.regime_classifier(mp * (1 + 1e-3)) == "planck-dominated"


@given(st.floats(-40, 0), st.floats(0, 40))
def test_regime_monotone(lo, span):
    order = {"compton-dominated": 0, "crossover": 1, "planck-dominated": 2}
    a, b = 10.0**lo, 10.0 ** (lo + span / 10)
    assert order[gr.regime_classifier(a)] <= order[gr.regime_classifier(b)]


def test_noise_ratio(rng):
    mp = gr.planck_units().mass
    for m in 10.0 ** rng.uniform(-30, 2, size=100):
        assert gr.noise_ratio(m, 3.0) == pytest.approx((m / mp) ** 2, rel=1e-12)
