import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vacmotion import measurement as ms
from vacmotion.errors import InvalidInputError, SingularityError
from vacmotion.units import NATURAL

S = ms.MechanicalSusceptibility(1.0, 1.0, 0.05)


def test_probe_validation():
    with pytest.raises(InvalidInputError):
        ms.ProbeState(0.0, 0.5, 0.5)
    assert ms.ProbeState.vacuum(1.0).is_admissible()
    assert not ms.ProbeState(1.0, 0.1, 0.1).is_admissible()
    with pytest.raises(InvalidInputError):
        ms.measured_position_noise(ms.ProbeState(1.0, 0.1, 0.1), S, 0.5)


def test_bounds_at_resonance():
    m, w0, g = 2.0, 3.0, 0.1
    s = ms.MechanicalSusceptibility(m, w0, g)
    want = 1 / (m * g * w0)
    assert ms.sql_bound(s, w0) == pytest.approx(want, rel=1e-12)
    assert ms.uql_bound(s, w0) == pytest.approx(want, rel=1e-12)
    with pytest.raises(SingularityError):
        ms.chi_mech(ms.MechanicalSusceptibility(1.0, 1.0, 0.0), 1.0)


def test_imag_fraction_identity():
    w = np.linspace(0.01, 5, 300)
    m, w0, g = 1.3, 1.1, 0.2
    chi = ms.chi_mech(ms.MechanicalSusceptibility(m, w0, g), w)
    want = g * w / np.sqrt((w0**2 - w**2) ** 2 + g**2 * w**2)
    assert np.allclose(np.abs(chi.imag) / np.abs(chi), want, rtol=1e-12)


def test_far_from_resonance():
    s = ms.MechanicalSusceptibility(1.0, 1.0, 1e-3)
    assert ms.uql_bound(s, 10.0) < 1e-3 * ms.sql_bound(s, 10.0)


@given(st.floats(1e-3, 1e3), st.floats(0, 10), st.floats(1e-3, 10), st.floats(1e-3, 20))
def test_uql_below_sql(m, w0, g, w):
    s = ms.MechanicalSusceptibility(m, w0, g)
    assert ms.uql_bound(s, w) <= ms.sql_bound(s, w)


@given(st.floats(0.1, 10), st.floats(0.1, 10))
def test_bounds_scale_inverse_mass(m, w):
    s1, s2 = ms.MechanicalSusceptibility(1.0, 1.0, 0.3), ms.MechanicalSusceptibility(m, 1.0, 0.3)
    assert ms.sql_bound(s2, w) * m == pytest.approx(ms.sql_bound(s1, w), rel=1e-12)
    assert ms.uql_bound(s2, w) * m == pytest.approx(ms.uql_bound(s1, w), rel=1e-12)


def test_vacuum_probe_optimum_is_sql():
    for w in (0.2, 0.9, 1.0, 3.0):
        K0 = ms.sql_wavevector(S, w)
        noise = ms.measured_position_noise(ms.ProbeState.vacuum(K0), S, w)
        assert noise == pytest.approx(ms.sql_bound(S, w), rel=1e-12)
        # any other K0 is worse
        for f in (0.5, 2.0):
            assert ms.measured_position_noise(ms.ProbeState.vacuum(f * K0), S, w) > noise


def test_uncorrelated_squeezed_floor():
    # σ_φI = 0 with optimized K₀ gives 2ħ|χ|√(σ_φφσ_II) ≥ ħ|χ|
    for spp, sii in [(0.5, 0.5), (2.0, 0.2), (1.0, 1.0)]:
        K0 = ms.sql_wavevector(S, 0.7, sigma_phiphi=spp, sigma_II=sii)
        noise = ms.measured_position_noise(ms.ProbeState(K0, spp, sii), S, 0.7)
        assert noise == pytest.approx(2 * abs(ms.chi_mech(S, 0.7)) * math.sqrt(spp * sii), rel=1e-12)
        assert noise >= ms.sql_bound(S, 0.7) * (1 - 1e-12)


@pytest.mark.parametrize("w", [0.3, 0.95, 1.0, 1.2, 4.0])
def test_random_probes_above_uql(w, rng):
    uql = ms.uql_bound(S, w)
    for _ in range(1000):
        p = ms.random_admissible_probe(rng)
        assert ms.measured_position_noise(p, S, w) >= uql * (1 - 1e-9)


@pytest.mark.parametrize("w", [0.3, 0.95, 1.2, 4.0])
def test_optimizer_matches_grid_search(w):
    # oracle: brute-force over (squeezing angle, squeeze) for pure states, K₀ analytic
    chi = complex(ms.chi_mech(S, w))
    best = math.inf
    for r in np.linspace(0, 8, 161):
        for th in np.linspace(-math.pi / 2, math.pi / 2, 721):
            best = min(best, ms._capped_noise(chi, r, th, 1.0)[0])
    probe = ms.optimize_probe(S, w)
    got = ms.measured_position_noise(probe, S, w)
    assert got <= best * (1 + 1e-6)
    assert got == pytest.approx(ms.uql_bound(S, w), rel=1e-6)
    assert probe.is_admissible()


def test_optimizer_zero_frequency_capped():
    s = ms.MechanicalSusceptibility(1.0, 1.0, 0.1)
    p60 = ms.optimize_probe(s, 0.0)
    p30 = ms.optimize_probe(s, 0.0, cap_db=30.0)
    n60 = ms.measured_position_noise(p60, s, 0.0)
    n30 = ms.measured_position_noise(p30, s, 0.0)
    assert p60.squeezing_db == pytest.approx(60.0, abs=1e-3)
    assert 0 < n60 < n30 < ms.sql_bound(s, 0.0)
    assert n60 == pytest.approx(1e-6 * ms.sql_bound(s, 0.0), rel=1e-2)
