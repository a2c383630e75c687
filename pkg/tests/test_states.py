import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from conecollapse.cone import ConeGeometry
from conecollapse.errors import DomainError
from conecollapse.specfun import ImaginaryOrderTriple
from conecollapse.states import (
    BoundState,
    ZpieForm,
    approx_bound_energy,
    bound_large_r_form,
    bound_mean_radius,
    bound_spectrum,
    bound_states,
    bound_turning_radius,
    bound_wavefunction,
    collapse_state,
    collapse_wavefunction,
    plane_ldos_hole_free,
    plane_state,
    radial_residual,
    scattering_large_e_density,
    scattering_state,
    scattering_wavefunction,
)

G16 = ConeGeometry(1 / 6)


# ------------------------------------------------------------------ bound states

def test_ground_state_energy():
    (n, exact, approx), = bound_spectrum(G16, 1, 1)
    assert n == 1
    assert abs(exact / -1.0 - 1) < 0.05
    # Independent evaluation of the small-energy formula with mpmath's arg Gamma.
    at = G16.tilde_alpha
    phi0 = float(mpmath.arg(mpmath.gamma(1 + 1j * at)))
    ref = -4 * math.exp(2 * (-math.pi + phi0) / at)
    assert math.isclose(approx, ref, rel_tol=1e-12)
    assert math.isclose(approx, -0.945, abs_tol=5e-4)


def test_spectrum_accumulates_at_zero_from_below():
    levels = [e for _, e, _ in bound_spectrum(G16, 1, 8)]
    assert all(e < 0 for e in levels)
    assert all(a < b for a, b in zip(levels, levels[1:]))
    law = math.exp(-2 * math.pi / G16.tilde_alpha)
    assert math.isclose(levels[-1] / levels[-2], law, rel_tol=1e-6)


def test_small_alpha_warns():
    with pytest.warns(RuntimeWarning):
        bound_spectrum(ConeGeometry(0.1), 1, 2)


def test_bound_boundary_and_normalisation():
    st_ = bound_states(G16, 1, 2)[0]
    assert isinstance(st_, BoundState)
    scale = ImaginaryOrderTriple(G16.tilde_alpha).M / G16.tilde_alpha
    assert abs(st_.psi(1.0)) < 1e-9 * scale
    kappa = math.sqrt(-st_.epsilon)
    val, _ = integrate.quad(lambda r: bound_wavefunction(G16, st_.epsilon, r, normalized=True) ** 2 * r,
                            1.0, 1.0 + 60.0 / kappa, limit=400)
    assert math.isclose(val, 1.0, rel_tol=1e-8)


def test_bound_mean_radius_inside_turning_point():
    e1 = bound_spectrum(G16, 1, 1)[0][1]
    assert bound_mean_radius(G16, e1) < bound_turning_radius(G16, e1)


def test_bound_large_r_decay():
    e1 = bound_spectrum(G16, 1, 1)[0][1]
    r = 30.0
    x = math.sqrt(-e1) * r
    ratio = bound_wavefunction(G16, e1, r) / bound_large_r_form(G16, e1, r)
    # The leading form misses the Hankel corrections sum_k a_k / x^k, a_k =
    # prod_{j<=k} (4 mu^2 - (2j-1)^2) / (k! 8^k), which are 15% at this x.
    four_mu_sq = -4 * G16.tilde_alpha ** 2
    corrected, term = 1.0, 1.0
    for k in range(1, 6):
        term *= (four_mu_sq - (2 * k - 1) ** 2) / (k * 8 * x)
        corrected += term
    assert abs(ratio - corrected) < 1e-3
    far = [bound_wavefunction(G16, e1, r) / bound_large_r_form(G16, e1, r) for r in (100.0, 300.0)]
    assert abs(far[1] - 1) < abs(far[0] - 1) < abs(ratio - 1)


def test_bound_domain():
    with pytest.raises(DomainError):
        bound_wavefunction(G16, 0.5, 2.0)
    with pytest.raises(DomainError):
        bound_wavefunction(G16, -1.0, 0.5)


def test_approx_energy_formula():
    g = ConeGeometry(0.5)
    assert approx_bound_energy(g, 2) / approx_bound_energy(g, 1) == pytest.approx(
        math.exp(-2 * math.pi / g.tilde_alpha), rel=1e-13)


# ------------------------------------------------------------------ collapse states

def test_zpie_constants():
    for a in (0.1, 0.5, 0.9):
        z = ZpieForm(ConeGeometry(a).tilde_alpha)
        assert z.B > z.C > 0


@pytest.mark.parametrize("alpha", [0.3, 0.5, 5 / 6])
def test_collapse_state_tends_to_near_zero_form(alpha):
    g = ConeGeometry(alpha)
    z = ZpieForm(g.tilde_alpha)
    eps = 1e-14
    rs = np.linspace(1.0, 20.0, 40)
    psi = collapse_state(g, eps).psi(rs)
    ref = z.psi(eps, rs)
    assert np.max(np.abs(psi ** 2 - ref ** 2)) < 1e-5 * np.max(ref ** 2)


def test_near_zero_form_is_log_periodic_in_r():
    g = ConeGeometry(0.5)
    z = ZpieForm(g.tilde_alpha)
    period = 2 * math.pi / g.tilde_alpha
    r = 1.7
    assert math.isclose(z.psi(1e-10, r), z.psi(1e-10, r * math.exp(period)), rel_tol=1e-12)


def test_collapse_far_field_envelope():
    g = ConeGeometry(0.5)
    eps = 1.0
    rs = np.linspace(30.0, 60.0, 3000)
    dens = collapse_state(g, eps).psi(rs) ** 2
    env = 2 / (math.pi * math.sqrt(eps) * rs)
    assert np.all(dens <= env * 1.02)
    assert np.max(dens / env) > 0.98


def test_collapse_domain():
    with pytest.raises(DomainError):
        collapse_state(G16, -1.0)


def test_collapse_wavefunction_returns_coefficients():
    psi, (a, b) = collapse_wavefunction(ConeGeometry(0.5), 0.3, [1.0, 2.0])
    assert psi[0] == pytest.approx(0.0, abs=1e-15)
    assert a >= 0 and math.isclose(a * a + b * b, 1.0, rel_tol=1e-15)


# ------------------------------------------------------------------ scattering states

def test_scattering_boundary_example():
    g = ConeGeometry(5 / 6)
    assert abs(scattering_state(g, 1, 0.5).psi(1.0)) < 1e-15


def test_scattering_large_energy_limit():
    g = ConeGeometry(5 / 6)
    eps = 1e6
    rs = np.linspace(2.0, 3.0, 500)
    dens = scattering_state(g, 2, eps).psi(rs) ** 2
    ref = scattering_large_e_density(eps, rs)
    assert np.max(np.abs(dens - ref)) < 0.02 * np.max(ref)


def test_scattering_small_energy_power_law():
    g = ConeGeometry(5 / 6)
    eps, r, l = 1e-12, 3.0, 1
    nu = g.tilde_nu(l)
    k = math.sqrt(eps)
    # J_nu(x) ~ (x/2)^nu / Gamma(nu+1) and Y_nu(x) ~ -Gamma(nu)/pi (2/x)^nu.
    ref = (k / 2) ** nu / math.gamma(nu + 1) * (r ** nu - r ** -nu)
    psi = scattering_state(g, l, eps).psi(r)
    assert math.isclose(abs(psi), ref, rel_tol=1e-6)


def test_scattering_domain():
    g = ConeGeometry(0.5)
    with pytest.raises(DomainError):
        scattering_state(g, 0, 1.0)
    with pytest.raises(DomainError):
        scattering_state(g, 1, -1.0)


def test_y_cutoff_mode_keeps_wall():
    g = ConeGeometry(0.5)
    st_ = scattering_state(g, 3, 1e-6, paper_y_cutoff=True)
    assert st_.psi(1.0) == pytest.approx(0.0, abs=1e-15)
    assert math.isclose(st_.A ** 2 + st_.B ** 2, 1.0, rel_tol=1e-14)


def test_y_cutoff_agrees_when_inactive():
    g = ConeGeometry(0.5)
    a = scattering_state(g, 1, 4.0).psi([1.5, 3.0])
    b = scattering_state(g, 1, 4.0, paper_y_cutoff=True).psi([1.5, 3.0])
    assert np.allclose(a, b, rtol=1e-13, atol=1e-15)


# ------------------------------------------------------------------ plane limit

@pytest.mark.parametrize("x", [0.0, 0.3, 2.0, 7.5, 10.0])
def test_bessel_sum_rule(x):
    assert abs(plane_ldos_hole_free(x) - 1.0) < 1e-12


def test_collapse_state_approaches_plane_state():
    g = ConeGeometry(0.99)
    rs = np.linspace(1.0, 20.0, 200)
    a = collapse_state(g, 1.0).psi(rs)
    b = plane_state(0, 1.0).psi(rs)
    dev = min(np.max(np.abs(a - b)), np.max(np.abs(a + b)))
    assert dev < 0.05


def test_scattering_state_approaches_plane_state():
    g = ConeGeometry(1 - 1e-9)
    rs = np.linspace(1.0, 10.0, 50)
    a = scattering_state(g, 2, 2.0).psi(rs)
    b = plane_state(2, 2.0).psi(rs)
    assert np.max(np.abs(a - b)) < 1e-6


# ------------------------------------------------------------------ randomized sweeps

alphas = st.floats(min_value=0.05, max_value=0.99)
energies = st.floats(min_value=1e-10, max_value=1e3)


@settings(max_examples=300, deadline=None)
@given(alphas, energies, st.integers(min_value=0, max_value=60), st.booleans())
def test_boundary_and_normalisation(alpha, eps, l, cutoff):
    g = ConeGeometry(alpha)
    st_ = collapse_state(g, eps) if l == 0 else scattering_state(g, l, eps, paper_y_cutoff=cutoff)
    assert abs(st_.psi(1.0)) < 1e-12
    assert abs(st_.A ** 2 + st_.B ** 2 - 1.0) < 1e-14
    assert st_.A >= 0


@settings(max_examples=150, deadline=None)
@given(alphas, st.floats(min_value=1e-6, max_value=1e2), st.integers(min_value=0, max_value=20),
       st.floats(min_value=1.0, max_value=50.0))
def test_radial_equation_residual(alpha, eps, l, r):
    g = ConeGeometry(alpha)
    st_ = collapse_state(g, eps) if l == 0 else scattering_state(g, l, eps)
    assert radial_residual(st_, r) < 1e-7


def test_bound_radial_residual():
    st_ = bound_states(G16, 1, 3)
    for s in st_:
        for r in (1.5, 3.0, 10.0):
            assert radial_residual(s, r) < 1e-7


def test_scattering_wavefunction_returns_coefficients():
    psi, (a, b) = scattering_wavefunction(ConeGeometry(0.4), 2, 0.7, [1.0, 4.0])
    assert psi[0] == pytest.approx(0.0, abs=1e-15)
    assert math.isclose(a * a + b * b, 1.0, rel_tol=1e-14)
