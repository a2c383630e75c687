import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecollapse.cone import (
    ConeGeometry,
    GrapheneMapping,
    closure_rho0,
    dirac_dispersion,
    effective_radial_potential,
    gauss_bonnet_deficit,
    geometric_potential,
    geometric_potential_eV,
    observation_radius,
    tilde_alpha,
    tilde_nu,
    tilde_nu_sq,
)
from conecollapse.errors import DomainError

alphas = st.floats(min_value=1e-3, max_value=1.0 - 1e-9, exclude_max=True)


def test_closure_radius_matches_hand_arithmetic():
    # hbar / sqrt(2 m_e * 1 eV) with CODATA 2018 values typed in by hand.
    hbar, me, ev = 1.054571817e-34, 9.1093837015e-31, 1.602176634e-19
    ref = hbar / math.sqrt(2 * me * ev) / 1e-10
    assert math.isclose(closure_rho0(), ref, rel_tol=1e-9)
    assert math.isclose(ConeGeometry(0.5).closure(), 1.0, rel_tol=1e-12)


def test_closure_radius_near_quoted_value():
    # Quoted as about 1.93 angstrom; exact arithmetic gives 1.952.
    assert abs(closure_rho0() / 1.93 - 1) < 0.02


def test_tilde_alpha_values():
    assert math.isclose(tilde_alpha(0.5), math.sqrt(3) / 2, rel_tol=1e-15)
    assert math.isclose(tilde_alpha(1 / 6), math.sqrt(35) / 2, rel_tol=1e-15)
    assert math.isclose(tilde_alpha(0.99), 0.0712, abs_tol=5e-5)


def test_alpha_domain():
    for a in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(DomainError):
            ConeGeometry(a)
    with pytest.raises(DomainError):
        ConeGeometry(0.5, rho0=-1.0)
    with pytest.raises(DomainError):
        tilde_nu(0.5, 0)


def test_effective_potential_examples():
    g = ConeGeometry(0.5)
    assert math.isclose(effective_radial_potential(g, 0, 1.0), -0.75, rel_tol=1e-15)
    assert math.isclose(effective_radial_potential(g, 1, 1.0), 3.25, rel_tol=1e-15)
    assert abs(effective_radial_potential(ConeGeometry(1 - 1e-12), 0, 3.0)) < 1e-11


def test_geometric_potential_examples():
    assert math.isclose(geometric_potential(ConeGeometry(1 / 6), 1.0), -35 / 4, rel_tol=1e-14)
    g = ConeGeometry(0.3)
    assert math.isclose(geometric_potential(g, 2.0) / geometric_potential(g, 1.0), 0.25, rel_tol=1e-15)
    assert abs(geometric_potential(ConeGeometry(1 - 1e-12), 1.0)) < 1e-11
    with pytest.raises(DomainError):
        geometric_potential(g, 0.5)


def test_geometric_potential_in_ev_uses_closure_unit():
    g = ConeGeometry(0.5)
    # With the closure radius the energy unit is exactly E0 = 1 eV.
    assert math.isclose(geometric_potential_eV(g, g.rho0_angstrom), -0.75, rel_tol=1e-12)


def test_observation_radius():
    g = ConeGeometry(0.5)
    r = observation_radius(g)
    assert math.isclose(r, 6.13, abs_tol=0.01)
    assert math.isclose(math.sin(g.tilde_alpha * math.log(r)) ** 2, 1.0, rel_tol=1e-14)
    rs = [observation_radius(ConeGeometry(a)) for a in (0.3, 0.5, 0.7, 0.9, 0.99)]
    assert all(a < b for a, b in zip(rs, rs[1:]))


def test_graphene_mapping_window():
    m = GrapheneMapping()
    assert math.isclose(m.gap_tilde, 0.05, rel_tol=1e-15)
    assert math.isclose(m.k_tilde(1e-6), 10 ** -3.5, rel_tol=1e-12)
    assert math.isclose(m.k_tilde(1e-3), 1e-2, rel_tol=1e-12)
    assert math.isclose(m.energy_window_ueV(1e-6), 2.0, rel_tol=1e-12)
    assert math.isclose(m.energy_window_ueV(1e-3), 2000.0, rel_tol=1e-12)
    assert math.isclose(m.xi0_nm, 1.0, rel_tol=0.1)
    assert math.isclose(m.closure(), 1.0, rel_tol=1e-12)


def test_graphene_mapping_domain():
    with pytest.raises(DomainError):
        GrapheneMapping(gap=-0.1)
    with pytest.raises(DomainError):
        GrapheneMapping(gap=3.0, energy_unit=2.0)
    with pytest.raises(DomainError):
        GrapheneMapping().k_tilde(-1.0)


def test_dirac_dispersion_tangent_at_origin():
    m = GrapheneMapping()
    assert dirac_dispersion(m, 0.0) == (0.05, 0.0)
    k = np.linspace(0, 1e-3, 11)
    eps, delta = dirac_dispersion(m, k)
    # Same value and curvature at k = 0; the gap differs at fourth order.
    assert np.all(np.abs(eps - (m.gap_tilde + delta)) <= k ** 4 / (8 * m.gap_tilde ** 3) * 1.001 + 1e-17)
    with pytest.raises(DomainError):
        dirac_dispersion(m, -0.1)


@settings(max_examples=200, deadline=None)
@given(alphas)
def test_channel_orders(alpha):
    ta = tilde_alpha(alpha)
    assert math.isclose(tilde_nu_sq(alpha, 0), -ta * ta, rel_tol=1e-12, abs_tol=1e-300)
    for l in (1, 2, 5, -3):
        assert tilde_nu_sq(alpha, l) > 0
        assert tilde_nu(alpha, l) >= abs(l) * math.sqrt(0.75)


def test_tilde_nu_tends_to_l():
    for l in (1, 2, 7):
        assert math.isclose(tilde_nu(1 - 1e-10, l), l, rel_tol=1e-9)


@settings(max_examples=100, deadline=None)
@given(alphas, st.floats(min_value=0.1, max_value=100.0))
def test_gauss_bonnet(alpha, rho):
    g = ConeGeometry(alpha)
    assert 0.0 < g.gaussian_deficit < 2 * math.pi
    # The quadrature route subtracts from 2 pi, so its error is absolute, a few ulps of 2 pi.
    assert math.isclose(gauss_bonnet_deficit(g, rho), g.gaussian_deficit, rel_tol=1e-12, abs_tol=1e-14)


@settings(max_examples=100, deadline=None)
@given(alphas, st.floats(min_value=1.0, max_value=1e3))
def test_curvatures(alpha, rho):
    g = ConeGeometry(alpha)
    k1, k1n, k2, k2n = g.principal_curvatures(rho)
    assert k2 == 0.0 and k2n == 0.0
    assert math.isclose(g.mean_curvature(rho), 0.5 * k1n, rel_tol=1e-14)
    # V_G = -(M_curv^2 - K_gauss) with zero Gaussian curvature away from the apex.
    assert math.isclose(geometric_potential(g, max(rho, 1.0)), -g.mean_curvature(max(rho, 1.0)) ** 2,
                        rel_tol=1e-12)


def test_mean_curvature_vanishes_for_flat_sheet():
    assert ConeGeometry(1 - 1e-14).mean_curvature(1.0) < 1e-6
