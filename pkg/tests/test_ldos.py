import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecollapse.cone import ConeGeometry
from conecollapse.errors import DomainError, InsufficientResolution
from conecollapse.ldos import (
    average_ldos,
    channel_terms,
    describe_oscillation,
    find_extrema,
    ldos_asymptotic_large_e,
    ldos_grid,
    ldos_point,
    ldos_profile,
    log_energies,
    near_zero_profile,
    near_zero_scan,
    numeric_average_ldos,
    resolve_workers,
)
from conecollapse.states import ZpieForm, collapse_state, plane_state, scattering_state


def test_channel_bookkeeping():
    g = ConeGeometry(0.5)
    eps, rs = 0.7, np.array([1.5, 4.0])
    terms = channel_terms(g, eps, rs, l_max=5, truncate=False)
    assert terms.shape == (6, 2)
    assert np.allclose(terms[0], collapse_state(g, eps).psi(rs) ** 2, rtol=1e-15)
    assert np.allclose(terms[3], scattering_state(g, 3, eps).psi(rs) ** 2, rtol=1e-15)
    tot, l0, rest = ldos_profile(g, eps, rs, l_max=5, truncate=False)
    assert np.allclose(tot, terms[0] + 2 * terms[1:].sum(axis=0), rtol=1e-15)
    assert np.array_equal(l0, terms[0])


def test_truncation_does_not_change_result():
    g = ConeGeometry(5 / 6)
    for eps in (1e-9, 0.01, 3.0):
        a = ldos_profile(g, eps, [1.5, 3.0, 10.0], truncate=True)[0]
        b = ldos_profile(g, eps, [1.5, 3.0, 10.0], truncate=False)[0]
        assert np.allclose(a, b, rtol=1e-15, atol=0)


def test_flat_limit_matches_plane_with_hole():
    g = ConeGeometry(1 - 1e-10)
    eps, r = 1.0, 10.0
    plane = plane_state(0, eps).psi(r) ** 2 + sum(2 * plane_state(l, eps).psi(r) ** 2 for l in range(1, 51))
    assert math.isclose(ldos_point(g, eps, r)[0], plane, rel_tol=1e-6)


def test_y_cutoff_changes_little():
    g = ConeGeometry(5 / 6)
    for eps in (1e-6, 1.0):
        a = ldos_point(g, eps, 3.0)[0]
        b = ldos_point(g, eps, 3.0, paper_y_cutoff=True)[0]
        assert abs(a / b - 1) < 1e-5


def test_input_validation():
    g = ConeGeometry(0.5)
    with pytest.raises(DomainError):
        ldos_point(g, -1.0, 2.0)
    with pytest.raises(DomainError):
        ldos_point(g, 1.0, 0.5)
    with pytest.raises(DomainError):
        ldos_point(g, 1.0, 2.0, l_max=0)
    with pytest.raises(DomainError):
        log_energies(1.0, 0.5)
    with pytest.raises(DomainError):
        near_zero_scan(g, 2.0, (1e-6, 1e-2))
    with pytest.raises(DomainError):
        near_zero_scan(g, 2.0, (1e-9, 1e-6), part="rest")
    with pytest.raises(DomainError):
        average_ldos(g, 0.5)


def test_log_energies():
    e = log_energies(1e-6, 1e-3, 10)
    assert e.size == 31
    assert math.isclose(e[0], 1e-6) and math.isclose(e[-1], 1e-3)
    assert np.allclose(np.diff(np.log10(e)), 0.1)


def test_grid_is_independent_of_worker_count():
    g = ConeGeometry(0.5)
    eps = log_energies(1e-4, 1.0, 4)
    rs = [1.5, 5.0]
    a = ldos_grid(g, eps, rs, l_max=20, workers=1)
    b = ldos_grid(g, eps, rs, l_max=20, workers=3)
    assert np.array_equal(a.values_total, b.values_total)
    assert np.array_equal(a.values_l0, b.values_l0)
    assert np.array_equal(a.values_lneq0, b.values_lneq0)


def test_worker_resolution(monkeypatch):
    monkeypatch.setenv("CONECOLLAPSE_THREADS", "4")
    assert resolve_workers(None) == 4
    assert resolve_workers(2) == 2
    monkeypatch.delenv("CONECOLLAPSE_THREADS")
    assert resolve_workers(None) == 1
    with pytest.raises(DomainError):
        resolve_workers(0)


def test_large_energy_forms():
    g = ConeGeometry(0.5)
    base, conv = ldos_asymptotic_large_e(g, 4.0, 3.0, l_max=50)
    assert math.isclose(base, 2 / (math.pi * 2 * 3))
    assert math.isclose(conv, 100 * base * math.sin(2 * (1 - 3)) ** 2)


# ------------------------------------------------------------------ oscillation analysis

def test_find_extrema_on_known_curve():
    u = np.linspace(0, 10, 401)
    y = np.cos(u)
    ext = find_extrema(u, y)
    pos = [e[0] for e in ext]
    assert np.allclose(pos, [math.pi, 2 * math.pi, 3 * math.pi], atol=1e-4)
    assert [e[2] for e in ext] == ["min", "max", "min"]


def test_describe_oscillation_on_synthetic_log_periodic_signal():
    ta = 0.8
    u = np.linspace(-20, -5, 3000)  # ln sqrt(eps)
    y = 1.0 / (2.0 - np.cos(ta * u + 0.3) ** 2)
    d = describe_oscillation(u, y, (math.exp(-40), math.exp(-10)))
    assert math.isclose(d.period_in_log_sqrt_eps, math.pi / ta, rel_tol=1e-4)
    assert math.isclose(d.maximum, 1.0, rel_tol=1e-6)
    assert math.isclose(d.minimum, 0.5, rel_tol=1e-6)
    assert math.isclose(d.mean_level, 0.75, rel_tol=1e-6)


def test_too_few_extrema():
    u = np.linspace(0, 4, 50)
    with pytest.raises(InsufficientResolution):
        describe_oscillation(u, np.sin(u), (1e-9, 1e-6))


def test_near_zero_profile_period():
    g = ConeGeometry(0.5)
    d = near_zero_profile(g, 6.0, (1e-12, 1e-6), points_per_decade=32)
    assert len(d.extrema) >= 3
    assert math.isclose(d.period_in_log_sqrt_eps, math.pi / g.tilde_alpha, rel_tol=0.01)


def test_average_matches_midpoint_of_near_zero_form():
    # Brute force over one full phase period of the closed form.
    g = ConeGeometry(2 / 3)
    z = ZpieForm(g.tilde_alpha)
    r = 4.0
    eps = np.exp(np.linspace(-60, -60 + 4 * math.pi / g.tilde_alpha, 20001))
    dens = np.array([z.density(e, r) for e in eps])
    assert math.isclose(average_ldos(g, r), 0.5 * (dens.max() + dens.min()), rel_tol=1e-8)


def test_numeric_average_matches_closed_form():
    g = ConeGeometry(0.5)
    for r in (2.0, 6.0):
        assert math.isclose(numeric_average_ldos(g, r), average_ldos(g, r), rel_tol=0.02)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.99), st.floats(min_value=1e-8, max_value=50.0),
       st.floats(min_value=1.0, max_value=30.0))
def test_ldos_is_nonnegative_and_vanishes_at_wall(alpha, eps, r):
    g = ConeGeometry(alpha)
    tot, l0, rest = ldos_point(g, eps, r, l_max=20)
    assert tot >= 0 and l0 >= 0 and rest >= 0
    assert math.isclose(tot, l0 + rest, rel_tol=1e-15)
    assert ldos_point(g, eps, 1.0, l_max=20)[0] < 1e-28
