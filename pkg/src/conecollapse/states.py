"""Eigenstates on the truncated cone: bound, collapse and conventional scattering.

All states vanish at the wall r = 1. Coefficient pairs (A, B) are normalised to
A^2 + B^2 = 1 and carry the overall sign that makes A >= 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate

from conecollapse.cone import ConeGeometry
from conecollapse.errors import DomainError
from conecollapse.specfun import (
    DEFAULT_POLICY,
    SeriesPolicy,
    arg_gamma_continuous,
    bessel_jy_log,
    fg_inu,
    find_k_inu_zeros,
    k_inu,
    k_inu_eval,
)

Y_CAP = 100.0
EQ15_VALID_ALPHA = 0.15


def _as_r(r):
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 1.0):
        raise DomainError("r must be >= 1")
    return arr


def _map(fn, r):
    arr = _as_r(r)
    out = np.array([fn(float(v)) for v in arr.ravel()], dtype=float).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


# ------------------------------------------------------------------ bound

@dataclass(frozen=True)
class BoundState:
    geom: ConeGeometry
    n: int
    epsilon: float
    epsilon_approx: float
    l: int = 0

    kind = "Bound"

    def psi(self, r, normalized: bool = False):
        return bound_wavefunction(self.geom, self.epsilon, r, normalized=normalized)

    def psi_derivatives(self, r: float) -> tuple[float, float, float]:
        return bound_psi_derivatives(self.geom, self.epsilon, r)


def approx_bound_energy(geom: ConeGeometry, n: int) -> float:
    """eps_n ~ -4 exp(2(-n pi + phi_0)/alpha~), valid for eps -> 0-."""
    at = geom.tilde_alpha
    return -4.0 * math.exp(2.0 * (-n * math.pi + arg_gamma_continuous(0, at)) / at)


def bound_spectrum(
    geom: ConeGeometry, n_from: int, n_to: int, policy: SeriesPolicy = DEFAULT_POLICY
) -> list[tuple[int, float, float]]:
    """(n, exact eps_n, approximate eps_n) for n_from..n_to."""
    if geom.alpha < EQ15_VALID_ALPHA:
        warnings.warn(
            f"alpha={geom.alpha} < {EQ15_VALID_ALPHA}: the small-energy spectrum formula "
            "is unreliable and seeds may mislabel levels",
            RuntimeWarning,
            stacklevel=2,
        )
    roots = find_k_inu_zeros(geom.tilde_alpha, n_from, n_to, policy)
    return [
        (n, -x * x, approx_bound_energy(geom, n)) for n, x in zip(range(n_from, n_to + 1), roots)
    ]


def bound_states(geom: ConeGeometry, n_from: int, n_to: int) -> list[BoundState]:
    return [BoundState(geom, n, e, a) for n, e, a in bound_spectrum(geom, n_from, n_to)]


def _bound_norm(geom: ConeGeometry, epsilon: float) -> float:
    kappa = math.sqrt(-epsilon)
    nu = geom.tilde_alpha
    f = lambda r: k_inu(nu, kappa * r) ** 2 * r
    upper = 1.0 + 60.0 / kappa
    val, _ = integrate.quad(f, 1.0, upper, limit=400, epsabs=0.0, epsrel=1e-11)
    return 1.0 / math.sqrt(val)


def bound_wavefunction(geom: ConeGeometry, epsilon: float, r, normalized: bool = False):
    """K_{i alpha~}(sqrt(-eps) r); optionally normalised with weight r dr on [1, inf)."""
    if not epsilon < 0:
        raise DomainError("bound states need eps < 0")
    kappa = math.sqrt(-epsilon)
    nu = geom.tilde_alpha
    scale = _bound_norm(geom, epsilon) if normalized else 1.0
    return _map(lambda v: scale * k_inu(nu, kappa * v), r)


def bound_mean_radius(geom: ConeGeometry, epsilon: float) -> float:
    """<r> = int psi^2 r^2 dr / int psi^2 r dr."""
    kappa = math.sqrt(-epsilon)
    nu = geom.tilde_alpha
    upper = 1.0 + 60.0 / kappa
    num, _ = integrate.quad(lambda r: k_inu(nu, kappa * r) ** 2 * r * r, 1.0, upper, limit=400)
    den, _ = integrate.quad(lambda r: k_inu(nu, kappa * r) ** 2 * r, 1.0, upper, limit=400)
    return num / den


def bound_turning_radius(geom: ConeGeometry, epsilon: float) -> float:
    """Radius where -alpha~^2/r^2 = eps."""
    return geom.tilde_alpha / math.sqrt(-epsilon)


def bound_large_r_form(geom: ConeGeometry, epsilon: float, r):
    """sqrt(pi / (2 x)) e^{-x} with x = sqrt(-eps) r."""
    x = math.sqrt(-epsilon) * _as_r(r)
    return np.sqrt(np.pi / (2.0 * x)) * np.exp(-x)


# ------------------------------------------------------------------ collapse

@dataclass(frozen=True)
class ZpieForm:
    """Near-zero-energy constants of the collapse state."""

    tilde_alpha: float

    @property
    def A(self) -> float:
        return -math.sqrt(2.0 / (self.tilde_alpha * math.pi))

    @property
    def B(self) -> float:
        return 1.0 / math.tanh(0.5 * self.tilde_alpha * math.pi)

    @property
    def C(self) -> float:
        return 2.0 / math.sinh(self.tilde_alpha * math.pi)

    @property
    def phi0(self) -> float:
        return arg_gamma_continuous(0, self.tilde_alpha)

    def psi(self, epsilon: float, r):
        """A sin(alpha~ ln r) / sqrt(B - C cos^2(alpha~ ln(sqrt(eps)/2) - phi0))."""
        r = _as_r(r)
        c = math.cos(self.tilde_alpha * math.log(0.5 * math.sqrt(epsilon)) - self.phi0)
        return self.A * np.sin(self.tilde_alpha * np.log(r)) / math.sqrt(self.B - self.C * c * c)

    def density(self, epsilon: float, r):
        return self.psi(epsilon, r) ** 2


@dataclass(frozen=True)
class CollapseState:
    geom: ConeGeometry
    epsilon: float
    A: float
    B: float
    policy: SeriesPolicy = DEFAULT_POLICY
    l: int = 0

    kind = "Collapse"

    def psi(self, r):
        nu = self.geom.tilde_alpha
        k = math.sqrt(self.epsilon)

        def one(v: float) -> float:
            f, g = fg_inu(nu, k * v, self.policy)
            return self.A * f.value - self.B * g.value

        return _map(one, r)

    def psi_derivatives(self, r: float) -> tuple[float, float, float]:
        """psi, d psi/dr, d^2 psi/dr^2 at one radius."""
        nu = self.geom.tilde_alpha
        k = math.sqrt(self.epsilon)
        f, g = fg_inu(nu, k * r, self.policy)
        return (
            self.A * f.value - self.B * g.value,
            k * (self.A * f.d1 - self.B * g.d1),
            k * k * (self.A * f.d2 - self.B * g.d2),
        )


def collapse_state(geom: ConeGeometry, epsilon: float, policy: SeriesPolicy = DEFAULT_POLICY) -> CollapseState:
    if not epsilon > 0:
        raise DomainError("collapse states need eps > 0")
    f, g = fg_inu(geom.tilde_alpha, math.sqrt(epsilon), policy)
    norm = math.hypot(f.value, g.value)
    a = g.value / norm
    b = f.value / norm
    if a < 0:
        a, b = -a, -b
    return CollapseState(geom, epsilon, a, b, policy)


def collapse_wavefunction(geom: ConeGeometry, epsilon: float, r, policy: SeriesPolicy = DEFAULT_POLICY):
    """(psi(r), (A, B)) for the l = 0 positive-energy state."""
    st = collapse_state(geom, epsilon, policy)
    return st.psi(r), (st.A, st.B)


# ------------------------------------------------------------------ scattering

@dataclass(frozen=True)
class ScatteringState:
    """Conventional state of channel l; coefficients kept in log form.

    A = |Y(k)|/N and B = sign * J(k)/N with N = hypot(J(k), Y(k)); the logs
    avoid overflow of Y at small k.
    """

    geom: ConeGeometry | None
    l: int
    epsilon: float
    nu: float
    sA: float
    lA: float
    sB: float
    lB: float
    paper_y_cutoff: bool = False
    policy: SeriesPolicy = DEFAULT_POLICY

    kind = "Scattering"

    @property
    def A(self) -> float:
        return self.sA * math.exp(self.lA)

    @property
    def B(self) -> float:
        return self.sB * math.exp(self.lB) if self.lB > -745.0 else 0.0 * self.sB

    def _one(self, v: float) -> float:
        jy = bessel_jy_log(self.nu, math.sqrt(self.epsilon) * v, self.policy)
        if self.paper_y_cutoff:
            y = _capped_y(jy)
            return self.A * jy.j - self.B * y
        t1 = self.sA * jy.sj * math.exp(self.lA + jy.lj) if jy.sj else 0.0
        t2 = self.sB * jy.sy * math.exp(self.lB + jy.ly) if self.sB else 0.0
        return t1 - t2

    def psi(self, r):
        return _map(self._one, r)

    def psi_derivatives(self, r: float) -> tuple[float, float, float]:
        """psi, psi', psi'' at one radius from the Bessel equation of order nu."""
        k = math.sqrt(self.epsilon)
        x = k * r
        jy = bessel_jy_log(self.nu, x, self.policy)
        aj = self.sA * jy.sj * math.exp(self.lA + jy.lj) if jy.sj else 0.0
        by = self.sB * jy.sy * math.exp(self.lB + jy.ly) if self.sB else 0.0
        psi = aj - by
        dpsi_dx = aj * jy.dj - by * jy.dy
        d2_dx2 = -dpsi_dx / x - (1.0 - self.nu ** 2 / (x * x)) * psi
        return psi, k * dpsi_dx, k * k * d2_dx2


def _capped_y(jy) -> float:
    if jy.ly > math.log(Y_CAP):
        return math.copysign(Y_CAP, jy.sy)
    return jy.y


def _scattering(geom, l, nu, epsilon, paper_y_cutoff, policy) -> ScatteringState:
    if not epsilon > 0:
        raise DomainError("scattering states need eps > 0")
    jy = bessel_jy_log(nu, math.sqrt(epsilon), policy)
    if paper_y_cutoff:
        j = jy.j
        y = _capped_y(jy)
        norm = math.hypot(j, y)
        a, b = y / norm, j / norm
        if a < 0:
            a, b = -a, -b
        la = math.log(abs(a)) if a else -math.inf
        lb = math.log(abs(b)) if b else -math.inf
        return ScatteringState(geom, l, epsilon, nu, math.copysign(1.0, a), la, math.copysign(1.0, b) if b else 0.0, lb, True, policy)
    lnorm = np.logaddexp(2.0 * jy.lj, 2.0 * jy.ly) * 0.5
    sa, sb = jy.sy, jy.sj
    if sa < 0:
        sa, sb = -sa, -sb
    return ScatteringState(geom, l, epsilon, nu, sa, jy.ly - lnorm, sb, jy.lj - lnorm, False, policy)


def scattering_state(
    geom: ConeGeometry,
    l: int,
    epsilon: float,
    paper_y_cutoff: bool = False,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> ScatteringState:
    if l == 0:
        raise DomainError("channel l = 0 is the collapse state")
    return _scattering(geom, l, geom.tilde_nu(l), epsilon, paper_y_cutoff, policy)


def scattering_wavefunction(
    geom: ConeGeometry, l: int, epsilon: float, r, paper_y_cutoff: bool = False,
    policy: SeriesPolicy = DEFAULT_POLICY,
):
    """(psi(r), (A, B)) for the channel-l state at energy eps."""
    st = scattering_state(geom, l, epsilon, paper_y_cutoff, policy)
    return st.psi(r), (st.A, st.B)


def scattering_large_e_density(epsilon: float, r):
    """(2 / (pi sqrt(eps) r)) sin^2(sqrt(eps)(1 - r))."""
    r = _as_r(r)
    k = math.sqrt(epsilon)
    return 2.0 / (np.pi * k * r) * np.sin(k * (1.0 - r)) ** 2


# ------------------------------------------------------------------ plane limit

def plane_state(l: int, epsilon: float, policy: SeriesPolicy = DEFAULT_POLICY) -> ScatteringState:
    """Hard-hole plane state built from integer-order J_|l| and Y_|l|."""
    return _scattering(None, l, float(abs(l)), epsilon, False, policy)


def plane_limit_state(l: int, epsilon: float, r, policy: SeriesPolicy = DEFAULT_POLICY):
    return plane_state(l, epsilon, policy).psi(r)


def plane_ldos_hole_free(x: float, l_max: int = 50) -> float:
    """sum_{|l| <= l_max} J_l(x)^2 for the plane without a hole; equals 1 as l_max -> inf."""
    if x < 0:
        raise DomainError("x must be >= 0")
    if x == 0.0:
        return 1.0
    total = 0.0
    for l in range(l_max, -1, -1):
        j = bessel_jy_log(float(l), x).j
        total += j * j if l == 0 else 2.0 * j * j
    return total


QuantumState = Union[BoundState, CollapseState, ScatteringState]


def radial_residual(state, r: float) -> float:
    """Residual of psi'' + psi'/r + (eps - nu~^2/r^2) psi, scaled by the largest term."""
    psi, d1, d2 = state.psi_derivatives(r)
    nu_sq = state.geom.tilde_nu_sq(state.l) if state.geom is not None else state.l ** 2
    terms = (d2, d1 / r, state.epsilon * psi, nu_sq * psi / (r * r))
    res = d2 + d1 / r + (state.epsilon - nu_sq / (r * r)) * psi
    scale = max(abs(t) for t in terms)
    # All terms underflow together deep inside the centrifugal barrier.
    return abs(res) / scale if scale > 0 else 0.0


def bound_psi_derivatives(geom: ConeGeometry, epsilon: float, r: float) -> tuple[float, float, float]:
    kappa = math.sqrt(-epsilon)
    ev = k_inu_eval(geom.tilde_alpha, kappa * r)
    return ev.value, kappa * ev.d1, kappa * kappa * ev.d2
