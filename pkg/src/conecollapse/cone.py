"""Truncated-cone geometry, effective potentials and the graphene mapping.

Physics runs in the dimensionless scheme r = rho/rho0, eps = E/E0 with the
closure sqrt(2 M E0) rho0 / hbar = 1. Dimensional numbers only appear here and
at the command-line boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants as sc
from scipy.integrate import trapezoid

from conecollapse.errors import DomainError

ANGSTROM = 1e-10
NANOMETER = 1e-9


def closure_rho0(E0_eV: float = 1.0, M_me: float = 1.0) -> float:
    """rho0 in angstrom such that sqrt(2 M E0) rho0 / hbar = 1."""
    return sc.hbar / math.sqrt(2.0 * M_me * sc.m_e * E0_eV * sc.eV) / ANGSTROM


def tilde_alpha(alpha: float) -> float:
    _check_alpha(alpha)
    return math.sqrt(1.0 - alpha * alpha) / (2.0 * alpha)


def tilde_nu_sq(alpha: float, l: int) -> float:
    _check_alpha(alpha)
    return (l * l) / (alpha * alpha) - (1.0 - alpha * alpha) / (4.0 * alpha * alpha)


def tilde_nu(alpha: float, l: int) -> float:
    """Real Bessel order of channel l; only defined where nu~^2 >= 0 (|l| >= 1)."""
    v = tilde_nu_sq(alpha, l)
    if v < 0:
        raise DomainError(f"channel l={l} has imaginary order (nu~^2 = {v})")
    return math.sqrt(v)


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


@dataclass(frozen=True)
class ConeGeometry:
    """Cone with sector fraction alpha, truncated by a hard wall at rho0.

    rho0 is in angstrom, E0 in eV and M in electron masses. By default rho0 is
    fixed by the closure relation, which gives about 1.95 A for E0 = 1 eV.
    """

    alpha: float
    rho0: float | None = None
    E0: float = 1.0
    M: float = 1.0
    _rho0: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_alpha(self.alpha)
        if self.E0 <= 0 or self.M <= 0:
            raise DomainError("E0 and M must be positive")
        rho0 = closure_rho0(self.E0, self.M) if self.rho0 is None else float(self.rho0)
        if not rho0 > 0:
            raise DomainError("rho0 must be positive")
        object.__setattr__(self, "_rho0", rho0)

    @property
    def rho0_angstrom(self) -> float:
        return self._rho0

    @property
    def tilde_alpha(self) -> float:
        return tilde_alpha(self.alpha)

    def tilde_nu_sq(self, l: int) -> float:
        return tilde_nu_sq(self.alpha, l)

    def tilde_nu(self, l: int) -> float:
        return tilde_nu(self.alpha, l)

    def closure(self) -> float:
        """sqrt(2 M E0) rho0 / hbar; equals 1 for the default rho0."""
        return (
            math.sqrt(2.0 * self.M * sc.m_e * self.E0 * sc.eV) * self._rho0 * ANGSTROM / sc.hbar
        )

    # Curvatures, lengths in units of rho0.
    def mean_curvature(self, rho: float) -> float:
        if rho <= 0:
            raise DomainError("rho must be positive")
        return math.sqrt(1.0 - self.alpha ** 2) / (2.0 * self.alpha * rho)

    def principal_curvatures(self, rho: float) -> tuple[float, float, float, float]:
        """(k1, k1n, k2, k2n) at radius rho."""
        if rho <= 0:
            raise DomainError("rho must be positive")
        k1 = 1.0 / (self.alpha * rho)
        k1n = math.sqrt(1.0 - self.alpha ** 2) / (self.alpha * rho)
        return k1, k1n, 0.0, 0.0

    @property
    def gaussian_deficit(self) -> float:
        """Integrated Gaussian curvature 2 pi (1 - alpha), concentrated at the apex."""
        return 2.0 * math.pi * (1.0 - self.alpha)


def gauss_bonnet_deficit(geom: ConeGeometry, rho: float = 1.0, n: int = 256) -> float:
    """2 pi minus the boundary integral of geodesic curvature around a circle.

    The circle of radius rho on the cone unrolls to an arc of radius rho and
    opening 2 pi alpha in the plane, so kappa_g = 1/rho along length
    2 pi alpha rho. The integral is done by quadrature over the polar angle.
    """
    phi = np.linspace(0.0, 2.0 * math.pi, n + 1)
    ds_dphi = np.full_like(phi, geom.alpha * rho)
    kappa = np.full_like(phi, 1.0 / rho)
    return 2.0 * math.pi - float(trapezoid(kappa * ds_dphi, phi))


def geometric_potential(geom: ConeGeometry, rho: float) -> float:
    """V_G in units of hbar^2 / (2 M rho0^2); rho in units of rho0."""
    if rho < 1.0:
        raise DomainError("rho below the wall lies in the excised region")
    return -(1.0 - geom.alpha ** 2) / (4.0 * geom.alpha ** 2 * rho * rho)


def geometric_potential_eV(geom: ConeGeometry, rho_angstrom: float) -> float:
    """V_G in eV at a physical radius in angstrom."""
    r = rho_angstrom / geom.rho0_angstrom
    unit = sc.hbar ** 2 / (2.0 * geom.M * sc.m_e * (geom.rho0_angstrom * ANGSTROM) ** 2) / sc.eV
    return geometric_potential(geom, r) * unit


def effective_radial_potential(geom: ConeGeometry, l: int, r: float) -> float:
    """U_G = nu~^2 / r^2 in units of hbar^2 / (2 M rho0^2)."""
    if r < 1.0:
        raise DomainError("r must be >= 1")
    return geom.tilde_nu_sq(l) / (r * r)


def observation_radius(geom: ConeGeometry) -> float:
    """Radius where sin^2(alpha~ ln r) first reaches 1: exp(pi / (2 alpha~))."""
    return math.exp(math.pi / (2.0 * geom.tilde_alpha))


@dataclass(frozen=True)
class GrapheneMapping:
    """Gapped-graphene parameters mapped onto the Schrodinger scheme.

    gap and energy_unit in eV; the Fermi velocity is given as a fraction of c.
    The effective mass is M* = gap / v_F^2 and the length unit xi0 follows from
    the same closure as rho0.
    """

    gap: float = 0.1
    energy_unit: float = 2.0
    vf_over_c: float = 1.0 / 300.0

    def __post_init__(self):
        if self.gap <= 0 or self.energy_unit <= 0 or self.vf_over_c <= 0:
            raise DomainError("gap, energy unit and Fermi velocity must be positive")
        if not (0.0 < self.gap / self.energy_unit < 1.0):
            raise DomainError("dimensionless gap must lie in (0, 1)")

    @property
    def fermi_velocity(self) -> float:
        return self.vf_over_c * sc.c

    @property
    def gap_tilde(self) -> float:
        return self.gap / self.energy_unit

    @property
    def effective_mass(self) -> float:
        """M* in kg."""
        return self.gap * sc.eV / self.fermi_velocity ** 2

    @property
    def xi0_nm(self) -> float:
        return sc.hbar * self.fermi_velocity / math.sqrt(
            2.0 * self.gap * sc.eV * self.energy_unit * sc.eV
        ) / NANOMETER

    def closure(self) -> float:
        return (
            math.sqrt(2.0 * self.effective_mass * self.energy_unit * sc.eV)
            * self.xi0_nm * NANOMETER / sc.hbar
        )

    def k_tilde(self, delta_eps: float) -> float:
        """Dimensionless wavevector with Schrodinger energy delta_eps above the gap."""
        if delta_eps < 0:
            raise DomainError("delta_eps must be >= 0")
        return math.sqrt(2.0 * delta_eps * self.gap_tilde)

    def energy_window_ueV(self, delta_eps: float) -> float:
        return delta_eps * self.energy_unit * 1e6


def dirac_dispersion(mapping: GrapheneMapping, k_tilde):
    """(eps, delta_eps) of the massive Dirac band and its Schrodinger limit."""
    k = np.asarray(k_tilde, dtype=float)
    if np.any(k < 0):
        raise DomainError("k_tilde must be >= 0")
    gap = mapping.gap_tilde
    if gap == 0:
        raise DomainError("zero gap has no Schrodinger limit")
    eps = np.sqrt(k * k + gap * gap)
    delta = k * k / (2.0 * gap)
    if eps.ndim == 0:
        return float(eps), float(delta)
    return eps, delta
