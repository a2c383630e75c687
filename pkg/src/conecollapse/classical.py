"""Classical motion on the truncated cone under the inverse-square effective potential.

With p_phi = L_z the radial Hamiltonian is

    H = p^2 / (2M) + c / (2 M rho^2),   c = L_z^2 / alpha^2 - L_eff^2,

so c < 0 is attractive and c > 0 repulsive. The wall at rho0 reflects
p -> -p. Between reflections rho^2 is exactly quadratic in t, which the tests
use as an oracle for the integrator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from conecollapse.errors import DomainError, Inconsistent, StepFailure

RTOL = 1e-12
ESCAPE_FACTOR = 100.0


class Label(str, enum.Enum):
    BOUND = "Bound"
    COLLAPSE_ESCAPE = "CollapseEscape"
    SCATTER = "Scatter"


@dataclass(frozen=True)
class ClassicalParams:
    """Units are free but consistent; the defaults M = rho0 = 1 are the dimensionless scheme."""

    alpha: float
    L_z: float
    L_eff: float
    E: float
    M: float = 1.0
    rho0: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise DomainError("alpha must lie in (0, 1]")
        if self.M <= 0 or self.rho0 <= 0:
            raise DomainError("M and rho0 must be positive")
        if self.coupling == 0.0:
            raise DomainError("marginal coupling L_z^2/alpha^2 = L_eff^2 has no regime")
        if self.coupling > 0 and self.E <= 0:
            raise DomainError("repulsive potential admits no motion with E <= 0")
        if self.E == 0.0:
            raise DomainError("E = 0 is the separatrix; choose E != 0")

    @property
    def coupling(self) -> float:
        """c = L_z^2/alpha^2 - L_eff^2; c > 0 repulsive."""
        return self.L_z ** 2 / self.alpha ** 2 - self.L_eff ** 2

    @property
    def attractive(self) -> bool:
        return self.coupling < 0

    @property
    def expected_label(self) -> Label:
        if self.attractive:
            return Label.BOUND if self.E < 0 else Label.COLLAPSE_ESCAPE
        return Label.SCATTER

    def potential(self, rho):
        return self.coupling / (2.0 * self.M * np.asarray(rho, dtype=float) ** 2)

    def hamiltonian(self, rho, p):
        rho = np.asarray(rho, dtype=float)
        return np.asarray(p, dtype=float) ** 2 / (2.0 * self.M) + self.potential(rho)


def quantum_coupling(alpha: float, l: int, hbar: float = 1.0) -> float:
    """c with L_z = l hbar and L_eff = hbar alpha~; equals hbar^2 nu~^2(l)."""
    ta = math.sqrt(1.0 - alpha * alpha) / (2.0 * alpha)
    return (l * hbar) ** 2 / alpha ** 2 - (hbar * ta) ** 2


def turning_point(params: ClassicalParams) -> float | None:
    """rho* with p(rho*) = 0, or None when the regime has no turning point."""
    c = params.coupling
    if (c < 0 and params.E < 0) or (c > 0 and params.E > 0):
        return math.sqrt(abs(c) / (2.0 * params.M * abs(params.E)))
    return None


def radial_momentum(params: ClassicalParams, rho: float, inward: bool = True) -> float:
    """|p| fixed by E at radius rho, with the requested direction."""
    kinetic = 2.0 * params.M * params.E - params.coupling / rho ** 2
    if kinetic < 0:
        raise DomainError(f"rho={rho} lies in the classically forbidden region")
    p = math.sqrt(kinetic)
    return -p if inward else p


@dataclass
class ClassicalTrajectory:
    t: np.ndarray
    rho: np.ndarray
    phi: np.ndarray
    p_rho: np.ndarray
    event: np.ndarray  # 0 sample, 1 wall reflection, 2 turning point, 3 escape
    reflections: list[float] = field(default_factory=list)
    turning_times: list[float] = field(default_factory=list)
    escaped: bool = False
    label: Label | None = None

    def energy(self, params: ClassicalParams) -> np.ndarray:
        return params.hamiltonian(self.rho, self.p_rho)

    def energy_drift(self, params: ClassicalParams) -> float:
        h = self.energy(params)
        return float(np.max(np.abs(h - h[0])) / abs(h[0]))


def _rhs(params: ClassicalParams):
    M, c, lz, a2 = params.M, params.coupling, params.L_z, params.alpha ** 2

    def f(t, y):
        rho, _, p = y
        return [p / M, lz / (M * a2 * rho * rho), c / (M * rho ** 3)]

    return f


def integrate(
    params: ClassicalParams,
    initial: tuple[float, float, float | None],
    t_end: float,
    dt: float,
    max_reflections: int = 10_000,
) -> ClassicalTrajectory:
    """Integrate from (rho, phi, p_rho) until t_end or escape.

    ``p_rho=None`` takes the inward momentum fixed by params.E; an explicit
    value must be consistent with params.E. Wall hits are located by the
    solver's event root finding, then rho is set to rho0 and p flips sign.
    Samples are taken every dt plus at each event.
    """
    rho_i, phi_i, p_i = initial
    if rho_i < params.rho0:
        raise DomainError("initial rho lies inside the excised disc")
    if dt <= 0 or t_end <= 0:
        raise DomainError("dt and t_end must be positive")
    if p_i is None:
        p_i = radial_momentum(params, rho_i, inward=True)
    h0 = float(params.hamiltonian(rho_i, p_i))
    if not math.isclose(h0, params.E, rel_tol=1e-9, abs_tol=1e-12):
        raise DomainError(f"initial state has energy {h0}, params say {params.E}")

    star = turning_point(params)
    scale = max(params.rho0, star or 0.0, rho_i)
    r_escape = ESCAPE_FACTOR * scale
    rho0 = params.rho0

    def wall(t, y):
        return y[0] - rho0

    wall.terminal = True
    wall.direction = -1

    def escape(t, y):
        return y[0] - r_escape

    escape.terminal = True
    escape.direction = 1

    def turn(t, y):
        return y[2]

    turn.terminal = False
    turn.direction = 0

    rhs = _rhs(params)
    ts, ys, ev = [0.0], [(rho_i, phi_i, p_i)], [0]
    reflections: list[float] = []
    turning: list[float] = []
    escaped = False
    t0 = 0.0
    y0 = np.array([rho_i, phi_i, p_i], dtype=float)
    next_sample = dt
    while t0 < t_end:
        sol = solve_ivp(
            rhs, (t0, t_end), y0, method="DOP853", rtol=RTOL, atol=RTOL * scale,
            events=(wall, escape, turn), dense_output=True,
        )
        if sol.status == -1:
            raise StepFailure(sol.message)
        t_stop = sol.t[-1]
        events = []
        for tt, yy in zip(sol.t_events[2], sol.y_events[2]):
            if tt > t0:
                events.append((tt, 2, yy))
        while next_sample < t_stop:
            events.append((next_sample, 0, sol.sol(next_sample)))
            next_sample += dt
        events.sort(key=lambda e: (e[0], e[1]))
        for tt, kind, yy in events:
            ts.append(tt)
            ys.append(tuple(yy))
            ev.append(kind)
            if kind == 2:
                turning.append(tt)
        if sol.status == 1 and sol.t_events[0].size:
            t_hit = float(sol.t_events[0][0])
            y_hit = sol.y_events[0][0]
            if abs(y_hit[0] - rho0) > 1e-9 * rho0:
                raise StepFailure("wall event was not localised")
            reflections.append(t_hit)
            y0 = np.array([rho0, y_hit[1], -y_hit[2]])
            ts.append(t_hit)
            ys.append(tuple(y0))
            ev.append(1)
            t0 = t_hit
            if len(reflections) > max_reflections:
                raise StepFailure("reflection limit exceeded")
            continue
        if sol.status == 1 and sol.t_events[1].size:
            t_hit = float(sol.t_events[1][0])
            ts.append(t_hit)
            ys.append(tuple(sol.y_events[1][0]))
            ev.append(3)
            escaped = True
        break

    arr = np.array(ys)
    return ClassicalTrajectory(
        t=np.array(ts), rho=arr[:, 0], phi=arr[:, 1], p_rho=arr[:, 2], event=np.array(ev),
        reflections=reflections, turning_times=turning, escaped=escaped,
    )


def classify(traj: ClassicalTrajectory, params: ClassicalParams, tol: float = 1e-6) -> Label:
    """Label from the regime table, checked against what the trajectory did."""
    label = params.expected_label
    star = turning_point(params)
    rmax = float(traj.rho.max())
    rmin = float(traj.rho.min())
    if label is Label.BOUND:
        ok = not traj.escaped and rmax <= star * (1.0 + tol) and rmin >= params.rho0 * (1.0 - tol)
    elif label is Label.COLLAPSE_ESCAPE:
        inward = traj.p_rho[0] < 0
        ok = traj.escaped and (len(traj.reflections) >= 1 or not inward)
    else:
        ok = not traj.reflections and rmin >= star * (1.0 - tol)
    if not ok:
        raise Inconsistent(
            f"regime says {label.value} but trajectory has {len(traj.reflections)} reflections, "
            f"escaped={traj.escaped}, rho in [{rmin}, {rmax}]"
        )
    traj.label = label
    return label


def potential_profile(params: ClassicalParams, rho) -> np.ndarray:
    """U(rho) = c/(2 M rho^2) on rho >= rho0."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < params.rho0):
        raise DomainError("rho must be >= rho0")
    return params.potential(rho)


def exact_rho(params: ClassicalParams, rho_start: float, p_start: float, t):
    """rho(t) between events: rho^2 = rho_s^2 + 2 rho_s p_s t / M + 2 E t^2 / M."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(rho_start ** 2 + 2.0 * rho_start * p_start * t / params.M + 2.0 * params.E * t * t / params.M)


PRESETS = {
    "bound": (ClassicalParams(alpha=0.5, L_z=0.2, L_eff=1.0, E=-0.1), (1.5, 0.0, None), 60.0),
    "collapse": (ClassicalParams(alpha=0.5, L_z=0.2, L_eff=1.0, E=0.1), (5.0, 0.0, None), 5000.0),
    "scatter": (ClassicalParams(alpha=0.5, L_z=1.0, L_eff=1.0, E=0.5), (5.0, 0.0, None), 5000.0),
}
