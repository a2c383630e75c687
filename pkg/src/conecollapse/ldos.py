"""Local density of states on the truncated cone.

N(eps, r) = sum over signed l of |psi_{l,eps}(r)|^2, split into the l = 0
collapse channel and the |l| >= 1 conventional channels. Channels l and -l
share one radial function, so each |l| >= 1 term is counted twice.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from conecollapse.cone import ConeGeometry
from conecollapse.errors import DomainError, InsufficientResolution
from conecollapse.specfun import DEFAULT_POLICY, SeriesPolicy
from conecollapse.states import ZpieForm, collapse_state, scattering_state

DEFAULT_LMAX = 50
# A channel is dropped once it is evanescent everywhere on the r grid and its
# contribution is below this fraction of the running total at every radius.
NEGLIGIBLE = 1e-18


def _check_inputs(epsilon: float, rs: np.ndarray, l_max: int) -> None:
    if not epsilon > 0:
        raise DomainError("LDOS needs eps > 0")
    if np.any(rs < 1.0):
        raise DomainError("r must be >= 1")
    if l_max < 1:
        raise DomainError("l_max must be >= 1")


def channel_terms(
    geom: ConeGeometry,
    epsilon: float,
    rs,
    l_max: int = DEFAULT_LMAX,
    paper_y_cutoff: bool = False,
    truncate: bool = True,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """|psi_l|^2 for l = 0..l_max (one signed channel each), shape (l_max+1, len(rs)).

    With ``truncate`` the tail beyond the first negligible evanescent channel
    is left at zero; the omitted terms decrease monotonically in |l|.
    """
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    _check_inputs(epsilon, rs, l_max)
    out = np.zeros((l_max + 1, rs.size))
    out[0] = collapse_state(geom, epsilon, policy).psi(rs) ** 2
    total = out[0].copy()
    kr_max = math.sqrt(epsilon) * float(rs.max())
    for l in range(1, l_max + 1):
        st = scattering_state(geom, l, epsilon, paper_y_cutoff, policy)
        n_l = st.psi(rs) ** 2
        out[l] = n_l
        total += 2.0 * n_l
        if truncate and st.nu > kr_max and np.all(2.0 * n_l <= NEGLIGIBLE * total):
            break
    return out


def ldos_profile(
    geom: ConeGeometry,
    epsilon: float,
    rs,
    l_max: int = DEFAULT_LMAX,
    paper_y_cutoff: bool = False,
    truncate: bool = True,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(total, l0 part, l != 0 part) along rs at one energy."""
    terms = channel_terms(geom, epsilon, rs, l_max, paper_y_cutoff, truncate, policy)
    l0 = terms[0]
    rest = 2.0 * terms[1:].sum(axis=0)
    return l0 + rest, l0, rest


def ldos_point(
    geom: ConeGeometry,
    epsilon: float,
    r: float,
    l_max: int = DEFAULT_LMAX,
    paper_y_cutoff: bool = False,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> tuple[float, float, float]:
    tot, l0, rest = ldos_profile(geom, epsilon, [r], l_max, paper_y_cutoff, policy=policy)
    return float(tot[0]), float(l0[0]), float(rest[0])


@dataclass
class LdosGrid:
    """LDOS over an (eps, r) grid with the channel decomposition."""

    epsilons: np.ndarray
    rs: np.ndarray
    l_max: int
    values_total: np.ndarray = field(repr=False)
    values_l0: np.ndarray = field(repr=False)
    values_lneq0: np.ndarray = field(repr=False)


def _row(epsilon, geom, rs, l_max, paper_y_cutoff, policy):
    return ldos_profile(geom, epsilon, rs, l_max, paper_y_cutoff, policy=policy)


def resolve_workers(workers: int | None) -> int:
    """Explicit value, else CONECOLLAPSE_THREADS, else 1."""
    if workers is None:
        env = os.environ.get("CONECOLLAPSE_THREADS")
        workers = int(env) if env else 1
    if workers < 1:
        raise DomainError("worker count must be >= 1")
    return workers


def ldos_grid(
    geom: ConeGeometry,
    epsilons,
    rs,
    l_max: int = DEFAULT_LMAX,
    paper_y_cutoff: bool = False,
    workers: int | None = 1,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> LdosGrid:
    """Evaluate the LDOS on every (eps, r) cell.

    Rows (fixed eps) are independent; with workers > 1 they are farmed out to
    a process pool and reassembled in input order, so the result does not
    depend on the worker count.
    """
    eps = np.asarray(epsilons, dtype=float)
    rs = np.asarray(rs, dtype=float)
    workers = resolve_workers(workers)
    fn = partial(_row, geom=geom, rs=rs, l_max=l_max, paper_y_cutoff=paper_y_cutoff, policy=policy)
    if workers == 1 or eps.size < 2:
        rows = [fn(e) for e in eps]
    else:
        chunk = max(1, eps.size // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(fn, eps, chunksize=chunk))
    tot = np.array([r[0] for r in rows]).reshape(eps.size, rs.size)
    l0 = np.array([r[1] for r in rows]).reshape(eps.size, rs.size)
    rest = np.array([r[2] for r in rows]).reshape(eps.size, rs.size)
    return LdosGrid(eps, rs, l_max, tot, l0, rest)


def log_energies(eps_min: float, eps_max: float, points_per_decade: int = 64) -> np.ndarray:
    if not (0 < eps_min < eps_max):
        raise DomainError("need 0 < eps_min < eps_max")
    if points_per_decade < 1:
        raise DomainError("points_per_decade must be >= 1")
    n = int(math.ceil(math.log10(eps_max / eps_min) * points_per_decade)) + 1
    return np.logspace(math.log10(eps_min), math.log10(eps_max), n)


# ------------------------------------------------------------------ asymptotics

def ldos_asymptotic_large_e(
    geom: ConeGeometry, epsilon: float, r, l_max: int = DEFAULT_LMAX
) -> tuple[np.ndarray | float, np.ndarray | float]:
    """(collapse envelope 2/(pi k r), N_l (2/(pi k r)) sin^2(k(1-r))) with k = sqrt(eps)."""
    r_arr = np.asarray(r, dtype=float)
    k = math.sqrt(epsilon)
    base = 2.0 / (np.pi * k * r_arr)
    conv = 2 * l_max * base * np.sin(k * (1.0 - r_arr)) ** 2
    if r_arr.ndim == 0:
        return float(base), float(conv)
    return base, conv


# ------------------------------------------------------------------ near zero

@dataclass(frozen=True)
class OscillationDescriptor:
    window: tuple[float, float]
    extrema: tuple[tuple[float, float, str], ...]  # (ln sqrt(eps), value, "max"/"min")
    period_in_log_sqrt_eps: float
    amplitude: float
    mean_level: float
    maximum: float
    minimum: float


def _refine(u: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Vertex of the parabola through the three samples around index i."""
    u0, u1, u2 = u[i - 1], u[i], u[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    den = (u0 - u1) * (u0 - u2) * (u1 - u2)
    a = (u2 * (y1 - y0) + u1 * (y0 - y2) + u0 * (y2 - y1)) / den
    b = (u2 * u2 * (y0 - y1) + u1 * u1 * (y2 - y0) + u0 * u0 * (y1 - y2)) / den
    if a == 0.0:
        return u1, y1
    uv = -b / (2.0 * a)
    if not (u0 <= uv <= u2):
        return u1, y1
    c = y1 - a * u1 * u1 - b * u1
    return uv, a * uv * uv + b * uv + c


def find_extrema(u: np.ndarray, y: np.ndarray) -> list[tuple[float, float, str]]:
    """Three-point local extrema of y(u) with parabolic refinement."""
    out = []
    for i in range(1, len(u) - 1):
        if y[i] > y[i - 1] and y[i] >= y[i + 1]:
            out.append((*_refine(u, y, i), "max"))
        elif y[i] < y[i - 1] and y[i] <= y[i + 1]:
            out.append((*_refine(u, y, i), "min"))
    return out


def describe_oscillation(u: np.ndarray, y: np.ndarray, window: tuple[float, float]) -> OscillationDescriptor:
    ext = find_extrema(u, y)
    if len(ext) < 3:
        raise InsufficientResolution(f"found {len(ext)} extrema, need at least 3")
    pos = np.array([e[0] for e in ext])
    # Extrema alternate max/min, half a period apart.
    idx = np.arange(len(pos))
    slope = np.polyfit(idx, pos, 1)[0]
    vals = np.concatenate([y, [e[1] for e in ext]])
    hi, lo = float(vals.max()), float(vals.min())
    return OscillationDescriptor(
        window=window,
        extrema=tuple(ext),
        period_in_log_sqrt_eps=2.0 * abs(slope),
        amplitude=0.5 * (hi - lo),
        mean_level=0.5 * (hi + lo),
        maximum=hi,
        minimum=lo,
    )


def near_zero_scan(
    geom: ConeGeometry,
    r: float,
    window: tuple[float, float],
    points_per_decade: int = 64,
    part: str = "total",
    l_max: int = DEFAULT_LMAX,
) -> tuple[np.ndarray, np.ndarray]:
    """(ln sqrt(eps), LDOS) sampled log-uniformly over the window."""
    lo, hi = window
    if not (0 < lo < hi <= 1e-3):
        raise DomainError("near-zero window must lie inside (0, 1e-3]")
    if part not in ("total", "l0"):
        raise DomainError("part must be 'total' or 'l0'")
    eps = log_energies(lo, hi, points_per_decade)
    vals = []
    for e in eps:
        tot, l0, _ = ldos_profile(geom, float(e), [r], l_max)
        vals.append(tot[0] if part == "total" else l0[0])
    return 0.5 * np.log(eps), np.array(vals)


def near_zero_profile(
    geom: ConeGeometry,
    r: float,
    window: tuple[float, float],
    points_per_decade: int = 64,
    part: str = "total",
    l_max: int = DEFAULT_LMAX,
) -> OscillationDescriptor:
    """Extrema, period in ln sqrt(eps), amplitude and mean level of N(eps, r)."""
    u, y = near_zero_scan(geom, r, window, points_per_decade, part, l_max)
    return describe_oscillation(u, y, window)


def average_ldos(geom: ConeGeometry, r) -> float | np.ndarray:
    """Mean near-zero level (1/2)(1/B + 1/(B - C)) A^2 sin^2(alpha~ ln r)."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 1.0):
        raise DomainError("r must be >= 1")
    z = ZpieForm(geom.tilde_alpha)
    val = 0.5 * (1.0 / z.B + 1.0 / (z.B - z.C)) * z.A ** 2 * np.sin(geom.tilde_alpha * np.log(r_arr)) ** 2
    return float(val) if val.ndim == 0 else val


def numeric_average_ldos(
    geom: ConeGeometry,
    r: float,
    window: tuple[float, float] = (1e-12, 1e-9),
    points_per_decade: int = 64,
    part: str = "total",
) -> float:
    """(max + min)/2 of the scanned LDOS over the window (no extremum count needed)."""
    u, y = near_zero_scan(geom, r, window, points_per_decade, part)
    ext = find_extrema(u, y)
    vals = np.concatenate([y, [e[1] for e in ext]]) if ext else y
    return 0.5 * (float(vals.max()) + float(vals.min()))
