"""Real-valued Bessel functions of purely imaginary order i*nu.

F and G solve x^2 y'' + x y' + (x^2 + nu^2) y = 0 and reduce to J_0, Y_0 as
nu -> 0. L and K solve the modified equation. Three evaluation routes exist:

* the ascending series in the phase/modulus form built from
  phi_s = arg Gamma(1+s+i nu) and beta_s = s! prod_{k<=s} |k + i nu|,
* the Hankel expansion for large x,
* for K only, the integral int_0^inf exp(-x cosh t) cos(nu t) dt.

Every call estimates the absolute rounding/truncation error of each
admissible route and keeps the best, unless the policy fixes a switch point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from conecollapse.errors import DomainError, NonConvergence, SpecfunOverflow
from conecollapse.specfun.gamma import arg_gamma_continuous
from conecollapse.specfun.policy import (
    DEFAULT_POLICY,
    EPS,
    LOG_MAX,
    SeriesPolicy,
    hankel_coefficients,
    hankel_error_estimate,
)


def _log_sinh(v: float) -> float:
    return v + math.log1p(-math.exp(-2.0 * v)) - math.log(2.0)


@dataclass(frozen=True)
class ImaginaryOrderTriple:
    """Order-dependent constants of the ascending series for order i*nu."""

    nu: float

    def __post_init__(self):
        if not (self.nu > 0 and math.isfinite(self.nu)):
            raise DomainError("imaginary order needs nu > 0")

    @property
    def D(self) -> float:
        return math.sqrt(2.0 * self.nu * math.tanh(0.5 * math.pi * self.nu) / math.pi)

    @property
    def E(self) -> float:
        return math.sqrt(2.0 * self.nu / (math.pi * math.tanh(0.5 * math.pi * self.nu)))

    @property
    def M(self) -> float:
        v = math.pi * self.nu
        return math.exp(0.5 * (math.log(v) - _log_sinh(v)))

    def phi(self, s: int) -> float:
        return arg_gamma_continuous(s, self.nu)

    def beta(self, s: int) -> float:
        """s! * prod_{k=0..s} sqrt(k^2 + nu^2)."""
        log_b = math.lgamma(s + 1.0) + 0.5 * sum(math.log(k * k + self.nu ** 2) for k in range(s + 1))
        return math.exp(log_b)

    def alpha(self, s: int, x: float) -> float:
        return self.nu * math.log(0.5 * x) - self.phi(s)


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """Partial sums of the large-x expansion: F + iG ~ sqrt(2/(pi x)) e^{i(x-pi/4)} (zeta + i eta)."""

    zeta: float
    eta: float
    terms: tuple[float, ...]
    error: float


def asymptotic_coeffs(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> AsymptoticCoeffs:
    terms, err = hankel_coefficients(-4.0 * nu * nu, x, policy.asymptotic_max_terms, 0.1 * EPS)
    zeta = 0.0
    eta = 0.0
    for k, t in enumerate(terms):
        sgn = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            zeta += sgn * t
        else:
            eta += sgn * t
    return AsymptoticCoeffs(zeta, eta, tuple(terms), err)


class Evaluation(NamedTuple):
    """Value and derivatives up to second order, with the route used."""

    value: float
    d1: float
    d2: float
    branch: str
    error: float


def _check(nu: float, x: float) -> None:
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("nu and x must be finite")
    if not nu > 0:
        raise DomainError("imaginary order needs nu > 0")
    if not x > 0:
        raise DomainError("x must be > 0")


# ------------------------------------------------------------------ series

def _series(nu: float, x: float, alternating: bool, policy: SeriesPolicy):
    """Complex sums S, S', S'' of sum_s (+-1)^s e^{i alpha_s} (x/2)^{2s} / beta_s.

    Successive terms follow from Gamma(1+s+i nu) = (s+i nu) Gamma(s+i nu):
    e^{-i phi_s}/beta_s = e^{-i phi_{s-1}}/beta_{s-1} / (s (s + i nu)).
    Returns the three sums and the sum of term moduli (for the error bound).
    """
    z = 0.5 * x
    q = -z * z if alternating else z * z
    phi0 = arg_gamma_continuous(0, nu)
    t = cmath.exp(1j * (nu * math.log(z) - phi0)) / nu
    p = 1j * nu
    s0 = t
    s1 = t * p / x
    s2 = t * p * (p - 1.0) / (x * x)
    mod = abs(t)
    small = 0
    for s in range(1, policy.max_terms + 1):
        t *= q / (s * (s + 1j * nu))
        p = 2.0 * s + 1j * nu
        s0 += t
        s1 += t * p / x
        s2 += t * p * (p - 1.0) / (x * x)
        at = abs(t)
        mod += at * (1.0 + abs(p) / x) ** 2
        if at < policy.rel_tol * abs(s0):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise NonConvergence(f"imaginary-order series did not converge (nu={nu}, x={x})")
    return s0, s1, s2, mod


# ------------------------------------------------------------------ F and G

def _fg_hankel(nu: float, x: float, policy: SeriesPolicy):
    terms, err = hankel_coefficients(-4.0 * nu * nu, x, policy.asymptotic_max_terms, 0.1 * EPS)
    amp = math.sqrt(2.0 / (math.pi * x))
    phase = cmath.exp(1j * (x - 0.25 * math.pi))
    h0 = h1 = h2 = 0j
    ik = 1.0 + 0j
    for k, t in enumerate(terms):
        c = ik * t
        a = k + 0.5
        f1 = 1j - a / x
        h0 += c
        h1 += c * f1
        h2 += c * (f1 * f1 + a / (x * x))
        ik *= 1j
    pre = amp * phase
    return pre * h0, pre * h1, pre * h2, err * amp


def _pick_fg(nu: float, x: float, policy: SeriesPolicy):
    tr = ImaginaryOrderTriple(nu)
    if policy.asymptotic_switch_x is not None:
        if x >= policy.asymptotic_switch_x:
            h0, h1, h2, err = _fg_hankel(nu, x, policy)
            return (h0.real, h1.real, h2.real), (h0.imag, h1.imag, h2.imag), "asymptotic", err
        s0, s1, s2, mod = _series(nu, x, True, policy)
        err = EPS * max(tr.D, tr.E) * mod
        return _fg_from_series(tr, s0, s1, s2), None, "series", err

    h_err = hankel_error_estimate(-4.0 * nu * nu, x, policy.asymptotic_max_terms) * math.sqrt(
        2.0 / (math.pi * x)
    )
    if h_err < 0.5 * EPS * math.sqrt(2.0 / (math.pi * x)):
        h0, h1, h2, err = _fg_hankel(nu, x, policy)
        return (h0.real, h1.real, h2.real), (h0.imag, h1.imag, h2.imag), "asymptotic", err
    s0, s1, s2, mod = _series(nu, x, True, policy)
    s_err = EPS * max(tr.D, tr.E) * mod
    if h_err < s_err:
        h0, h1, h2, err = _fg_hankel(nu, x, policy)
        return (h0.real, h1.real, h2.real), (h0.imag, h1.imag, h2.imag), "asymptotic", max(err, h_err)
    return _fg_from_series(tr, s0, s1, s2), None, "series", s_err


def _fg_from_series(tr, s0, s1, s2):
    return (
        (tr.D * s0.real, tr.D * s1.real, tr.D * s2.real),
        (tr.E * s0.imag, tr.E * s1.imag, tr.E * s2.imag),
    )


def fg_inu(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> tuple[Evaluation, Evaluation]:
    """F_{i nu}(x) and G_{i nu}(x) with first and second derivatives."""
    _check(nu, x)
    f, g, branch, err = _pick_fg(nu, x, policy)
    if g is None:
        f, g = f
    return Evaluation(*f, branch, err), Evaluation(*g, branch, err)


def f_inu(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    return fg_inu(nu, x, policy)[0].value


def g_inu(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    return fg_inu(nu, x, policy)[1].value


# ------------------------------------------------------------------ K and L

def _k_hankel(nu: float, x: float, policy: SeriesPolicy, sign: float):
    """sqrt(pi/2x) e^{-sign x} sum (+-1)^k a_k / x^k and its derivatives.

    sign=+1 gives the decaying K form, sign=-1 the growing L form without the
    1/sinh(nu pi) factor.
    """
    terms, err = hankel_coefficients(-4.0 * nu * nu, x, policy.asymptotic_max_terms, 0.1 * EPS)
    h0 = h1 = h2 = 0.0
    for k, t in enumerate(terms):
        c = t if (sign > 0 or k % 2 == 0) else -t
        a = k + 0.5
        f1 = -sign - a / x
        h0 += c
        h1 += c * f1
        h2 += c * (f1 * f1 + a / (x * x))
    pre = math.sqrt(math.pi / (2.0 * x)) * math.exp(-sign * x)
    return pre * h0, pre * h1, pre * h2, err * pre


def _k_integral_step(nu: float) -> float:
    return 2.0 * math.pi / (45.0 + 3.0 * nu)


def k_inu_integral(nu: float, x: float, h: float | None = None) -> tuple[float, float, float, float]:
    """K_{i nu} and derivatives from int_0^inf exp(-x cosh t) cos(nu t) dt.

    The integrand is entire and decays doubly exponentially, so the trapezoid
    rule converges geometrically; h shrinks with nu to keep the discretisation
    error below the cancellation floor. Returns (K, K', K'', abs sum).
    """
    if h is None:
        h = _k_integral_step(nu)
    e0 = math.exp(-x)
    v0, v1, v2 = 0.5 * e0, -0.5 * e0, 0.5 * e0
    absum = 0.5 * e0
    k = 1
    while True:
        t = k * h
        ch = math.cosh(t)
        w = math.exp(-x * ch)
        c = math.cos(nu * t)
        v0 += w * c
        v1 -= ch * w * c
        v2 += ch * ch * w * c
        absum += ch * ch * w
        if ch * ch * w < 1e-3 * EPS * absum:
            break
        k += 1
        if k > 1_000_000:
            raise NonConvergence("K_{i nu} integral did not converge")
    return h * v0, h * v1, h * v2, h * absum


def _pick_k(nu: float, x: float, policy: SeriesPolicy):
    tr = ImaginaryOrderTriple(nu)
    M = tr.M
    if policy.asymptotic_switch_x is not None:
        if x >= policy.asymptotic_switch_x:
            k0, k1, k2, err = _k_hankel(nu, x, policy, 1.0)
            return (k0, k1, k2), "asymptotic", err
        s0, s1, s2, mod = _series(nu, x, False, policy)
        return (-M * s0.imag, -M * s1.imag, -M * s2.imag), "series", EPS * M * mod

    pre = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
    h_err = hankel_error_estimate(-4.0 * nu * nu, x, policy.asymptotic_max_terms) * pre
    if h_err < 0.5 * EPS * pre:
        k0, k1, k2, _ = _k_hankel(nu, x, policy, 1.0)
        return (k0, k1, k2), "asymptotic", h_err
    s0, s1, s2, mod = _series(nu, x, False, policy)
    s_err = EPS * M * mod
    best = ((-M * s0.imag, -M * s1.imag, -M * s2.imag), "series", s_err)
    if h_err < s_err:
        k0, k1, k2, _ = _k_hankel(nu, x, policy, 1.0)
        best = ((k0, k1, k2), "asymptotic", h_err)
    if best[2] > 16.0 * EPS * abs(best[0][0]):
        i0, i1, i2, absum = k_inu_integral(nu, x)
        i_err = 4.0 * EPS * absum
        if i_err < best[2]:
            best = ((i0, i1, i2), "integral", i_err)
    return best


def k_inu_eval(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> Evaluation:
    """K_{i nu}(x) with derivatives and the route used."""
    _check(nu, x)
    vals, branch, err = _pick_k(nu, x, policy)
    return Evaluation(*vals, branch, err)


def k_inu(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    return k_inu_eval(nu, x, policy).value


def l_inu_eval(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> Evaluation:
    """L_{i nu}(x) with derivatives; raises SpecfunOverflow past double range."""
    _check(nu, x)
    log_amp = x - _log_sinh(math.pi * nu) + 0.5 * math.log(math.pi / (2.0 * x))
    if log_amp > LOG_MAX - 1.0:
        raise SpecfunOverflow(f"L_(i{nu})({x}) exceeds double precision")
    tr = ImaginaryOrderTriple(nu)
    use_h = False
    if policy.asymptotic_switch_x is not None:
        use_h = x >= policy.asymptotic_switch_x
    else:
        # The series for L has no cancellation beyond the phase rotation, so the
        # Hankel form is only preferred once it is accurate to rounding.
        use_h = hankel_error_estimate(-4.0 * nu * nu, x, policy.asymptotic_max_terms) < 0.5 * EPS
    if use_h:
        l0, l1, l2, err = _k_hankel(nu, x, policy, -1.0)
        inv = math.exp(-_log_sinh(math.pi * nu))
        return Evaluation(l0 * inv, l1 * inv, l2 * inv, "asymptotic", err * inv)
    s0, s1, s2, mod = _series(nu, x, False, policy)
    M = tr.M
    return Evaluation(M * s0.real, M * s1.real, M * s2.real, "series", EPS * M * mod)


def l_inu(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    return l_inu_eval(nu, x, policy).value


# ------------------------------------------------------------------ small-x forms

def small_x_forms(nu: float, x: float) -> dict[str, float]:
    """Leading x -> 0+ behaviour of F, G, L and K."""
    tr = ImaginaryOrderTriple(nu)
    a = nu * math.log(0.5 * x) - tr.phi(0)
    return {
        "F": tr.D * math.cos(a) / nu,
        "G": tr.E * math.sin(a) / nu,
        "L": tr.M * math.cos(a) / nu,
        "K": -tr.M * math.sin(a) / nu,
    }
