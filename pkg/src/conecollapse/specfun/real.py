"""Bessel functions of real order and real argument.

J and Y share one kernel: a continued fraction for J'/J, downward recurrence
to a fractional order, Temme's series (x < 2) or Steed's complex continued
fraction (x >= 2) for Y there, and forward recurrence for Y back up. Mantissas
are rescaled during the recurrences and the magnitudes are returned as logs,
so orders in the thousands at tiny arguments do not overflow.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from conecollapse.errors import DomainError, NonConvergence, SpecfunOverflow
from conecollapse.specfun.policy import (
    BIG,
    DEFAULT_POLICY,
    EPS,
    LOG_BIG,
    LOG_MAX,
    SeriesPolicy,
    hankel_coefficients,
    hankel_error_estimate,
    safe_exp,
)

_TINY = 1e-300
_XMIN = 2.0

# Taylor coefficients of 1/Gamma(1+z) about z = 0.
_RGAMMA_TAYLOR = (
    1.0, 5.77215664901532866e-01, -6.55878071520253902e-01, -4.20026350340952370e-02,
    1.66538611382291479e-01, -4.21977345555443334e-02, -9.62197152787697303e-03,
    7.21894324666309990e-03, -1.16516759185906517e-03, -2.15241674114950975e-04,
    1.28050282388116196e-04, -2.01348547807882387e-05, -1.25049348214267063e-06,
    1.13302723198169593e-06, -2.05633841697760707e-07, 6.11609510448141609e-09,
    5.00200764446922295e-09, -1.18127457048702004e-09, 1.04342671169110054e-10,
    7.78226343990507081e-12, -3.69680561864220598e-12, 5.10037028745447575e-13,
    -2.05832605356650664e-14, -5.34812253942301782e-15, 1.22677862823826084e-15,
    -1.18125930169745883e-16, 1.18669225475160037e-18, 1.41238065531803186e-18,
    -2.29874568443537022e-19,
)


def _temme_gammas(mu: float) -> tuple[float, float, float, float]:
    """(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2."""
    even = 0.0
    odd = 0.0
    p = 1.0
    for k, g in enumerate(_RGAMMA_TAYLOR):
        if k % 2 == 0:
            even += g * p
        else:
            odd += g * p
            p *= mu * mu
    # odd collects g_k mu^(k-1) for odd k.
    gampl = even + mu * odd
    gammi = even - mu * odd
    return -odd, even, gampl, gammi


class JYLog(NamedTuple):
    """J_nu(x), Y_nu(x) as sign and natural log of magnitude, plus log-derivatives.

    ``dj`` is J'/J and ``dy`` is Y'/Y.
    """

    sj: float
    lj: float
    sy: float
    ly: float
    dj: float
    dy: float
    branch: str

    @property
    def j(self) -> float:
        return self.sj * safe_exp(self.lj)

    @property
    def y(self) -> float:
        return self.sy * safe_exp(self.ly)


def _split(v: float, log_scale: float = 0.0) -> tuple[float, float]:
    if v == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, v), math.log(abs(v)) + log_scale


def _jy_hankel(nu: float, x: float, policy: SeriesPolicy) -> tuple[float, float, float, float]:
    four_mu_sq = 4.0 * nu * nu
    terms, _ = hankel_coefficients(four_mu_sq, x, policy.asymptotic_max_terms, 0.1 * EPS)
    p = 0.0
    q = 0.0
    for k, t in enumerate(terms):
        sgn = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sgn * t
        else:
            q += sgn * t
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    c, s = math.cos(chi), math.sin(chi)
    j = amp * (p * c - q * s)
    y = amp * (p * s + q * c)
    return j, y, p, q


def bessel_jy_log(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> JYLog:
    """J_nu and Y_nu at x > 0 in overflow-free form."""
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("nu and x must be finite")
    if nu < 0:
        raise DomainError("nu must be >= 0")
    if x <= 0:
        raise DomainError("x must be > 0")

    use_hankel = _use_asymptotic(4.0 * nu * nu, x, policy)
    if use_hankel:
        j, y, _, _ = _jy_hankel(nu, x, policy)
        j1, y1, _, _ = _jy_hankel(nu + 1.0, x, policy)
        sj, lj = _split(j)
        sy, ly = _split(y)
        dj = nu / x - j1 / j if j != 0.0 else math.inf
        dy = nu / x - y1 / y if y != 0.0 else math.inf
        return JYLog(sj, lj, sy, ly, dj, dy, "asymptotic")

    if x < _XMIN:
        nl = int(nu + 0.5)
    else:
        nl = max(0, int(nu - x + 1.0))
    mu = nu - nl
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi

    # Continued fraction for J'_nu / J_nu (modified Lentz).
    max_cf = policy.max_terms + int(4.0 * x) + 100
    isign = 1.0
    h = max(nu * xi, _TINY)
    b = xi2 * nu
    d = 0.0
    c = h
    for _ in range(max_cf):
        b += xi2
        d = b - d
        if abs(d) < _TINY:
            d = _TINY
        c = b - 1.0 / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        h *= delta
        if d < 0.0:
            isign = -isign
        if abs(delta - 1.0) < EPS:
            break
    else:
        raise NonConvergence(f"J'/J continued fraction did not converge (nu={nu}, x={x})")
    dj_top = h

    # Downward recurrence from nu to mu with rescaling.
    rjl = isign
    rjpl = h * rjl
    jscale = 0.0
    fact = nu * xi
    for _ in range(nl):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
        if abs(rjl) > BIG:
            rjl /= BIG
            rjpl /= BIG
            jscale += LOG_BIG
    if rjl == 0.0:
        rjl = EPS
    f = rjpl / rjl

    if x < _XMIN:
        x2 = 0.5 * x
        pimu = math.pi * mu
        fct = 1.0 if abs(pimu) < EPS else pimu / math.sin(pimu)
        dd = -math.log(x2)
        e = mu * dd
        fct2 = 1.0 if abs(e) < EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(mu)
        ff = 2.0 / math.pi * fct * (gam1 * math.cosh(e) + gam2 * fct2 * dd)
        e = math.exp(e)
        p = e / (gampl * math.pi)
        q = 1.0 / (e * math.pi * gammi)
        pimu2 = 0.5 * pimu
        fct3 = 1.0 if abs(pimu2) < EPS else math.sin(pimu2) / pimu2
        r = math.pi * pimu2 * fct3 * fct3
        cc = 1.0
        dd = -x2 * x2
        total = ff + r * q
        total1 = p
        mu2 = mu * mu
        for i in range(1, policy.max_terms + 1):
            ff = (i * ff + p + q) / (i * i - mu2)
            cc *= dd / i
            p /= i - mu
            q /= i + mu
            delta = cc * (ff + r * q)
            total += delta
            delta1 = cc * p - i * delta
            total1 += delta1
            if abs(delta) < (1.0 + abs(total)) * EPS:
                break
        else:
            raise NonConvergence(f"Temme series did not converge (nu={nu}, x={x})")
        rymu = -total
        ry1 = -total1 * xi2
        rymup = mu * xi * rymu - ry1
        rjmu = w / (rymup - f * rymu)
        branch = "series"
    else:
        a = 0.25 - mu * mu
        p = -0.5 * xi
        q = 1.0
        br = 2.0 * x
        bi = 2.0
        fct = a * xi / (p * p + q * q)
        cr = br + q * fct
        ci = bi + p * fct
        den = br * br + bi * bi
        dr = br / den
        di = -bi / den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        p, q = p * dlr - q * dli, p * dli + q * dlr
        for i in range(2, max_cf):
            a += 2 * (i - 1)
            bi += 2.0
            dr = a * dr + br
            di = a * di + bi
            if abs(dr) + abs(di) < _TINY:
                dr = _TINY
            fct = a / (cr * cr + ci * ci)
            cr = br + cr * fct
            ci = bi - ci * fct
            if abs(cr) + abs(ci) < _TINY:
                cr = _TINY
            den = dr * dr + di * di
            dr /= den
            di /= -den
            dlr = cr * dr - ci * di
            dli = cr * di + ci * dr
            p, q = p * dlr - q * dli, p * dli + q * dlr
            if abs(dlr - 1.0) + abs(dli) < EPS:
                break
        else:
            raise NonConvergence(f"Steed continued fraction did not converge (nu={nu}, x={x})")
        gam = (p - f) / q
        rjmu = math.copysign(math.sqrt(w / ((p - f) * gam + q)), rjl)
        rymu = rjmu * gam
        rymup = rymu * (p + q / gam)
        ry1 = mu * xi * rymu - rymup
        branch = "continued-fraction"

    # J_nu = isign * rjmu / (rjl * exp(jscale)).
    sj = math.copysign(1.0, isign) * math.copysign(1.0, rjmu) * math.copysign(1.0, rjl)
    lj = math.log(abs(rjmu)) - math.log(abs(rjl)) - jscale

    # Forward recurrence for Y from mu to nu with rescaling.
    yscale = 0.0
    for i in range(1, nl + 1):
        rytemp = (mu + i) * xi2 * ry1 - rymu
        rymu = ry1
        ry1 = rytemp
        if abs(ry1) > BIG:
            rymu /= BIG
            ry1 /= BIG
            yscale += LOG_BIG
    sy, ly = _split(rymu, yscale)
    dy = nu * xi - ry1 / rymu if rymu != 0.0 else math.inf
    return JYLog(sj, lj, sy, ly, dj_top, dy, branch)


def _use_asymptotic(four_mu_sq: float, x: float, policy: SeriesPolicy) -> bool:
    if policy.asymptotic_switch_x is not None:
        return x >= policy.asymptotic_switch_x
    if x < 8.0:
        return False
    return hankel_error_estimate(four_mu_sq, x, policy.asymptotic_max_terms) < EPS


def _check(nu: float, x: float) -> None:
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("nu and x must be finite")
    if nu < 0:
        raise DomainError("nu must be >= 0")


def bessel_j(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """J_nu(x) for real nu >= 0 and x >= 0."""
    _check(nu, x)
    if x < 0:
        raise DomainError("x must be >= 0")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    return bessel_jy_log(nu, x, policy).j


def bessel_y(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Y_nu(x) for real nu >= 0 and x > 0. Overflows to -inf near the origin."""
    _check(nu, x)
    if x <= 0:
        raise DomainError("Y_nu needs x > 0")
    return bessel_jy_log(nu, x, policy).y


def bessel_j_series(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """J_nu(x) from its power series; accurate while x**2/4 is not large."""
    _check(nu, x)
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    q = -0.25 * x * x
    t = 1.0
    total = 1.0
    small = 0
    for k in range(1, policy.max_terms + 1):
        t *= q / (k * (nu + k))
        total += t
        small = small + 1 if abs(t) < policy.rel_tol * abs(total) else 0
        if small >= 3:
            break
    else:
        raise NonConvergence("J power series did not reach tolerance")
    return total * math.exp(nu * math.log(0.5 * x) - math.lgamma(nu + 1.0))


# ---------------------------------------------------------------- modified

def _rgamma(a: float) -> float:
    """1/Gamma(a), zero at the poles."""
    if a <= 0 and a == math.floor(a):
        return 0.0
    if a < 170.0:
        return 1.0 / math.gamma(a)
    return math.exp(-math.lgamma(a))


def _i_series(nu: float, x: float, policy: SeriesPolicy) -> float:
    """I_nu(x) by its power series; nu may be negative and non-integer."""
    q = 0.25 * x * x
    total = 0.0
    qk = 1.0
    small = 0
    for k in range(policy.max_terms):
        if k > 0:
            qk *= q / k
        t = qk * _rgamma(k + nu + 1.0)
        total += t
        small = small + 1 if abs(t) < policy.rel_tol * abs(total) else 0
        if small >= 3:
            break
    else:
        raise NonConvergence("I power series did not reach tolerance")
    return total * (0.5 * x) ** nu


def bessel_i(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """I_nu(x) for real nu >= 0, x >= 0."""
    _check(nu, x)
    if x < 0:
        raise DomainError("x must be >= 0")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if _use_asymptotic(4.0 * nu * nu, x, policy):
        if x > LOG_MAX:
            raise SpecfunOverflow(f"I_nu({x}) overflows double precision")
        terms, _ = hankel_coefficients(4.0 * nu * nu, x, policy.asymptotic_max_terms, 0.1 * EPS)
        s = sum(t if k % 2 == 0 else -t for k, t in enumerate(terms))
        return math.exp(x) / math.sqrt(2.0 * math.pi * x) * s
    v = _i_series(nu, x, policy)
    if math.isinf(v):
        raise SpecfunOverflow(f"I_nu({x}) overflows double precision")
    return v


def k_real_integral(nu: float, x: float, h: float = 0.05) -> float:
    """K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule.

    The integrand is entire and decays doubly exponentially, so the rule
    converges geometrically in 1/h.
    """
    total = 0.5 * math.exp(-x)
    k = 1
    while True:
        t = k * h
        term = math.exp(-x * math.cosh(t) + nu * t) * 0.5 * (1.0 + math.exp(-2.0 * nu * t))
        total += term
        if term < EPS * 1e-3 * total and x * math.cosh(t) > nu * t + 1.0:
            break
        k += 1
        if k > 200000:
            raise NonConvergence("K_nu integral did not converge")
    return h * total


def _k_difference(nu: float, x: float, policy: SeriesPolicy) -> float:
    return math.pi * (_i_series(-nu, x, policy) - _i_series(nu, x, policy)) / (2.0 * math.sin(nu * math.pi))


_INT_OFFSET = 1e-6


def bessel_k(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """K_nu(x) for real nu >= 0, x > 0.

    Small x uses the sine-weighted difference of I_{-nu} and I_nu; for an
    integer order the two neighbours nu +/- 1e-6 are averaged. Orders close to
    (but not at) an integer and larger x use the integral representation, and
    very large x the Hankel expansion.
    """
    _check(nu, x)
    if x <= 0:
        raise DomainError("K_nu needs x > 0")
    four_mu_sq = 4.0 * nu * nu
    if _use_asymptotic(four_mu_sq, x, policy):
        terms, _ = hankel_coefficients(four_mu_sq, x, policy.asymptotic_max_terms, 0.1 * EPS)
        return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * sum(terms)
    if x < _XMIN and nu <= 20.0:
        if nu == math.floor(nu):
            lo = _k_difference(nu - _INT_OFFSET, x, policy) if nu > 0 else _k_difference(_INT_OFFSET, x, policy)
            hi = _k_difference(nu + _INT_OFFSET, x, policy)
            return 0.5 * (lo + hi)
        if abs(math.sin(nu * math.pi)) > 1e-3:
            return _k_difference(nu, x, policy)
    return k_real_integral(nu, x)
