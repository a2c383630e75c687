"""Zeros of K_{i nu}(x), labelled from the largest (n = 1) downwards."""

from __future__ import annotations

import math

from conecollapse.errors import BracketFailure, DomainError
from conecollapse.specfun.gamma import arg_gamma_continuous
from conecollapse.specfun.imaginary import k_inu
from conecollapse.specfun.policy import DEFAULT_POLICY, SeriesPolicy

EXPAND_FACTOR = 1.5
MAX_EXPANSIONS = 40
REL_WIDTH = 1e-12


def seed_zero(nu: float, n: int) -> float:
    """Small-x estimate x_n = 2 exp((-n pi + phi_0) / nu)."""
    return 2.0 * math.exp((-n * math.pi + arg_gamma_continuous(0, nu)) / nu)


def _bracket(nu: float, n: int, policy: SeriesPolicy) -> tuple[float, float, float, float]:
    """Sign-changing interval in ln x around the n-th seed."""
    center = math.log(seed_zero(nu, n))
    half = 0.5 * math.pi / nu
    for _ in range(MAX_EXPANSIONS + 1):
        lo, hi = center - half, center + half
        klo = k_inu(nu, math.exp(lo), policy)
        khi = k_inu(nu, math.exp(hi), policy)
        if klo == 0.0:
            return lo, lo, klo, klo
        if khi == 0.0:
            return hi, hi, khi, khi
        if (klo < 0) != (khi < 0):
            return lo, hi, klo, khi
        half *= EXPAND_FACTOR
    raise BracketFailure(f"no sign change of K_(i{nu}) near zero n={n}")


def k_inu_zero_bracket(nu: float, n: int, policy: SeriesPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """(x_lo, x_hi) with a sign change of K_{i nu} and x_hi - x_lo < 1e-12 x."""
    if not nu > 0:
        raise DomainError("nu must be positive")
    if n < 1:
        raise DomainError("zero index starts at 1")
    lo, hi, klo, _ = _bracket(nu, n, policy)
    # Bisection in ln x; the width in ln x equals the relative width in x.
    while hi - lo > 0.5 * REL_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        km = k_inu(nu, math.exp(mid), policy)
        if km == 0.0:
            return math.exp(mid), math.exp(mid)
        if (km < 0) == (klo < 0):
            lo, klo = mid, km
        else:
            hi = mid
    return math.exp(lo), math.exp(hi)


def find_k_inu_zeros(
    nu: float, n_from: int, n_to: int, policy: SeriesPolicy = DEFAULT_POLICY
) -> list[float]:
    """Zeros x_n of K_{i nu} for n_from <= n <= n_to, in descending x."""
    if not nu > 0:
        raise DomainError("nu must be positive")
    if n_from < 1 or n_to < n_from:
        raise DomainError("need 1 <= n_from <= n_to")
    roots = []
    for n in range(n_from, n_to + 1):
        a, b = k_inu_zero_bracket(nu, n, policy)
        x = 0.5 * (a + b)
        if roots and not x < roots[-1]:
            raise BracketFailure(f"zero n={n} coincides with its predecessor")
        roots.append(x)
    return roots
