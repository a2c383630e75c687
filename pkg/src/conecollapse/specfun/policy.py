"""Truncation policy and helpers shared by the Bessel kernels."""

from __future__ import annotations

import math
from dataclasses import dataclass

from conecollapse.errors import DomainError

EPS = 2.220446049250313e-16
LOG_MAX = 709.782712893384
# Rescaling threshold used by the recurrences; keeps mantissas far from overflow.
BIG = 1e200
LOG_BIG = math.log(BIG)


@dataclass(frozen=True)
class SeriesPolicy:
    """How far to sum power series and when to switch to large-x forms.

    ``asymptotic_switch_x=None`` selects the branch per call by comparing the
    estimated rounding error of the power series with the smallest term of the
    asymptotic expansion. A number forces the large-x form for ``x >= switch``.
    """

    rel_tol: float = 1e-15
    max_terms: int = 500
    asymptotic_switch_x: float | None = None
    asymptotic_max_terms: int = 60

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.asymptotic_switch_x is not None and not self.asymptotic_switch_x > 0:
            raise DomainError("asymptotic_switch_x must be positive")


DEFAULT_POLICY = SeriesPolicy()


def safe_exp(v: float) -> float:
    if v > LOG_MAX:
        return math.inf
    if v < -745.2:
        return 0.0
    return math.exp(v)


def signed_log(v: float) -> tuple[float, float]:
    """Split ``v`` into ``(sign, log|v|)``; zero maps to ``(0.0, -inf)``."""
    if v == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, v), math.log(abs(v))


def _hankel_terms(four_mu_sq: float, x: float, max_terms: int):
    """Yield (k, a_k(mu) / x**k) until the expansion starts to diverge.

    Terms may grow at first when |mu| is comparable with x; growth only counts
    as divergence once k is past |mu|, where successive ratios increase.
    """
    k_turn = 0.5 * math.sqrt(abs(four_mu_sq)) + 1.0
    t = 1.0
    yield 0, t
    for k in range(1, max_terms + 1):
        nxt = t * (four_mu_sq - (2 * k - 1) ** 2) / (8.0 * k * x)
        if k > k_turn and abs(nxt) >= abs(t):
            return
        yield k, nxt
        if nxt == 0.0:
            return
        t = nxt


def hankel_coefficients(four_mu_sq: float, x: float, max_terms: int, rel_tol: float):
    """Terms ``a_k(mu) / x**k`` of the Hankel expansion, optimally truncated.

    ``four_mu_sq`` is ``4 mu**2`` (negative for imaginary order). Summation
    stops at the first term past the turning index that drops below
    ``rel_tol`` or at the smallest term. Returns the list of kept terms and the
    magnitude of the first omitted term as the truncation error estimate.
    """
    k_turn = 0.5 * math.sqrt(abs(four_mu_sq)) + 1.0
    terms = []
    for k, t in _hankel_terms(four_mu_sq, x, max_terms):
        if k > k_turn and abs(t) < rel_tol:
            return terms, abs(t)
        terms.append(t)
    return terms, abs(terms[-1]) if len(terms) > 1 else 1.0


def hankel_error_estimate(four_mu_sq: float, x: float, max_terms: int = 60) -> float:
    """Smallest attainable relative error of the Hankel expansion at ``x``.

    The largest term is included so that cancellation among growing early
    terms is charged to the estimate.
    """
    k_turn = 0.5 * math.sqrt(abs(four_mu_sq)) + 1.0
    best = math.inf
    biggest = 1.0
    for k, t in _hankel_terms(four_mu_sq, x, max_terms):
        biggest = max(biggest, abs(t))
        if k > k_turn:
            best = min(best, abs(t))
    if not math.isfinite(best):
        return 1.0
    return best + EPS * (biggest - 1.0)
