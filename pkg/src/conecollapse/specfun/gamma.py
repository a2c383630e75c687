"""Complex log-gamma with a branch that stays continuous along vertical lines."""

from __future__ import annotations

import cmath
import math

from conecollapse.errors import DomainError

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
# Bernoulli numbers B_{2k} / (2k (2k-1)) for the Stirling tail.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_SHIFT_RADIUS = 10.0


def loggamma_complex(z: complex) -> complex:
    """log Gamma(z) for Re z > 0.

    The argument is shifted up by integers until ``|z| > 10`` and the Stirling
    series is applied there. Each shift contributes a principal ``log`` of a
    number with positive real part, so the imaginary part is a sum of terms
    that never wrap and the result is continuous in ``Im z``.
    """
    z = complex(z)
    if not z.real > 0:
        raise DomainError("loggamma_complex needs Re z > 0")
    shift = 0j
    while abs(z) <= _SHIFT_RADIUS:
        shift += cmath.log(z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    tail = 0j
    p = inv
    for c in _STIRLING:
        tail += c * p
        p *= inv2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + tail - shift


def arg_gamma_continuous(s: int, nu: float) -> float:
    """Continuous phase arg Gamma(1 + s + i nu), tending to 0 as nu -> 0."""
    if s < 0 or int(s) != s:
        raise DomainError("s must be a nonnegative integer")
    if nu < 0 or not math.isfinite(nu):
        raise DomainError("nu must be finite and nonnegative")
    if nu == 0.0:
        return 0.0
    return loggamma_complex(complex(1.0 + s, nu)).imag


def phase_sequence(nu: float, n: int) -> list[float]:
    """phi_{nu,s} for s = 0..n-1 using the recurrence phi_s = phi_{s-1} + atan(nu/s)."""
    out = [arg_gamma_continuous(0, nu)]
    for s in range(1, n):
        out.append(out[-1] + math.atan2(nu, s))
    return out


def log_abs_gamma_imag(s: int, nu: float) -> float:
    """log|Gamma(1 + s + i nu)|."""
    return loggamma_complex(complex(1.0 + s, nu)).real
