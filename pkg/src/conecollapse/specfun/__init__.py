"""Bessel functions of real and purely imaginary order."""

from conecollapse.specfun.gamma import arg_gamma_continuous, loggamma_complex
from conecollapse.specfun.imaginary import (
    AsymptoticCoeffs,
    Evaluation,
    ImaginaryOrderTriple,
    asymptotic_coeffs,
    f_inu,
    fg_inu,
    g_inu,
    k_inu,
    k_inu_eval,
    l_inu,
    l_inu_eval,
    small_x_forms,
)
from conecollapse.specfun.policy import DEFAULT_POLICY, SeriesPolicy
from conecollapse.specfun.real import (
    JYLog,
    bessel_i,
    bessel_j,
    bessel_jy_log,
    bessel_k,
    bessel_y,
)
from conecollapse.specfun.zeros import find_k_inu_zeros, k_inu_zero_bracket, seed_zero
