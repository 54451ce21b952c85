#!/usr/bin/env python
"""specfun.py - Special functions shared by the analytic modules

The upper incomplete gamma function uses the power series for the lower
function when ``x < a + 1`` and a modified Lentz continued fraction
otherwise, the classic switch-over that keeps both expansions in their
fast converging range.
"""
import math

import numpy as np
from scipy import special

MACHEP = 1.11022302462515654042e-16
#: smallest magnitude allowed in the Lentz recursion
TINY = 1e-300
MAX_ITERATIONS = 100000


class SpecialFunctionError(ValueError):
    pass


def normal_cdf(z):
    """Standard normal cumulative distribution function

    Evaluated with the Cephes ``ndtr`` routine, an erf/erfc rational
    approximation with double precision accuracy in both tails.

    :param z: real number or array
    :rtype: float or numpy.ndarray
    """
    return special.ndtr(z)


def normal_pdf(z):
    z = np.asarray(z, dtype=float)
    return np.exp(-0.5 * z * z) / math.sqrt(2 * math.pi)


def _lower_series(a, x):
    """gamma(a, x) * exp(x) * x**-a / Gamma(a), summed as a power series"""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(MAX_ITERATIONS):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * MACHEP:
            return total
    raise SpecialFunctionError(
        'incomplete gamma series did not converge for a={0}, x={1}'.format(
            a, x)
    )


def _upper_fraction(a, x):
    """Gamma(a, x) * exp(x) * x**-a via the modified Lentz method"""
    b = x + 1.0 - a
    c = 1.0 / TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITERATIONS):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < TINY:
            d = TINY
        c = b + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < MACHEP:
            return h
    raise SpecialFunctionError(
        'incomplete gamma fraction did not converge for a={0}, x={1}'.format(
            a, x)
    )


def _check_domain(a, x):
    if not a > 0:
        raise SpecialFunctionError(
            'incomplete gamma needs a > 0, got {0}'.format(a))
    if not x >= 0:
        raise SpecialFunctionError(
            'incomplete gamma needs x >= 0, got {0}'.format(x))


def regularized_gamma_upper(a, x):
    """Q(a, x) = Gamma(a, x) / Gamma(a)

    :param float a: shape, positive
    :param float x: lower integration limit, non negative
    :rtype: float
    """
    a = float(a)
    x = float(x)
    _check_domain(a, x)
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    log_prefactor = a * math.log(x) - x - math.lgamma(a)
    if x < a + 1.0:
        lower = math.exp(log_prefactor) * _lower_series(a, x)
        return max(0.0, 1.0 - lower)
    return math.exp(log_prefactor + math.log(_upper_fraction(a, x)))


def log_incomplete_gamma_upper(a, x):
    """Natural logarithm of Gamma(a, x), usable where Gamma(a) overflows"""
    a = float(a)
    x = float(x)
    _check_domain(a, x)
    if x == 0:
        return math.lgamma(a)
    if math.isinf(x):
        return -math.inf
    log_prefactor = a * math.log(x) - x
    if x < a + 1.0:
        upper = regularized_gamma_upper(a, x)
        if upper == 0.0:
            return -math.inf
        return math.log(upper) + math.lgamma(a)
    return log_prefactor + math.log(_upper_fraction(a, x))


def incomplete_gamma_upper(a, x):
    """Upper incomplete gamma function

    Gamma(a, x) = integral from x to infinity of exp(-t) t**(a-1) dt

    :param float a: positive shape
    :param float x: non negative lower limit, x = 0 gives Gamma(a)
    :rtype: float
    """
    return math.exp(log_incomplete_gamma_upper(a, x))


def incomplete_gamma_bounds(a, x):
    """Elementary bracket of Gamma(a, x)

    Lower bound min(1, a) x**(a-1) exp(-x), upper bound
    x**a exp(-x) / (x - a + 1), the latter valid for a > 1 and x > a - 1.

    :rtype: tuple(float, float)
    """
    a = float(a)
    x = float(x)
    if not (a > 1 and x > a - 1):
        raise SpecialFunctionError(
            'the refined bound needs a > 1 and x > a - 1, got a={0}, '
            'x={1}'.format(a, x)
        )
    kernel = math.exp((a - 1) * math.log(x) - x)
    return min(1.0, a) * kernel, x * kernel / (x - a + 1)


def log_gamma(a):
    return special.gammaln(a)
