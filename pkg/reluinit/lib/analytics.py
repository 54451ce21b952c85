#!/usr/bin/env python
"""analytics.py - Closed form neuron statistics

State probabilities of one dimensional neurons under random initialization,
statistics of Gaussian weight norms, the expected squared output of a
He initialized neuron and the direction density of uniform weights.
"""
import math

import numpy as np
from scipy import optimize, special

from reluinit import config
from reluinit.lib import ratiodist
from reluinit.lib.ratiodist import Dirac, RatioPair
from reluinit.lib.specfun import (  # noqa
    incomplete_gamma_upper,
    incomplete_gamma_bounds,
    normal_cdf,
    regularized_gamma_upper,
)

SQRT2 = math.sqrt(2.0)
SQRTPI = math.sqrt(math.pi)
#: allowed deviation of a probability triple from summing to one
SUM_TOLERANCE = 1e-10
#: allowed deviation of a direction from unit norm
UNIT_TOLERANCE = 1e-10


class UnsupportedContinuityError(ValueError):
    pass


class AnalyticsDomainError(ValueError):
    pass


class StateProbs(object):
    """Probabilities of the three neuron states"""
    def __init__(self, p_fully_active, p_semi_active, p_inactive):
        values = [float(p_fully_active), float(p_semi_active),
                  float(p_inactive)]
        # clip rounding noise at the ends of [0, 1]
        values = [min(max(v, 0.0), 1.0) for v in values]
        if abs(sum(values) - 1.0) > SUM_TOLERANCE:
            raise AnalyticsDomainError(
                'state probabilities {0} do not sum to 1'.format(values))
        self.p_fully_active, self.p_semi_active, self.p_inactive = values

    def as_tuple(self):
        return self.p_fully_active, self.p_semi_active, self.p_inactive

    def __iter__(self):
        return iter(self.as_tuple())

    def __repr__(self):
        return 'StateProbs(fa={0!r}, sa={1!r}, ia={2!r})'.format(
            *self.as_tuple())


def _check_window(x_min, x_max):
    x_min = float(x_min)
    x_max = float(x_max)
    if not x_min < x_max:
        raise AnalyticsDomainError(
            'need x_min < x_max, got [{0}, {1}]'.format(x_min, x_max))
    return x_min, x_max


def zero_bias_state_probabilities(weight, x_min, x_max):
    """State probabilities when every knot sits at 0

    :param ScalarDist weight: atom free weight law
    :rtype: StateProbs
    """
    x_min, x_max = _check_window(x_min, x_max)
    if x_min < 0 < x_max:
        return StateProbs(1.0, 0.0, 0.0)
    p_pos = weight.prob_positive()
    p_neg = weight.prob_negative()
    if x_min >= 0:
        return StateProbs(0.0, p_pos, p_neg)
    return StateProbs(0.0, p_neg, p_pos)


def state_probabilities(bias, weight, x_min, x_max):
    """Probabilities of the neuron states on the window [x_min, x_max]

    With ``F`` the law of ``b/a`` (the negated knot) and its split ``F+``,
    ``F-``::

        p_fa = F(-x_min) - F(-x_max)
        p_sa = P_a([0, inf)) + F-(-x_max) - F+(-x_min)
        p_ia = P_a((-inf, 0]) + F+(-x_max) - F-(-x_min)

    The formulas need a continuous ``F``; a point mass bias at 0 is only
    accepted for windows with ``x_min < 0 < x_max`` where every neuron is
    fully active.

    :param ScalarDist bias: law of the biases
    :param ScalarDist weight: atom free law of the weights
    :rtype: StateProbs
    """
    x_min, x_max = _check_window(x_min, x_max)
    if isinstance(bias, Dirac) and bias.b == 0:
        if x_min < 0 < x_max:
            return StateProbs(1.0, 0.0, 0.0)
        raise UnsupportedContinuityError(
            'a zero bias puts every knot at 0, the knot law has an atom and '
            'the state formulas need a continuous one; use '
            'zero_bias_state_probabilities for the direct case analysis')
    pair = RatioPair(bias, weight)
    cdf = ratiodist.cdf_ratio
    p_fa = cdf(pair, -x_min) - cdf(pair, -x_max)
    p_sa = (
        1.0 - float(weight.cdf_left(0.0))
        + ratiodist.fminus(pair, -x_max) - ratiodist.fplus(pair, -x_min)
    )
    p_ia = (
        float(weight.cdf(0.0))
        + ratiodist.fplus(pair, -x_max) - ratiodist.fminus(pair, -x_min)
    )
    return StateProbs(p_fa, p_sa, p_ia)


def inactive_probability_orthant(d):
    """Inactive probability of zero bias neurons with symmetric weights on
    data whose conic hull is [0, inf)^d"""
    return 2.0 ** -int(d)


class NormStats(object):
    """Moments of the Euclidean norm of a centered Gaussian vector"""
    def __init__(self, mean, variance, mode, gautschi_lo, gautschi_hi):
        self.mean = mean
        self.variance = variance
        self.mode = mode
        self.gautschi_lo = gautschi_lo
        self.gautschi_hi = gautschi_hi

    def __repr__(self):
        return ('NormStats(mean={0!r}, variance={1!r}, mode={2!r}, '
                'gautschi=[{3!r}, {4!r}])').format(
                    self.mean, self.variance, self.mode,
                    self.gautschi_lo, self.gautschi_hi)


def _check_norm_args(d, sigma):
    if int(d) != d or d < 1:
        raise AnalyticsDomainError('d must be a positive integer')
    if not sigma > 0:
        raise AnalyticsDomainError('sigma must be positive')
    return int(d), float(sigma)


def expected_norm(d, sigma):
    """E||A||_2 for A ~ N(0, sigma^2 I_d)"""
    d, sigma = _check_norm_args(d, sigma)
    return sigma * SQRT2 * math.exp(
        special.gammaln((d + 1) / 2.0) - special.gammaln(d / 2.0))


def weight_norm_stats(d, sigma):
    """Mean, variance, mode and Gautschi bracket of ||A||_2

    :param int d: dimension
    :param float sigma: coordinate standard deviation
    :rtype: NormStats
    """
    d, sigma = _check_norm_args(d, sigma)
    mean = expected_norm(d, sigma)
    return NormStats(
        mean=mean,
        variance=max(d * sigma * sigma - mean * mean, 0.0),
        mode=sigma * math.sqrt(d - 1),
        gautschi_lo=sigma * math.sqrt(d - 0.5),
        gautschi_hi=sigma * math.sqrt(d - 0.25),
    )


def weight_norm_density(x, d, sigma):
    """Density of ||A||_2, a scaled chi law with d degrees of freedom

    :param x: evaluation points, scalar or array
    :rtype: float or numpy.ndarray
    """
    d, sigma = _check_norm_args(d, sigma)
    x = np.asarray(x, dtype=float)
    positive = x > 0
    safe = np.where(positive, x, 1.0)
    log_density = (
        (1 - d / 2.0) * math.log(2.0) - special.gammaln(d / 2.0)
        - d * math.log(sigma) + (d - 1) * np.log(safe)
        - safe * safe / (2 * sigma * sigma)
    )
    density = np.where(positive, np.exp(log_density), 0.0)
    if d == 1:
        density = np.where(x == 0, math.sqrt(2 / math.pi) / sigma, density)
    return float(density) if density.ndim == 0 else density


def weight_norm_tail(d, sigma, s):
    """P(||A||_2 >= s) = Q(d/2, s^2 / (2 sigma^2))"""
    d, sigma = _check_norm_args(d, sigma)
    s = float(s)
    if s < 0:
        raise AnalyticsDomainError('s must be non negative')
    return regularized_gamma_upper(d / 2.0, s * s / (2 * sigma * sigma))


def weight_norm_tail_bound(d, delta):
    """Upper bound of P(||A||_2 >= sqrt(2) + delta) under He scaling

    For ``sigma^2 = 2/d`` and ``delta > 0``, with ``g = sqrt(2) delta +
    delta^2 / 2``::

        2 sqrt(d) / (sqrt(pi) (4 + 2 sqrt(2) d delta + d delta^2))
            * ((1 + g) / exp(g))^(d / 2)

    The derivation holds for d >= 3.
    """
    d = int(d)
    delta = float(delta)
    if d < 1:
        raise AnalyticsDomainError('d must be a positive integer')
    if not delta > 0:
        raise AnalyticsDomainError(
            'the gamma bound needs delta > 0, got {0}'.format(delta))
    g = SQRT2 * delta + delta * delta / 2
    prefactor = 2 * math.sqrt(d) / (
        SQRTPI * (4 + 2 * SQRT2 * d * delta + d * delta * delta))
    return prefactor * math.exp(d / 2.0 * (math.log1p(g) - g))


def lipschitz_tail_bound(d, delta):
    """Concentration bound P(||A|| >= E||A|| + sqrt(tau/d)) <= exp(-tau/4)
    read at ||A|| = sqrt(2) + delta under He scaling"""
    d = int(d)
    gap = SQRT2 + float(delta) - expected_norm(d, math.sqrt(2.0 / d))
    if gap <= 0:
        return 1.0
    return min(1.0, math.exp(-d * gap * gap / 4))


def norm_threshold_exact(d, level=config.NORM_LEVEL):
    """Smallest delta with P(||A||_2 >= sqrt(2) + delta) <= level, He
    scaling"""
    sigma = math.sqrt(2.0 / d)

    def excess(delta):
        return weight_norm_tail(d, sigma, SQRT2 + delta) - level

    return optimize.brentq(excess, -SQRT2, 10 * SQRT2 + 10, xtol=1e-12)


def norm_threshold_gamma(d, level=config.NORM_LEVEL):
    """Smallest delta for which the gamma bound drops to ``level``"""
    def excess(delta):
        return weight_norm_tail_bound(d, delta) - level

    hi = 1.0
    while excess(hi) > 0:
        hi *= 2
    return optimize.brentq(excess, 1e-12, hi, xtol=1e-12)


def norm_threshold_lipschitz(d, level=config.NORM_LEVEL):
    """delta = E||A|| + sqrt(4 ln(1/level) / d) - sqrt(2)"""
    d = int(d)
    return expected_norm(d, math.sqrt(2.0 / d)) \
        + math.sqrt(4 * math.log(1.0 / level) / d) - SQRT2


def psi_output_size(u, b):
    """Expected squared relu output of a He initialized neuron

    ``E relu(<A, x> + b)^2`` with ``A ~ N(0, 2/d I_d)`` depends on x only
    through ``u = ||x||_2 / sqrt(d)``. With ``s = sqrt(2) u`` the standard
    deviation of ``<A, x>``::

        Psi(u, b) = (s^2 + b^2) Phi(b/s) + b s phi(b/s)

    which for ``b >= 0`` equals
    ``u^2 (2 - Gamma(1/2, b^2/(4u^2))/sqrt(pi))
    + u b/sqrt(pi) exp(-b^2/(4u^2)) + b^2 Phi(b/(sqrt(2) u))``.

    :param float u: normalized input norm, non negative
    :param float b: bias
    :rtype: float
    """
    u = float(u)
    b = float(b)
    if u < 0:
        raise AnalyticsDomainError('u must be non negative')
    if u == 0:
        return b * b if b >= 0 else 0.0
    ratio = b * b / (4 * u * u)
    gamma_half = incomplete_gamma_upper(0.5, ratio) / SQRTPI
    first = 2.0 - gamma_half if b >= 0 else gamma_half
    return (
        u * u * first
        + u * b / SQRTPI * math.exp(-ratio)
        + b * b * float(normal_cdf(b / (SQRT2 * u)))
    )


def direction_density_uniform_weights(xi):
    """Surface density of the direction of Uniform[-alpha, alpha]^d weights

    ``h(xi) = 1 / (d 2^d ||xi||_inf^d)``, independent of alpha.

    :param xi: unit vector, or an n x d array of unit rows
    :rtype: float or numpy.ndarray
    """
    xi = np.asarray(xi, dtype=float)
    if xi.ndim not in (1, 2):
        raise AnalyticsDomainError('xi must be a vector or a matrix of rows')
    d = xi.shape[-1]
    if np.any(np.abs(np.linalg.norm(xi, axis=-1) - 1.0) > UNIT_TOLERANCE):
        raise AnalyticsDomainError('xi must be a unit vector')
    density = 1.0 / (d * 2.0 ** d * np.max(np.abs(xi), axis=-1) ** d)
    return float(density) if xi.ndim == 1 else density


def direction_density_bounds(d):
    """Range of the uniform weight direction density on S^(d-1)"""
    low = 1.0 / (d * 2.0 ** d)
    return low, low * d ** (d / 2.0)


def sphere_density(d):
    """Density of the uniform law on S^(d-1) w.r.t. surface measure"""
    return math.exp(special.gammaln(d / 2.0)) / (2 * math.pi ** (d / 2.0))
