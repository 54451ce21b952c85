#!/usr/bin/env python
"""montecarlo.py - Sampling oracles for the analytic results

Every function here draws from a seeded generator and returns plain
numbers, so the same oracles serve the unit tests and the validate task.
"""
import math

import numpy as np
from scipy import integrate, stats

from reluinit.lib import analytics
from reluinit.lib import rng as rng_mod
from reluinit.lib.geometry import DataSet, layer_state_codes
from reluinit.lib.initstrat import WeightScheme
from reluinit.lib.ratiodist import sample_ratio

#: samples drawn per chunk by the chunked estimators
CHUNK = 10 ** 6


def binomial_se(p, n):
    """Standard error of a frequency estimate of probability p"""
    return math.sqrt(max(p * (1.0 - p), 0.0) / n)


def within_sigmas(estimate, expected, se, sigmas):
    """Whether an estimate is within ``sigmas`` standard errors

    A vanishing standard error only accepts exact agreement.
    """
    if se == 0:
        return estimate == expected
    return abs(estimate - expected) <= sigmas * se


def ks_distance(samples, cdf):
    """Kolmogorov Smirnov distance between samples and a cdf callable"""
    return float(stats.kstest(np.asarray(samples), cdf).statistic)


def ratio_ks_distance(pair, cdf, n, seed):
    """KS distance of ``n`` sampled ratios from the given cdf"""
    return ks_distance(sample_ratio(pair, n, seed), cdf)


def empirical_cdf(samples, points):
    """Fraction of samples ``<= z`` for every z in points"""
    ordered = np.sort(np.asarray(samples))
    return np.searchsorted(ordered, np.asarray(points), side='right') \
        / float(ordered.shape[0])


def state_frequencies(bias, weight, x_min, x_max, n_neurons, seed):
    """Empirical neuron state frequencies for scalar neurons

    Weights and biases are drawn from the given laws and classified against
    the window ``[x_min, x_max]``.

    :rtype: tuple
    :returns: ``(p_fa, p_sa, p_ia)`` frequencies
    """
    gen = rng_mod.generator(seed)
    a = weight.sample(gen, n_neurons)
    b = bias.sample(gen, n_neurons)
    codes = layer_state_codes(DataSet([x_min, x_max]), a.reshape(-1, 1), b)
    counts = np.bincount(codes[codes >= 0], minlength=3)
    return tuple(counts / float(n_neurons))


def orthant_inactive_frequency(d, n_neurons, seed, extra_points=16):
    """Inactive frequency of zero bias He neurons on orthant spanning data

    The data holds the unit vectors plus random points of [0, 1]^d, so its
    conic hull is the positive orthant.
    """
    gen = rng_mod.generator(seed)
    points = np.vstack([np.eye(d), gen.uniform(0, 1, (extra_points, d))])
    weights = WeightScheme('he-normal').sample(gen, d, n_neurons)
    codes = layer_state_codes(DataSet(points), weights, np.zeros(n_neurons))
    return float(np.mean(codes == 2))


def norm_samples(d, sigma, n, seed):
    """Draw ||A||_2 for A ~ N(0, sigma^2 I_d) via the chi law"""
    gen = rng_mod.generator(seed)
    return sigma * np.sqrt(gen.chisquare(d, n))


def norm_tail_frequency(d, sigma, s, n, seed):
    return float(np.mean(norm_samples(d, sigma, n, seed) >= s))


def psi_estimate(u, b, n, seed, d=4):
    """Mean of relu(<A, x> + b)^2 with A ~ N(0, 2/d I_d) and
    ||x|| = u sqrt(d)

    :rtype: tuple
    :returns: ``(mean, standard error)``
    """
    gen = rng_mod.generator(seed)
    x = np.full(d, u)
    total = 0.0
    total_sq = 0.0
    remaining = int(n)
    while remaining:
        size = min(remaining, CHUNK)
        weights = gen.normal(0.0, math.sqrt(2.0 / d), (size, d))
        values = np.maximum(weights.dot(x) + b, 0.0) ** 2
        total += values.sum()
        total_sq += (values * values).sum()
        remaining -= size
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    return mean, math.sqrt(var / n)


def direction_chisquare(d, n, seed, bins=24):
    """Chi-square p-value of He normal directions being uniform on S^(d-1)

    In two dimensions the angle is binned, in three the height coordinate,
    both uniform under the uniform law on the sphere.
    """
    if d not in (2, 3):
        raise ValueError('direction binning is implemented for d = 2, 3')
    gen = rng_mod.generator(seed)
    rows = WeightScheme('he-normal').sample(gen, d, n)
    rows /= np.linalg.norm(rows, axis=1, keepdims=True)
    if d == 2:
        coordinate = np.arctan2(rows[:, 1], rows[:, 0])
        edges = np.linspace(-math.pi, math.pi, bins + 1)
    else:
        coordinate = rows[:, 2]
        edges = np.linspace(-1.0, 1.0, bins + 1)
    counts, _ = np.histogram(coordinate, bins=edges)
    return float(stats.chisquare(counts).pvalue)


def _uniform_direction_density(theta):
    return 1.0 / (8.0 * max(abs(math.cos(theta)), abs(math.sin(theta))) ** 2)


def uniform_direction_window(theta, half_width, n, seed):
    """Angle frequency of normalized Uniform[-1, 1]^2 weights in a window

    :rtype: tuple
    :returns: ``(observed frequency, expected frequency, standard error)``
    """
    gen = rng_mod.generator(seed)
    draws = gen.uniform(-1.0, 1.0, (n, 2))
    angles = np.arctan2(draws[:, 1], draws[:, 0])
    inside = np.abs(angles - theta) <= half_width
    lo, hi = theta - half_width, theta + half_width
    kinks = [k * math.pi / 4 for k in (-3, -1, 1, 3)]
    expected, _ = integrate.quad(
        _uniform_direction_density, lo, hi,
        points=[k for k in kinks if lo < k < hi] or None,
    )
    return float(np.mean(inside)), expected, binomial_se(expected, n)


def uniform_direction_total_mass():
    """Integral of the d = 2 uniform weight direction density over the
    circle"""
    value, _ = integrate.quad(
        _uniform_direction_density, -math.pi, math.pi,
        points=[-3 * math.pi / 4, -math.pi / 4, math.pi / 4,
                3 * math.pi / 4],
        epsabs=1e-12,
    )
    return value


def uniform_direction_linf(d, n, seed):
    """Mean sup norm of normalized Uniform[-1, 1]^d weights, two ways

    The direct estimate normalizes uniform cube draws. The reweighted one
    draws uniform sphere directions and weights them by the closed form
    direction density over the sphere density, so it agrees with the
    direct one only if that density is right.

    :rtype: tuple
    :returns: ``(direct mean, reweighted mean, standard error of their
        difference)``
    """
    gen = rng_mod.generator(seed)
    cube = gen.uniform(-1.0, 1.0, (n, d))
    cube /= np.linalg.norm(cube, axis=1, keepdims=True)
    direct = np.max(np.abs(cube), axis=1)
    sphere = gen.normal(size=(n, d))
    sphere /= np.linalg.norm(sphere, axis=1, keepdims=True)
    weights = (analytics.direction_density_uniform_weights(sphere)
               / analytics.sphere_density(d))
    reweighted = weights * np.max(np.abs(sphere), axis=1)
    se = math.sqrt((np.var(direct) + np.var(reweighted)) / n)
    return float(np.mean(direct)), float(np.mean(reweighted)), se
