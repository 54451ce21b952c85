#!/usr/bin/env python
"""test_specfun.py - Tests for reluinit.lib.specfun
"""
import math

import pytest
from scipy import special

from reluinit.lib.specfun import (
    SpecialFunctionError, incomplete_gamma_bounds, incomplete_gamma_upper,
    log_incomplete_gamma_upper, normal_cdf, regularized_gamma_upper,
)


@pytest.mark.parametrize(('z', 'expected'), [
    (0.0, 0.5),
    (1.0, 0.8413447460685429),
    (-1.0, 0.15865525393145707),
    (-8.0, 6.220960574271785e-16),
])
def test_normal_cdf(z, expected):
    assert normal_cdf(z) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize('x', [0.5, 2.0, 10.0, 50.0])
def test_regularized_gamma_upper_exponential(x):
    assert regularized_gamma_upper(1.0, x) == pytest.approx(
        math.exp(-x), rel=1e-13)


@pytest.mark.parametrize('x', [0.01, 0.3, 1.0, 4.0])
def test_regularized_gamma_upper_half(x):
    assert regularized_gamma_upper(0.5, x) == pytest.approx(
        math.erfc(math.sqrt(x)), rel=1e-12)


@pytest.mark.parametrize('a', [0.5, 1.5, 3.0, 32.0, 2048.0])
@pytest.mark.parametrize('ratio', [0.1, 0.9, 1.0, 1.1, 3.0])
def test_regularized_gamma_upper_matches_scipy(a, ratio):
    x = a * ratio
    assert regularized_gamma_upper(a, x) == pytest.approx(
        special.gammaincc(a, x), rel=1e-9, abs=1e-300)


@pytest.mark.parametrize('a', [0.5, 1.0, 4.5])
def test_incomplete_gamma_at_zero(a):
    assert incomplete_gamma_upper(a, 0.0) == pytest.approx(
        math.gamma(a), rel=1e-14)


def test_log_incomplete_gamma_large_shape():
    # Gamma(400) overflows a double, its logarithm does not
    a = 400.0
    expected = math.log(special.gammaincc(a, 450.0)) + special.gammaln(a)
    assert log_incomplete_gamma_upper(a, 450.0) == pytest.approx(
        expected, rel=1e-12)


@pytest.mark.parametrize(('a', 'x'), [(1.5, 1.0), (2.5, 3.0), (4.0, 10.0),
                                      (32.0, 40.0)])
def test_incomplete_gamma_bounds_bracket(a, x):
    lo, hi = incomplete_gamma_bounds(a, x)
    value = incomplete_gamma_upper(a, x)
    assert lo <= value <= hi


@pytest.mark.parametrize(('a', 'x'), [(1.0, 2.0), (3.0, 1.5), (0.5, 1.0)])
def test_incomplete_gamma_bounds_domain(a, x):
    with pytest.raises(SpecialFunctionError):
        incomplete_gamma_bounds(a, x)


@pytest.mark.parametrize(('a', 'x'), [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5)])
def test_regularized_gamma_upper_domain(a, x):
    with pytest.raises(ValueError):
        regularized_gamma_upper(a, x)
