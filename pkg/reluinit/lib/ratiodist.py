#!/usr/bin/env python
"""ratiodist.py - Ratio distributions of bias and weight laws

The knot of a one dimensional ReLU neuron sits at ``-b/a``, so everything
about neuron states reduces to the law of ``X/Y`` for a numerator law ``P``
(the bias) and a denominator law ``Q`` (the weight). The cumulative
distribution function splits as ``F = F+ + F-`` where ``F+`` collects the
events with ``Y > 0`` and ``F-`` those with ``Y < 0``::

    F+(z) = P x Q(x <= z y, y > 0)
    F-(z) = P x Q(x >= z y, y < 0)

Closed forms are registered for the normal, uniform and Dirac families;
every other pair is integrated numerically over the denominator.
"""
import logging
import math
from collections.abc import Mapping

import numpy as np
from scipy import integrate, special

from reluinit import config
from reluinit.lib import rng as rng_mod
from reluinit.lib.specfun import normal_cdf, normal_pdf

LOGGER = logging.getLogger(__name__)


class RatioValidationError(ValueError):
    pass


class RatioDomainError(ValueError):
    pass


class ScalarDist(object):
    """A one dimensional law used as bias or weight distribution

    Subclasses provide the right continuous cdf, its left limit, the
    density of the continuous part and a sampler. All evaluation methods
    accept scalars or numpy arrays.
    """
    kind = None

    def cdf(self, x):
        raise NotImplementedError()

    def cdf_left(self, x):
        return self.cdf(x) - self.mass_at(x)

    def mass_at(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def pdf(self, x):
        raise NotImplementedError()

    def sample(self, rng, size):
        raise NotImplementedError()

    @property
    def is_atomic(self):
        return False

    @property
    def is_symmetric(self):
        return False

    def support(self):
        """Closed interval carrying all of the mass

        :rtype: tuple(float, float)
        """
        raise NotImplementedError()

    def prob_positive(self):
        """P((0, inf))"""
        return 1.0 - float(self.cdf(0.0))

    def prob_negative(self):
        """P((-inf, 0))"""
        return float(self.cdf_left(0.0))

    def _key(self):
        raise NotImplementedError()

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.kind,) + self._key())

    def __repr__(self):
        return '{0}({1})'.format(
            type(self).__name__, ', '.join(repr(v) for v in self._key())
        )


class Normal(ScalarDist):
    """Centered normal law

    :param float sigma: standard deviation, positive
    """
    kind = 'normal'

    def __init__(self, sigma):
        sigma = float(sigma)
        if not (sigma > 0 and math.isfinite(sigma)):
            raise RatioValidationError(
                'normal sigma must be positive, got {0}'.format(sigma))
        self._sigma = sigma

    @property
    def sigma(self):
        return self._sigma

    @property
    def std(self):
        return self._sigma

    @property
    def is_symmetric(self):
        return True

    def cdf(self, x):
        return normal_cdf(np.asarray(x, dtype=float) / self._sigma)

    def pdf(self, x):
        return normal_pdf(np.asarray(x, dtype=float) / self._sigma) \
            / self._sigma

    def sample(self, rng, size):
        return rng.normal(0.0, self._sigma, size)

    def support(self):
        edge = -self._sigma * special.ndtri(config.QUAD_TAIL_MASS)
        return -edge, edge

    def _key(self):
        return (self._sigma,)

    def __str__(self):
        return 'normal:{0!r}'.format(self._sigma)


class Uniform(ScalarDist):
    """Uniform law on the interval ``[lo, hi]``"""
    kind = 'uniform'

    def __init__(self, lo, hi):
        lo = float(lo)
        hi = float(hi)
        if not (lo < hi and math.isfinite(lo) and math.isfinite(hi)):
            raise RatioValidationError(
                'uniform needs lo < hi, got [{0}, {1}]'.format(lo, hi))
        self._lo = lo
        self._hi = hi

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    @property
    def std(self):
        return (self._hi - self._lo) / math.sqrt(12)

    @property
    def is_symmetric(self):
        return self._lo == -self._hi

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self._lo) / (self._hi - self._lo), 0.0, 1.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self._lo) & (x <= self._hi)
        return np.where(inside, 1.0 / (self._hi - self._lo), 0.0)

    def sample(self, rng, size):
        return rng.uniform(self._lo, self._hi, size)

    def support(self):
        return self._lo, self._hi

    def reflected(self):
        return Uniform(-self._hi, -self._lo)

    def _key(self):
        return (self._lo, self._hi)

    def __str__(self):
        return 'uniform:{0!r},{1!r}'.format(self._lo, self._hi)


class Dirac(ScalarDist):
    """Point mass at ``b``"""
    kind = 'dirac'

    def __init__(self, b):
        b = float(b)
        if not math.isfinite(b):
            raise RatioValidationError('dirac location must be finite')
        self._b = b

    @property
    def b(self):
        return self._b

    @property
    def std(self):
        return 0.0

    @property
    def is_atomic(self):
        return True

    @property
    def is_symmetric(self):
        return self._b == 0

    def cdf(self, x):
        return np.where(np.asarray(x, dtype=float) >= self._b, 1.0, 0.0)

    def mass_at(self, x):
        return np.where(np.asarray(x, dtype=float) == self._b, 1.0, 0.0)

    def pdf(self, x):
        raise RatioDomainError('a point mass has no density')

    def sample(self, rng, size):
        return np.full(size, self._b)

    def support(self):
        return self._b, self._b

    def _key(self):
        return (self._b,)

    def __str__(self):
        return 'dirac:{0!r}'.format(self._b)


def parse_dist(text):
    """Build a ScalarDist from its compact string form

    Accepted forms are ``normal:SIGMA``, ``uniform:LO,HI`` and ``dirac:B``.

    :param str text: distribution description
    :rtype: ScalarDist
    """
    kind, _, args = text.strip().partition(':')
    kind = kind.strip().lower()
    try:
        values = [float(v) for v in args.split(',')] if args.strip() else []
    except ValueError:
        raise RatioValidationError(
            'malformed distribution parameters in {0!r}'.format(text))
    factories = {'normal': (Normal, 1), 'uniform': (Uniform, 2),
                 'dirac': (Dirac, 1)}
    if kind not in factories:
        raise RatioValidationError(
            'unknown distribution kind {0!r}'.format(kind))
    factory, arity = factories[kind]
    if len(values) != arity:
        raise RatioValidationError(
            '{0} takes {1} parameter(s), got {2!r}'.format(kind, arity, text))
    return factory(*values)


class RatioPair(object):
    """Numerator (bias law) and denominator (weight law) of a ratio

    :param ScalarDist num: the law of the numerator
    :param ScalarDist den: the law of the denominator, must be atom free
    """
    def __init__(self, num, den):
        if not isinstance(num, ScalarDist) or not isinstance(den, ScalarDist):
            raise RatioValidationError('ratio pairs are built from ScalarDist')
        if den.is_atomic:
            raise RatioValidationError(
                'denominator {0} has an atom, only atom free denominators '
                'are supported'.format(den))
        self._num = num
        self._den = den
        self._form = closed_forms.find(num, den)

    @property
    def num(self):
        return self._num

    @property
    def den(self):
        return self._den

    @property
    def has_closed_form(self):
        return not isinstance(self._form, _QuadratureForm)

    @property
    def form(self):
        return self._form

    def __eq__(self, other):
        return (
            isinstance(other, RatioPair)
            and (self.num, self.den) == (other.num, other.den)
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return 'RatioPair({0}/{1})'.format(self.num, self.den)


def _as_pair(pair):
    if not isinstance(pair, RatioPair):
        raise RatioValidationError(
            'expected a RatioPair, got {0!r}'.format(pair))
    return pair


def _scalar_or_array(template, values):
    if np.ndim(template) == 0:
        return float(values)
    return values


def _safe_inverse(z):
    z = np.asarray(z, dtype=float)
    safe = np.where(z == 0, 1.0, z)
    return safe


class _Form(object):
    """Split functions and density of one ratio law"""
    def __init__(self, num, den):
        self.num = num
        self.den = den

    def fplus(self, z):
        raise NotImplementedError()

    def fminus(self, z):
        raise NotImplementedError()

    def pdf(self, z):
        raise NotImplementedError()


class ClosedFormList(Mapping):
    """Mapping of named closed form ratio laws, tried in insertion order"""
    def __init__(self):
        self._forms = dict()

    def __getitem__(self, key):
        return self._forms[key]

    def __len__(self):
        return len(self._forms)

    def __iter__(self):
        return iter(self._forms)

    def __repr__(self):
        return repr(self._forms)

    def find(self, num, den):
        for name, (matcher, factory) in self._forms.items():
            if matcher(num, den):
                LOGGER.debug('using closed form %s for %s/%s', name, num, den)
                return factory(num, den)
        LOGGER.debug('no closed form for %s/%s, using quadrature', num, den)
        return _QuadratureForm(num, den)

    def _add_form(self, name, matcher):
        def decorator(cls):
            self._forms[name] = (matcher, cls)
            return cls
        return decorator


closed_forms = ClosedFormList()
_closed_form = closed_forms._add_form


@_closed_form(
    'cauchy',
    lambda num, den: isinstance(num, Normal) and isinstance(den, Normal)
)
class _CauchyForm(_Form):
    """Normal over normal, a centered Cauchy law with scale sP/sQ"""
    def cdf(self, z):
        scale = self.num.sigma / self.den.sigma
        return np.arctan(np.asarray(z, dtype=float) / scale) / math.pi + 0.5

    def fplus(self, z):
        return self.cdf(z) / 2

    def fminus(self, z):
        return self.cdf(z) / 2

    def pdf(self, z):
        z = np.asarray(z, dtype=float)
        sp = self.num.sigma
        sq = self.den.sigma
        return sp * sq / (math.pi * (sq * sq * z * z + sp * sp))


@_closed_form('dirac', lambda num, den: isinstance(num, Dirac))
class _DiracForm(_Form):
    """Point mass numerator over an atom free denominator"""
    def fplus(self, z):
        z = np.asarray(z, dtype=float)
        b = self.num.b
        q_pos = self.den.prob_positive()
        at = self.den.cdf(b / _safe_inverse(z))
        q0 = float(self.den.cdf(0.0))
        if b > 0:
            return np.where(z > 0, 1.0 - at, 0.0)
        if b < 0:
            return np.where(z >= 0, q_pos, at - q0)
        return np.where(z >= 0, q_pos, 0.0)

    def fminus(self, z):
        z = np.asarray(z, dtype=float)
        b = self.num.b
        at = self.den.cdf(b / _safe_inverse(z))
        q0 = float(self.den.cdf(0.0))
        if b > 0:
            return np.where(z >= 0, q0, q0 - at)
        if b < 0:
            return np.where(z > 0, at, 0.0)
        return np.where(z >= 0, self.den.prob_negative(), 0.0)

    def pdf(self, z):
        z = np.asarray(z, dtype=float)
        b = self.num.b
        if b == 0:
            raise RatioDomainError(
                'dirac(0)/Q is the point mass at 0 and has no density')
        safe = _safe_inverse(z)
        value = abs(b) / (safe * safe) * self.den.pdf(b / safe)
        # the density vanishes when approaching 0
        return np.where(z == 0, 0.0, value)


def _is_uniform_over_symmetric_uniform(num, den):
    return (
        isinstance(num, Uniform) and isinstance(den, Uniform)
        and den.is_symmetric
        and (num.lo == 0 or num.hi == 0 or num.is_symmetric)
    )


@_closed_form('uniform', _is_uniform_over_symmetric_uniform)
class _UniformForm(_Form):
    """Uniform[0, beta], Uniform[-beta, 0] or Uniform[-beta, beta] over
    Uniform[-alpha, alpha]

    All three share the density ``min(alpha**2, beta**2/z**2)/(4 alpha beta)``
    and differ only in how the mass splits between F+ and F-.
    """
    def __init__(self, num, den):
        super(_UniformForm, self).__init__(num, den)
        self.alpha = den.hi
        if num.is_symmetric:
            self.mode = 'symmetric'
            self.beta = num.hi
        elif num.lo == 0:
            self.mode = 'positive'
            self.beta = num.hi
        else:
            self.mode = 'negative'
            self.beta = -num.lo

    def cdf(self, z):
        z = np.asarray(z, dtype=float)
        alpha, beta = self.alpha, self.beta
        knee = beta / alpha
        safe = _safe_inverse(z)
        return np.where(
            z <= -knee, -beta / (4 * alpha * safe),
            np.where(
                z >= knee, 1.0 - beta / (4 * alpha * safe),
                (2 * beta + alpha * z) / (4 * beta)
            )
        )

    def _positive_plus(self, z):
        alpha, beta = self.alpha, self.beta
        knee = beta / alpha
        safe = _safe_inverse(z)
        return np.where(
            z <= 0, 0.0,
            np.where(z >= knee, 0.5 - beta / (4 * alpha * safe),
                     alpha * z / (4 * beta))
        )

    def _positive_minus(self, z):
        alpha, beta = self.alpha, self.beta
        knee = beta / alpha
        safe = _safe_inverse(z)
        return np.where(
            z >= 0, 0.5,
            np.where(z <= -knee, -beta / (4 * alpha * safe),
                     0.5 + alpha * z / (4 * beta))
        )

    def fplus(self, z):
        z = np.asarray(z, dtype=float)
        if self.mode == 'symmetric':
            return self.cdf(z) / 2
        if self.mode == 'positive':
            return self._positive_plus(z)
        return self._positive_minus(z)

    def fminus(self, z):
        z = np.asarray(z, dtype=float)
        if self.mode == 'symmetric':
            return self.cdf(z) / 2
        if self.mode == 'positive':
            return self._positive_minus(z)
        return self._positive_plus(z)

    def pdf(self, z):
        z = np.asarray(z, dtype=float)
        alpha, beta = self.alpha, self.beta
        safe = _safe_inverse(z)
        tail = np.where(z == 0, np.inf, beta * beta / (safe * safe))
        return np.minimum(alpha * alpha, tail) / (4 * alpha * beta)


class _QuadratureForm(_Form):
    """Split functions integrated over the denominator

    F+(z) is the integral of P((-inf, z t]) dQ(t) over t > 0 and F-(z) the
    integral of P([z t, inf)) dQ(t) over t < 0. Unbounded denominators are
    cut where their tail mass drops below ``config.QUAD_TAIL_MASS``.
    """
    def _limits(self):
        lo, hi = self.den.support()
        return lo, hi

    def _breaks(self, z, lo, hi):
        if z == 0 or not isinstance(self.num, Uniform):
            return None
        points = sorted(
            p for p in (self.num.lo / z, self.num.hi / z) if lo < p < hi
        )
        return points or None

    def _quad(self, func, lo, hi, points):
        if hi <= lo:
            return 0.0
        value, _ = integrate.quad(
            func, lo, hi, points=points,
            epsabs=config.QUAD_EPSABS, limit=config.QUAD_LIMIT,
        )
        return value

    def _fplus_scalar(self, z):
        lo, hi = self._limits()
        lo = max(lo, 0.0)

        def integrand(t):
            return float(self.num.cdf(z * t)) * float(self.den.pdf(t))

        return self._quad(integrand, lo, hi, self._breaks(z, lo, hi))

    def _fminus_scalar(self, z):
        lo, hi = self._limits()
        hi = min(hi, 0.0)

        def integrand(t):
            return (1.0 - float(self.num.cdf_left(z * t))) \
                * float(self.den.pdf(t))

        return self._quad(integrand, lo, hi, self._breaks(z, lo, hi))

    def _pdf_scalar(self, z):
        lo, hi = self._limits()

        def integrand(t):
            return abs(t) * float(self.num.pdf(z * t)) \
                * float(self.den.pdf(t))

        points = sorted(set((self._breaks(z, lo, hi) or []) + [0.0]))
        points = [p for p in points if lo < p < hi] or None
        return self._quad(integrand, lo, hi, points)

    def _vectorized(self, func, z):
        z = np.asarray(z, dtype=float)
        values = np.array([func(float(v)) for v in z.ravel()])
        return np.clip(values.reshape(z.shape), 0.0, None)

    def fplus(self, z):
        return np.minimum(self._vectorized(self._fplus_scalar, z), 1.0)

    def fminus(self, z):
        return np.minimum(self._vectorized(self._fminus_scalar, z), 1.0)

    def pdf(self, z):
        return self._vectorized(self._pdf_scalar, z)


def fplus(pair, z):
    """Probability of ``X <= z Y`` jointly with ``Y > 0``

    :param RatioPair pair: numerator and denominator laws
    :param z: real number or array
    """
    pair = _as_pair(pair)
    return _scalar_or_array(z, pair.form.fplus(z))


def fminus(pair, z):
    """Probability of ``X >= z Y`` jointly with ``Y < 0``

    :param RatioPair pair: numerator and denominator laws
    :param z: real number or array
    """
    pair = _as_pair(pair)
    return _scalar_or_array(z, pair.form.fminus(z))


def cdf_ratio(pair, z):
    """Right continuous cumulative distribution function of X/Y

    :param RatioPair pair: numerator and denominator laws
    :param z: real number or array
    """
    pair = _as_pair(pair)
    form = pair.form
    if hasattr(form, 'cdf'):
        values = form.cdf(z)
    else:
        values = form.fplus(z) + form.fminus(z)
    return _scalar_or_array(z, np.clip(values, 0.0, 1.0))


def cdf_ratio_left(pair, z):
    """Left limit of :func:`cdf_ratio`

    The ratio law only has an atom at 0, carried over from the numerator.
    """
    pair = _as_pair(pair)
    z_arr = np.asarray(z, dtype=float)
    jump = np.where(z_arr == 0, float(pair.num.mass_at(0.0)), 0.0)
    values = np.asarray(cdf_ratio(pair, z_arr)) - jump
    return _scalar_or_array(z, np.clip(values, 0.0, 1.0))


def mass_at_zero(pair):
    return float(_as_pair(pair).num.mass_at(0.0))


def pdf_ratio(pair, z):
    """Density of the continuous part of X/Y

    For a point mass numerator ``b != 0`` the density extends continuously
    to 0 with value 0; for ``b == 0`` the law is a point mass and
    :class:`RatioDomainError` is raised.
    """
    pair = _as_pair(pair)
    return _scalar_or_array(z, pair.form.pdf(z))


def sample_ratio(pair, n, seed):
    """Draw ``n`` independent ratios X/Y

    :param RatioPair pair: numerator and denominator laws
    :param int n: number of draws, at least 1
    :param seed: int seed or numpy Generator
    :rtype: numpy.ndarray
    """
    pair = _as_pair(pair)
    if int(n) < 1:
        raise RatioDomainError('need at least one sample, got {0}'.format(n))
    gen = rng_mod.generator(seed)
    num = pair.num.sample(gen, int(n))
    den = pair.den.sample(gen, int(n))
    return num / den


def _prob_closed_right(dist, c):
    """P([c, inf))"""
    return 1.0 - float(dist.cdf_left(c))


def ratio_tail_lower_bound(pair, z, eps):
    """Lower bound on a ratio tail from a denominator window of width eps

    For ``z < 0`` bounds P/Q((-inf, z]) by
    ``P([-eps z, inf)) Q([-eps, 0)) + P((-inf, eps z]) Q((0, eps])``; for
    ``z > 0`` bounds P/Q([z, inf)) by
    ``P([eps z, inf)) Q((0, eps]) + P((-inf, -eps z]) Q([-eps, 0))``.

    :param RatioPair pair: numerator and denominator laws
    :param float z: non zero location
    :param float eps: positive window width
    :rtype: float
    """
    pair = _as_pair(pair)
    z = float(z)
    eps = float(eps)
    if z == 0:
        raise RatioDomainError('the tail bound is only defined for z != 0')
    if not eps > 0:
        raise RatioDomainError('eps must be positive, got {0}'.format(eps))
    num, den = pair.num, pair.den
    q_left = float(den.cdf_left(0.0)) - float(den.cdf_left(-eps))
    q_right = float(den.cdf(eps)) - float(den.cdf(0.0))
    if z < 0:
        return (
            _prob_closed_right(num, -eps * z) * q_left
            + float(num.cdf(eps * z)) * q_right
        )
    return (
        _prob_closed_right(num, eps * z) * q_right
        + float(num.cdf(-eps * z)) * q_left
    )


def ratio_tail(pair, z):
    """Exact tail the lower bound is compared with

    P/Q((-inf, z]) for ``z < 0`` and P/Q([z, inf)) for ``z > 0``.
    """
    z = float(z)
    if z == 0:
        raise RatioDomainError('the tail is only defined for z != 0')
    if z < 0:
        return cdf_ratio(pair, z)
    return 1.0 - cdf_ratio_left(pair, z)
