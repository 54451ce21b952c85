#!/usr/bin/env python
"""geometry.py - Data sets, neurons and neuron states

A neuron ``x -> relu(<a, x> + b)`` is classified against the data set it
sees:

* fully active: its edge ``<a, x> + b = 0`` separates samples,
* semi active: every sample lies on the closed active side, some strictly,
* inactive: every sample lies on the closed zero side.

Comparisons against the edge are exact unless an ``edge_tolerance`` is
given.
"""
import enum
import warnings

import numpy as np
from scipy import optimize

from reluinit.lib import rng as rng_mod

#: tolerance for "off axis" coordinates in the positive orthant test
AXIS_TOLERANCE = 1e-12
#: residual accepted when matching a neuron by an affine map
LINEAR_TOLERANCE = 1e-9


class ConstantNeuronError(ValueError):
    pass


class GeometryDomainError(ValueError):
    pass


class SinglePointWarning(UserWarning):
    """A one dimensional state was decided on a single sample"""


class NeuronState(enum.Enum):
    FULLY_ACTIVE = 'fully-active'
    SEMI_ACTIVE = 'semi-active'
    INACTIVE = 'inactive'

    def __str__(self):
        return self.value


class DataSet(object):
    """Samples a layer sees, one per row

    :param points: n x d array like, a flat sequence is read as n samples
        in one dimension
    """
    def __init__(self, points):
        points = np.array(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
            raise GeometryDomainError(
                'data sets need n >= 1 rows and d >= 1 columns, got shape '
                '{0}'.format(points.shape))
        if not np.all(np.isfinite(points)):
            raise GeometryDomainError('data sets must be finite')
        points.setflags(write=False)
        self._points = points
        self._mins = points.min(axis=0)
        self._maxs = points.max(axis=0)

    @property
    def points(self):
        return self._points

    @property
    def n(self):
        return self._points.shape[0]

    @property
    def d(self):
        return self._points.shape[1]

    @property
    def mins(self):
        return self._mins

    @property
    def maxs(self):
        return self._maxs

    @property
    def x_min(self):
        self._require_1d()
        return float(self._mins[0])

    @property
    def x_max(self):
        self._require_1d()
        return float(self._maxs[0])

    def _require_1d(self):
        if self.d != 1:
            raise GeometryDomainError(
                'x_min/x_max are only defined for one dimensional data')

    def __len__(self):
        return self.n

    def __repr__(self):
        return 'DataSet(n={0}, d={1})'.format(self.n, self.d)


def as_dataset(data):
    if isinstance(data, DataSet):
        return data
    return DataSet(data)


class Neuron(object):
    """Weight vector ``a`` and bias ``b`` of a single ReLU neuron"""
    def __init__(self, a, b):
        a = np.atleast_1d(np.array(a, dtype=float))
        b = float(b)
        if a.ndim != 1 or not np.all(np.isfinite(a)) or not np.isfinite(b):
            raise GeometryDomainError('neurons need finite a (vector) and b')
        self._a = a
        self._b = b

    @property
    def a(self):
        return self._a

    @property
    def b(self):
        return self._b

    @property
    def d(self):
        return self._a.shape[0]

    @property
    def is_constant(self):
        return not np.any(self._a)

    def pre_activation(self, points):
        return np.asarray(points, dtype=float).dot(self._a) + self._b

    def __call__(self, points):
        return np.maximum(self.pre_activation(points), 0.0)

    def __repr__(self):
        return 'Neuron(a={0!r}, b={1!r})'.format(self._a.tolist(), self._b)


def _check_neuron(data, neuron):
    if neuron.is_constant:
        raise ConstantNeuronError(
            'neuron with a = 0 has no edge and no state')
    if neuron.d != data.d:
        raise GeometryDomainError(
            'neuron has dimension {0}, data has {1}'.format(neuron.d, data.d))


def _state_from_values(values, edge_tolerance=0.0):
    positive = values > edge_tolerance
    negative = values < -edge_tolerance
    if np.any(positive) and np.any(negative):
        return NeuronState.FULLY_ACTIVE
    if np.any(positive):
        return NeuronState.SEMI_ACTIVE
    return NeuronState.INACTIVE


def classify_1d(data, neuron):
    """Classify a one dimensional neuron from its values at the data range

    ``a x + b`` is monotone in ``x``, so its signs at ``x_min`` and
    ``x_max`` decide the state, with the same rounding as :func:`classify`.

    A single point data set has no semi active window; it is classified
    semi active when ``h(x1) > 0`` and inactive otherwise, with a
    :class:`SinglePointWarning`.

    :param DataSet data: one dimensional samples
    :param Neuron neuron: neuron with scalar, non zero weight
    :rtype: NeuronState
    """
    data = as_dataset(data)
    if data.d != 1:
        raise GeometryDomainError('classify_1d needs one dimensional data')
    _check_neuron(data, neuron)
    if data.x_min == data.x_max:
        warnings.warn(
            'single point data set, x1 = {0:.17g}: state taken from '
            'the sign of h(x1)'.format(data.x_min),
            SinglePointWarning, stacklevel=2)
    ends = np.array([[data.x_min], [data.x_max]])
    return _state_from_values(neuron.pre_activation(ends))


def classify(data, neuron, edge_tolerance=0.0):
    """Classify a neuron by the signs of its pre activations on the data

    :param DataSet data: samples, one per row
    :param Neuron neuron: neuron with non zero weight vector
    :param float edge_tolerance: pre activations within this distance of 0
        count as lying on the edge
    :rtype: NeuronState
    """
    data = as_dataset(data)
    _check_neuron(data, neuron)
    return _state_from_values(
        neuron.pre_activation(data.points), edge_tolerance)


_STATE_ORDER = (
    NeuronState.FULLY_ACTIVE, NeuronState.SEMI_ACTIVE, NeuronState.INACTIVE,
)
#: code given to constant neurons by layer_state_codes
CONSTANT_CODE = -1


def layer_state_codes(data, weights, biases, edge_tolerance=0.0):
    """Classify all neurons of a layer at once, as integer codes

    Codes index :data:`_STATE_ORDER` (0 fully active, 1 semi active,
    2 inactive); constant neurons get :data:`CONSTANT_CODE`.

    :param DataSet data: samples, one per row
    :param weights: m x d matrix, one neuron per row
    :param biases: m vector
    :rtype: numpy.ndarray
    """
    data = as_dataset(data)
    weights = np.atleast_2d(np.asarray(weights, dtype=float))
    biases = np.asarray(biases, dtype=float).reshape(-1)
    if weights.shape[1] != data.d or weights.shape[0] != biases.shape[0]:
        raise GeometryDomainError(
            'layer of shape {0} with {1} biases does not fit data of '
            'dimension {2}'.format(weights.shape, biases.shape[0], data.d))
    values = data.points.dot(weights.T) + biases
    positive = np.any(values > edge_tolerance, axis=0)
    negative = np.any(values < -edge_tolerance, axis=0)
    codes = np.where(positive & negative, 0, np.where(positive, 1, 2))
    codes[~np.any(weights != 0, axis=1)] = CONSTANT_CODE
    return codes


def classify_layer(data, weights, biases, edge_tolerance=0.0):
    """Classify all neurons of a layer at once

    :rtype: list
    :returns: one NeuronState per neuron, None for constant neurons
    """
    codes = layer_state_codes(data, weights, biases, edge_tolerance)
    return [None if c == CONSTANT_CODE else _STATE_ORDER[c] for c in codes]


def state_counts(data, weights, biases, edge_tolerance=0.0):
    """Count the neurons of a layer per state

    :rtype: dict
    :returns: mapping from NeuronState to count, constant neurons under None
    """
    codes = layer_state_codes(data, weights, biases, edge_tolerance)
    counts = np.bincount(codes[codes >= 0], minlength=3)
    result = {state: int(counts[i]) for i, state in enumerate(_STATE_ORDER)}
    result[None] = int(np.sum(codes == CONSTANT_CODE))
    return result


def is_dead(data, neuron, partial0=0.0, edge_tolerance=0.0):
    """Check whether gradient training can never move the neuron

    A neuron is dead when it is inactive and either the surrogate
    derivative at 0 vanishes or no sample sits exactly on its edge.

    :param DataSet data: samples, one per row
    :param Neuron neuron: neuron with non zero weight vector
    :param float partial0: surrogate derivative of relu at 0
    :rtype: bool
    """
    data = as_dataset(data)
    if classify(data, neuron, edge_tolerance) is not NeuronState.INACTIVE:
        return False
    if float(partial0) == 0:
        return True
    values = neuron.pre_activation(data.points)
    return not np.any(np.abs(values) <= edge_tolerance)


def sample_ico(points, seed):
    """Draw a point of the relative interior of the convex hull

    The convex coefficients follow the flat Dirichlet law, so they are
    strictly positive and sum to one.

    :param points: k x d array, k >= 1
    :param seed: int seed or numpy Generator
    :rtype: numpy.ndarray
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[0] < 1:
        raise GeometryDomainError('sample_ico needs at least one point')
    if points.shape[0] == 1:
        return points[0].copy()
    gen = rng_mod.generator(seed)
    weights = gen.dirichlet(np.ones(points.shape[0]))
    return weights.dot(points)


class IcoWitness(object):
    """A point of ico D lying on a neuron's edge

    :param point: the witness x*
    :param coefficients: strictly positive convex coefficients of x*
    :param float t: mixing parameter found by bisection
    """
    def __init__(self, point, coefficients, t):
        self.point = point
        self.coefficients = coefficients
        self.t = t

    def __repr__(self):
        return 'IcoWitness(point={0!r}, t={1!r})'.format(
            self.point.tolist(), self.t)


def ico_witness(data, neuron):
    """Construct an edge point in the relative interior of the hull

    Samples are split into ``D+`` (positive pre activation) and the rest.
    Mixing the uniform convex weights of the two groups with parameter
    ``t`` gives a path H(t) of pre activations that starts positive and
    ends non positive; its root is found by bisection.

    :param DataSet data: samples, n >= 2
    :param Neuron neuron: neuron with non zero weight vector
    :rtype: IcoWitness or None
    :returns: the witness, or None when the neuron is not fully active
    """
    data = as_dataset(data)
    _check_neuron(data, neuron)
    if data.n < 2:
        raise GeometryDomainError('ico_witness needs at least two samples')
    values = neuron.pre_activation(data.points)
    plus = values > 0
    rest = ~plus
    if not np.any(plus) or not np.any(values < 0):
        return None

    def coefficients(t):
        lam = np.empty(data.n)
        lam[plus] = (1.0 - t) / plus.sum()
        lam[rest] = t / rest.sum()
        return lam

    def path(t):
        return coefficients(t).dot(values)

    t_star = optimize.bisect(path, 0.0, 1.0, xtol=1e-15, rtol=4 * 2 ** -52)
    lam = coefficients(t_star)
    return IcoWitness(lam.dot(data.points), lam, t_star)


def edge_hits_ico(data, neuron):
    """Whether the neuron's edge meets ico D without containing it

    The two conditions together are equivalent to the neuron being fully
    active.

    :rtype: bool
    """
    data = as_dataset(data)
    if data.n < 2:
        raise GeometryDomainError('edge_hits_ico needs at least two samples')
    return classify(data, neuron) is NeuronState.FULLY_ACTIVE


def dual_cone_contains(data, y):
    """Whether ``y`` has a non negative inner product with every sample

    :rtype: bool
    """
    data = as_dataset(data)
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != data.d:
        raise GeometryDomainError(
            'y has dimension {0}, data has {1}'.format(y.shape[0], data.d))
    return bool(np.all(data.points.dot(y) >= 0))


def coni_is_positive_orthant(data):
    """Whether the conic hull of non negative data is all of [0, inf)^d

    True exactly when every axis direction ``e_k`` has a positive multiple
    among the samples.

    :param DataSet data: samples in [0, inf)^d
    :rtype: bool
    """
    data = as_dataset(data)
    points = data.points
    if np.any(points < 0):
        raise GeometryDomainError(
            'the orthant test needs samples with non negative coordinates')
    for k in range(data.d):
        off_axis = np.delete(points, k, axis=1)
        on_axis = points[:, k] > 0
        if off_axis.shape[1]:
            on_axis &= np.all(np.abs(off_axis) < AXIS_TOLERANCE, axis=1)
        if not np.any(on_axis):
            return False
    return True


def behaves_linearly(data, neuron):
    """Find an affine map agreeing with the neuron on every sample

    :param DataSet data: samples, one per row
    :param Neuron neuron: any neuron, constant ones included
    :rtype: tuple or None
    :returns: ``(a_tilde, b_tilde)`` or None when no affine map matches
    """
    data = as_dataset(data)
    if neuron.d != data.d:
        raise GeometryDomainError(
            'neuron has dimension {0}, data has {1}'.format(neuron.d, data.d))
    if neuron.is_constant:
        return np.zeros(data.d), max(neuron.b, 0.0)
    state = classify(data, neuron)
    if state is NeuronState.SEMI_ACTIVE:
        return neuron.a.copy(), neuron.b
    if state is NeuronState.INACTIVE:
        return np.zeros(data.d), 0.0
    outputs = neuron(data.points)
    design = np.hstack([data.points, np.ones((data.n, 1))])
    coef, _, _, _ = np.linalg.lstsq(design, outputs, rcond=None)
    residual = np.max(np.abs(design.dot(coef) - outputs))
    scale = max(1.0, np.max(np.abs(outputs)))
    if residual > LINEAR_TOLERANCE * scale:
        return None
    return coef[:-1], float(coef[-1])


def layer_dead_mask(data, weights, biases, partial0=0.0):
    """Dead flag of every neuron of a layer

    :rtype: numpy.ndarray
    :returns: boolean array, constant neurons count as not dead
    """
    data = as_dataset(data)
    codes = layer_state_codes(data, weights, biases)
    inactive = codes == 2
    if float(partial0) == 0:
        return inactive
    values = data.points.dot(np.atleast_2d(weights).T) + biases
    return inactive & ~np.any(values == 0, axis=0)
