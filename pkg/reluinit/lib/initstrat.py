#!/usr/bin/env python
"""initstrat.py - Initialization strategies for dense ReLU networks

Weight schemes draw the rows of a layer matrix, bias schemes the bias
vector. Data dependent bias schemes place every neuron's edge through a
point of the data the layer sees:

* ``knot-uniform``: scalar inputs only, knot uniform on [x_min, x_max],
* ``hull:N``: N samples picked per neuron, edge through a random point of
  the relative interior of their convex hull,
* ``hull-random:N``: as ``hull`` with the sample count uniform in 1..N.

Schemes are written as compact strings, e.g. ``he-normal``,
``normal:0.5``, ``uniform:-1,1``, ``hull:5``.
"""
import logging
import math
from collections.abc import Mapping

import numpy as np

from reluinit import config
from reluinit.lib import rng as rng_mod
from reluinit.lib.geometry import (
    ConstantNeuronError,
    DataSet,
    as_dataset,
    sample_ico,
)
from reluinit.lib.netcore import MLPParams, Partial0
from reluinit.lib.ratiodist import Dirac, Normal, Uniform

LOGGER = logging.getLogger(__name__)


class SchemeError(ValueError):
    pass


class MissingLayerInputsError(ValueError):
    pass


def _split_scheme(text):
    kind, _, args = str(text).strip().partition(':')
    kind = kind.strip().lower()
    try:
        values = [float(v) for v in args.split(',')] if args.strip() else []
    except ValueError:
        raise SchemeError('malformed scheme parameters in {0!r}'.format(text))
    return kind, values


def _format_number(value):
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


class _Scheme(object):
    """Scheme kind plus its numeric parameters"""
    arities = {}

    def __init__(self, kind, *params):
        kind = kind.lower()
        if kind not in self.arities:
            raise SchemeError('unknown {0} {1!r}, known: {2}'.format(
                type(self).__name__, kind, ', '.join(sorted(self.arities))))
        if len(params) != self.arities[kind]:
            raise SchemeError('{0} takes {1} parameter(s), got {2}'.format(
                kind, self.arities[kind], len(params)))
        self._kind = kind
        self._params = tuple(float(p) for p in params)
        self._validate()

    def _validate(self):
        pass

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        kind, values = _split_scheme(text)
        return cls(kind, *values)

    @property
    def kind(self):
        return self._kind

    @property
    def params(self):
        return self._params

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and (self._kind, self._params) == (other._kind, other._params)
        )

    def __hash__(self):
        return hash((self._kind, self._params))

    def __str__(self):
        if not self._params:
            return self._kind
        return '{0}:{1}'.format(
            self._kind, ','.join(_format_number(p) for p in self._params))

    def __repr__(self):
        return '{0}({1!r})'.format(type(self).__name__, str(self))


class WeightScheme(_Scheme):
    """Law of the rows of a layer's weight matrix

    ``he-normal`` (variance 2/fan_in), ``he-uniform`` (same variance),
    ``xavier-uniform`` (bound sqrt(6/(fan_in + fan_out))), ``normal:SIGMA``,
    ``uniform:ALPHA``, ``sphere`` (uniform on the unit sphere) and ``ball``
    (sphere times an independent Uniform[0, 2] radius).
    """
    arities = {
        'he-normal': 0, 'he-uniform': 0, 'xavier-uniform': 0,
        'normal': 1, 'uniform': 1, 'sphere': 0, 'ball': 0,
    }

    def _validate(self):
        if self._params and not self._params[0] > 0:
            raise SchemeError('{0} needs a positive scale'.format(self._kind))

    def dist(self, fan_in, fan_out=1):
        """Law of a single weight, for coordinate wise schemes

        :rtype: reluinit.lib.ratiodist.ScalarDist
        """
        kind = self._kind
        if kind == 'he-normal':
            return Normal(math.sqrt(2.0 / fan_in))
        if kind == 'normal':
            return Normal(self._params[0])
        if kind == 'he-uniform':
            alpha = math.sqrt(6.0 / fan_in)
        elif kind == 'xavier-uniform':
            alpha = math.sqrt(6.0 / (fan_in + fan_out))
        elif kind == 'uniform':
            alpha = self._params[0]
        else:
            raise SchemeError(
                '{0} does not draw coordinates independently'.format(kind))
        return Uniform(-alpha, alpha)

    def sample(self, gen, fan_in, fan_out):
        """Draw a ``fan_out x fan_in`` weight matrix"""
        if self._kind in ('sphere', 'ball'):
            rows = gen.standard_normal((fan_out, fan_in))
            norms = np.linalg.norm(rows, axis=1, keepdims=True)
            rows = rows / norms
            if self._kind == 'ball':
                rows = rows * gen.uniform(0.0, 2.0, (fan_out, 1))
            return rows
        return self.dist(fan_in, fan_out).sample(gen, (fan_out, fan_in))


class BiasScheme(_Scheme):
    """Law of a layer's biases

    ``zero``, ``const:B``, ``normal:SIGMA``, ``uniform:LO,HI`` and the data
    dependent ``knot-uniform``, ``hull:N`` and ``hull-random:N``.
    """
    arities = {
        'zero': 0, 'const': 1, 'normal': 1, 'uniform': 2,
        'knot-uniform': 0, 'hull': 1, 'hull-random': 1,
    }

    def _validate(self):
        kind, params = self._kind, self._params
        if kind == 'normal' and not params[0] > 0:
            raise SchemeError('normal bias needs sigma > 0')
        if kind == 'uniform' and not params[0] < params[1]:
            raise SchemeError('uniform bias needs lo < hi')
        if kind in ('hull', 'hull-random'):
            if params[0] < 1 or not float(params[0]).is_integer():
                raise SchemeError('{0} needs an integer N >= 1'.format(kind))

    @property
    def needs_data(self):
        return self._kind in ('knot-uniform', 'hull', 'hull-random')

    def dist(self):
        """Law of a single bias, for data independent schemes

        :rtype: reluinit.lib.ratiodist.ScalarDist
        """
        kind = self._kind
        if kind == 'zero':
            return Dirac(0.0)
        if kind == 'const':
            return Dirac(self._params[0])
        if kind == 'normal':
            return Normal(self._params[0])
        if kind == 'uniform':
            return Uniform(*self._params)
        raise SchemeError('{0} depends on the layer inputs'.format(kind))

    def sample(self, gen, weights, layer_inputs=None):
        """Draw the biases of a layer whose weights are already known

        :param numpy.random.Generator gen: random source
        :param numpy.ndarray weights: ``m x d`` weight matrix of the layer
        :param DataSet layer_inputs: samples the layer sees
        :rtype: numpy.ndarray
        """
        return self.sample_with_anchors(gen, weights, layer_inputs)[0]

    def sample_with_anchors(self, gen, weights, layer_inputs=None):
        """As :meth:`sample`, also returning the points the edges pass

        :rtype: tuple
        :returns: ``(biases, anchors)``, anchors being an ``m x d`` array of
            the drawn edge points for data dependent schemes and None
            otherwise
        """
        m = weights.shape[0]
        if not self.needs_data:
            return np.asarray(self.dist().sample(gen, m), dtype=float), None
        if layer_inputs is None:
            raise MissingLayerInputsError(
                'bias scheme {0} needs the layer inputs'.format(self))
        data = as_dataset(layer_inputs)
        if data.d != weights.shape[1]:
            raise SchemeError('layer inputs of dimension {0} for {1} '
                              'weights'.format(data.d, weights.shape[1]))
        if self._kind == 'knot-uniform':
            anchors = self._knot_uniform(gen, weights, data)
        else:
            anchors = self._hull(gen, weights, data)
        return -np.einsum('ij,ij->i', weights, anchors), anchors

    def _knot_uniform(self, gen, weights, data):
        if data.d != 1:
            raise SchemeError('knot-uniform needs scalar layer inputs')
        knots = gen.uniform(data.x_min, data.x_max, weights.shape[0])
        return knots.reshape(-1, 1)

    def _hull(self, gen, weights, data):
        n_max = int(self._params[0])
        anchors = np.empty(weights.shape)
        for i in range(weights.shape[0]):
            count = n_max
            if self._kind == 'hull-random':
                count = int(gen.integers(1, n_max + 1))
            picks = gen.choice(data.n, count, replace=data.n < count)
            anchors[i] = sample_ico(data.points[picks], gen)
        return anchors


class InitConfig(object):
    """Weight scheme, bias scheme, relu surrogate derivative and seed

    :param weight: WeightScheme or its string form
    :param bias: BiasScheme or its string form
    :param partial0: surrogate derivative of relu at 0
    :param int seed: base seed
    """
    def __init__(self, weight='he-normal', bias='zero',
                 partial0=config.DEFAULT_PARTIAL0, seed=config.DEFAULT_SEED):
        self._weight = WeightScheme.parse(weight)
        self._bias = BiasScheme.parse(bias)
        self._partial0 = Partial0(partial0)
        self._seed = int(seed)

    @classmethod
    def from_mapping(cls, mapping, seed=None):
        """Build from config file keys ``weight``, ``bias``, ``partial0``"""
        return cls(
            weight=mapping.get('weight', 'he-normal'),
            bias=mapping.get('bias', 'zero'),
            partial0=float(mapping.get('partial0', config.DEFAULT_PARTIAL0)),
            seed=seed if seed is not None
            else int(mapping.get('seed', config.DEFAULT_SEED)),
        )

    def to_mapping(self):
        return {
            'weight': str(self._weight),
            'bias': str(self._bias),
            'partial0': repr(self._partial0.value),
            'seed': str(self._seed),
        }

    @property
    def weight(self):
        return self._weight

    @property
    def bias(self):
        return self._bias

    @property
    def partial0(self):
        return self._partial0

    @property
    def seed(self):
        return self._seed

    def __eq__(self, other):
        return isinstance(other, InitConfig) and \
            self.to_mapping() == other.to_mapping()

    def __hash__(self):
        return hash(tuple(sorted(self.to_mapping().items())))

    def __str__(self):
        return '{0}/{1}'.format(self._weight, self._bias)

    def __repr__(self):
        return 'InitConfig({0!r})'.format(self.to_mapping())


def init_layer(cfg, fan_in, fan_out, layer_inputs=None, seed=None,
               return_anchors=False):
    """Initialize one hidden layer

    :param InitConfig cfg: schemes of the layer
    :param int fan_in: input dimension d
    :param int fan_out: number of neurons m
    :param DataSet layer_inputs: samples the layer sees, required by data
        dependent bias schemes
    :param seed: int seed or Generator, the config seed by default
    :param bool return_anchors: also return the edge points drawn by data
        dependent bias schemes
    :rtype: tuple
    :returns: ``(W, b)`` with W of shape ``m x d``, or ``(W, b, anchors)``
    """
    if int(fan_in) < 1 or int(fan_out) < 1:
        raise SchemeError('layers need fan_in, fan_out >= 1')
    if cfg.bias.needs_data and layer_inputs is None:
        raise MissingLayerInputsError(
            'bias scheme {0} needs the layer inputs'.format(cfg.bias))
    gen = rng_mod.generator(cfg.seed if seed is None else seed)
    weights = cfg.weight.sample(gen, int(fan_in), int(fan_out))
    biases, anchors = cfg.bias.sample_with_anchors(gen, weights, layer_inputs)
    if return_anchors:
        return weights, biases, anchors
    return weights, biases


def init_network(cfgs, arch, train_inputs=None, seed=None,
                 output_weight=None, output_bias=0.0, subsample=None):
    """Initialize all layers in order, feeding data forward for hull biases

    :param cfgs: one InitConfig for every hidden layer or a single one for
        all of them
    :param arch: layer widths ``[d, m_1, ..., m_L]``
    :param train_inputs: training inputs, n x d
    :param seed: base seed, the first config's seed by default
    :param output_weight: WeightScheme of the output layer, the last hidden
        layer's weight scheme by default
    :param float output_bias: output bias c
    :param int subsample: cap on the number of samples propagated
    :rtype: MLPParams
    """
    arch = [int(v) for v in arch]
    if len(arch) < 2 or min(arch) < 1:
        raise SchemeError('architectures need d >= 1 and a hidden layer')
    depth = len(arch) - 1
    if isinstance(cfgs, InitConfig):
        cfgs = [cfgs] * depth
    cfgs = list(cfgs)
    if len(cfgs) != depth:
        raise SchemeError('{0} configs for {1} hidden layers'.format(
            len(cfgs), depth))
    seed = cfgs[0].seed if seed is None else seed
    inputs = None
    if train_inputs is not None:
        inputs = as_dataset(train_inputs).points
        if inputs.shape[1] != arch[0]:
            raise SchemeError('train inputs of dimension {0} for input '
                              'width {1}'.format(inputs.shape[1], arch[0]))
        if subsample is not None and inputs.shape[0] > int(subsample):
            gen = rng_mod.generator(seed, (depth + 1,))
            picks = gen.choice(inputs.shape[0], int(subsample), replace=False)
            LOGGER.debug('propagating %d of %d samples', int(subsample),
                         inputs.shape[0])
            inputs = inputs[np.sort(picks)]
    weights = []
    biases = []
    for layer, cfg in enumerate(cfgs):
        layer_inputs = None if inputs is None else DataSet(inputs)
        W, b = init_layer(
            cfg, arch[layer], arch[layer + 1], layer_inputs,
            seed=rng_mod.generator(seed, (layer,)),
        )
        weights.append(W)
        biases.append(b)
        if inputs is not None:
            inputs = np.maximum(inputs.dot(W.T) + b, 0.0)
    output_weight = WeightScheme.parse(output_weight or cfgs[-1].weight)
    gen = rng_mod.generator(seed, (depth,))
    w = output_weight.sample(gen, arch[-1], 1)[0]
    return MLPParams(weights, biases, w, output_bias)


def knot_of(neuron):
    """Kink location ``-b/a`` of a scalar neuron"""
    if neuron.d != 1:
        raise SchemeError('knots are defined for scalar neurons')
    a = float(neuron.a[0])
    if a == 0:
        raise ConstantNeuronError('a neuron with a = 0 has no knot')
    return -neuron.b / a


def edge_distance(neuron):
    """Distance ``|b| / ||a||`` of the neuron's edge from the origin"""
    norm = float(np.linalg.norm(neuron.a))
    if norm == 0:
        raise ConstantNeuronError('a neuron with a = 0 has no edge')
    return abs(neuron.b) / norm


def layer_knots(weights, biases):
    """Knots of every neuron of a scalar input layer, NaN for a = 0"""
    a = np.asarray(weights, dtype=float).reshape(-1)
    b = np.asarray(biases, dtype=float).reshape(-1)
    safe = np.where(a == 0, 1.0, a)
    return np.where(a == 0, np.nan, -b / safe)


def layer_edge_distances(weights, biases):
    norms = np.linalg.norm(np.atleast_2d(weights), axis=1)
    safe = np.where(norms == 0, 1.0, norms)
    return np.where(norms == 0, np.nan, np.abs(biases) / safe)


class StrategyList(Mapping):
    """Named one dimensional (bias law, weight law) families indexed by the
    dispersion ratio rho"""
    def __init__(self):
        self._strategies = dict()

    def __getitem__(self, key):
        return self._strategies[key]

    def __len__(self):
        return len(self._strategies)

    def __iter__(self):
        return iter(self._strategies)

    def _add_strategy(self, name):
        def decorator(func):
            self._strategies[name] = func
            return func
        return decorator


strategies = StrategyList()
_strategy = strategies._add_strategy

#: weight laws of the sweep, He scaling on scalar inputs
HE_SIGMA = math.sqrt(2.0)
HE_ALPHA = math.sqrt(6.0)


@_strategy('he-zero')
def he_zero(rho):
    return Dirac(0.0), Normal(HE_SIGMA)


@_strategy('dirac-normal')
def dirac_normal(rho):
    """rho = sigma_a / b"""
    return Dirac(HE_SIGMA / rho), Normal(HE_SIGMA)


@_strategy('dirac-uniform')
def dirac_uniform(rho):
    """rho = alpha / (sqrt(3) b), the ratio of standard deviations"""
    return Dirac(HE_ALPHA / (math.sqrt(3.0) * rho)), Uniform(-HE_ALPHA,
                                                             HE_ALPHA)


@_strategy('normal-normal')
def normal_normal(rho):
    """rho = sigma_a / sigma_b"""
    return Normal(HE_SIGMA / rho), Normal(HE_SIGMA)


@_strategy('uniform-asym')
def uniform_asym(rho):
    """Uniform[0, beta] biases, rho = 2 alpha / beta"""
    return Uniform(0.0, 2 * HE_ALPHA / rho), Uniform(-HE_ALPHA, HE_ALPHA)


@_strategy('uniform-sym')
def uniform_sym(rho):
    """Uniform[-beta, beta] biases, rho = alpha / beta"""
    beta = HE_ALPHA / rho
    return Uniform(-beta, beta), Uniform(-HE_ALPHA, HE_ALPHA)


def strategy_laws(name, rho):
    """Bias and weight law of a named sweep strategy

    :rtype: tuple
    :returns: ``(bias ScalarDist, weight ScalarDist)``
    """
    if name not in strategies:
        raise SchemeError('unknown strategy {0!r}, known: {1}'.format(
            name, ', '.join(strategies)))
    if not rho > 0:
        raise SchemeError('rho must be positive, got {0}'.format(rho))
    return strategies[name](float(rho))
