#!/usr/bin/env python
"""netcore.py - Dense ReLU networks, their gradients and training

A network with L hidden layers maps ``x`` to::

    w . relu(W_L relu(... relu(W_1 x + b_1) ...) + b_L) + c

Derivatives of relu at 0 are replaced by a surrogate value ``partial0``
taken from [0, 1], applied at every pre activation that is exactly 0.
"""
import logging
import math
from collections.abc import Mapping

import numpy as np
from scipy import special

from reluinit import config
from reluinit.lib import rng as rng_mod

LOGGER = logging.getLogger(__name__)


class ShapeError(ValueError):
    pass


class Partial0(object):
    """Surrogate derivative of relu at 0

    :param float value: number in [0, 1]
    """
    def __init__(self, value=config.DEFAULT_PARTIAL0):
        value = float(value)
        if not 0 <= value <= 1:
            raise ValueError(
                'the relu surrogate derivative must lie in [0, 1], got '
                '{0}'.format(value))
        self._value = value

    @property
    def value(self):
        return self._value

    def __float__(self):
        return self._value

    def __eq__(self, other):
        return isinstance(other, Partial0) and self._value == other._value

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return 'Partial0({0!r})'.format(self._value)


def as_partial0(value):
    if isinstance(value, Partial0):
        return value.value
    return Partial0(value).value


def relu_derivative(z, partial0):
    """Derivative of relu with the surrogate value at 0"""
    return np.where(z > 0, 1.0, np.where(z == 0, partial0, 0.0))


class MLPParams(object):
    """Weights and biases of a dense ReLU network with one output

    :param list weights: hidden layer matrices, ``W_l`` of shape
        ``m_l x m_(l-1)``
    :param list biases: hidden layer bias vectors, ``b_l`` of length ``m_l``
    :param w: output weights, length ``m_L``
    :param float c: output bias
    """
    def __init__(self, weights, biases, w, c=0.0):
        weights = [np.array(np.atleast_2d(W), dtype=float) for W in weights]
        biases = [np.array(b, dtype=float).reshape(-1) for b in biases]
        w = np.array(w, dtype=float).reshape(-1)
        c = float(c)
        if len(weights) != len(biases) or not weights:
            raise ShapeError(
                'need one bias vector per hidden layer and at least one layer')
        for l, (W, b) in enumerate(zip(weights, biases)):
            if W.shape[0] != b.shape[0]:
                raise ShapeError(
                    'layer {0}: {1} neurons but {2} biases'.format(
                        l + 1, W.shape[0], b.shape[0]))
            if l and W.shape[1] != weights[l - 1].shape[0]:
                raise ShapeError(
                    'layer {0}: expects {1} inputs, previous layer has '
                    '{2}'.format(l + 1, W.shape[1], weights[l - 1].shape[0]))
        if w.shape[0] != weights[-1].shape[0]:
            raise ShapeError(
                'output layer: {0} weights for {1} neurons'.format(
                    w.shape[0], weights[-1].shape[0]))
        self._weights = weights
        self._biases = biases
        self._w = w
        self._c = c

    @classmethod
    def from_1d(cls, a, b, w, c=0.0):
        """One hidden layer on scalar inputs, ``sum_i w_i relu(a_i x + b_i)
        + c``"""
        a = np.array(a, dtype=float).reshape(-1, 1)
        return cls([a], [b], w, c)

    @property
    def weights(self):
        return self._weights

    @property
    def biases(self):
        return self._biases

    @property
    def w(self):
        return self._w

    @property
    def c(self):
        return self._c

    @property
    def depth(self):
        return len(self._weights)

    @property
    def input_dim(self):
        return self._weights[0].shape[1]

    @property
    def layer_sizes(self):
        """Widths ``[d, m_1, ..., m_L]``"""
        return [self.input_dim] + [W.shape[0] for W in self._weights]

    def is_finite(self):
        return all(
            np.all(np.isfinite(v)) for v in self._arrays()
        ) and math.isfinite(self._c)

    def _arrays(self):
        for W, b in zip(self._weights, self._biases):
            yield W
            yield b
        yield self._w

    def to_vector(self):
        """All parameters in one flat vector, layer by layer, then w, c"""
        parts = [v.ravel() for v in self._arrays()]
        parts.append(np.array([self._c]))
        return np.concatenate(parts)

    def with_vector(self, vector):
        """Parameters of the same shapes filled from a flat vector"""
        vector = np.asarray(vector, dtype=float)
        pos = 0
        weights = []
        biases = []
        for W, b in zip(self._weights, self._biases):
            weights.append(vector[pos:pos + W.size].reshape(W.shape))
            pos += W.size
            biases.append(vector[pos:pos + b.size].copy())
            pos += b.size
        w = vector[pos:pos + self._w.size].copy()
        pos += self._w.size
        if pos + 1 != vector.shape[0]:
            raise ShapeError('vector of length {0} does not fit {1}'.format(
                vector.shape[0], self.layer_sizes))
        return type(self)(weights, biases, w, vector[pos])

    def copy(self):
        return self.with_vector(self.to_vector())

    def __eq__(self, other):
        return (
            isinstance(other, MLPParams)
            and self.layer_sizes == other.layer_sizes
            and np.array_equal(self.to_vector(), other.to_vector())
        )

    def __hash__(self):
        return hash(self.to_vector().tobytes())

    def __repr__(self):
        return '{0}(layers={1})'.format(type(self).__name__, self.layer_sizes)


class Gradient(MLPParams):
    """Gradient of the empirical risk, shaped like the parameters"""

    def max_abs_diff(self, other):
        return float(np.max(np.abs(self.to_vector() - other.to_vector())))


class Loss(object):
    """Loss ``L(y, t)`` of label y and prediction t"""
    name = None

    def value(self, y, t):
        raise NotImplementedError()

    def derivative(self, y, t):
        """Partial derivative with respect to the prediction t"""
        raise NotImplementedError()

    def __repr__(self):
        return '{0}()'.format(type(self).__name__)

    def __str__(self):
        return self.name


class LeastSquares(Loss):
    name = 'least-squares'

    def value(self, y, t):
        diff = np.asarray(y, dtype=float) - np.asarray(t, dtype=float)
        return diff * diff

    def derivative(self, y, t):
        return 2.0 * (np.asarray(t, dtype=float) - np.asarray(y, dtype=float))


class Logistic(Loss):
    """Logistic loss ``log(1 + exp(-y t))`` for labels in {-1, 1}"""
    name = 'logistic'

    def value(self, y, t):
        margin = np.asarray(y, dtype=float) * np.asarray(t, dtype=float)
        return np.logaddexp(0.0, -margin)

    def derivative(self, y, t):
        y = np.asarray(y, dtype=float)
        margin = y * np.asarray(t, dtype=float)
        return -y * special.expit(-margin)


class LossList(Mapping):
    """Named losses"""
    def __init__(self, *losses):
        self._losses = {loss.name: loss for loss in losses}

    def __getitem__(self, key):
        try:
            return self._losses[key]
        except KeyError:
            raise ValueError('unknown loss {0!r}, known: {1}'.format(
                key, ', '.join(sorted(self._losses))))

    def __len__(self):
        return len(self._losses)

    def __iter__(self):
        return iter(self._losses)


losses = LossList(LeastSquares(), Logistic())


class LabeledData(object):
    """Inputs (n x d) with one real label per row"""
    def __init__(self, inputs, labels):
        inputs = np.array(inputs, dtype=float)
        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        labels = np.array(labels, dtype=float).reshape(-1)
        if inputs.ndim != 2 or inputs.shape[0] < 1:
            raise ShapeError('labeled data needs at least one input row')
        if inputs.shape[0] != labels.shape[0]:
            raise ShapeError('{0} inputs but {1} labels'.format(
                inputs.shape[0], labels.shape[0]))
        if not (np.all(np.isfinite(inputs)) and np.all(np.isfinite(labels))):
            raise ShapeError('labeled data must be finite')
        self._inputs = inputs
        self._labels = labels

    @property
    def inputs(self):
        return self._inputs

    @property
    def labels(self):
        return self._labels

    @property
    def n(self):
        return self._inputs.shape[0]

    def subset(self, index):
        return LabeledData(self._inputs[index], self._labels[index])

    def __len__(self):
        return self.n


def _check_inputs(params, inputs):
    inputs = np.asarray(inputs, dtype=float)
    if inputs.ndim == 1:
        inputs = inputs.reshape(1, -1) if params.input_dim > 1 \
            else inputs.reshape(-1, 1)
    if inputs.shape[1] != params.input_dim:
        raise ShapeError('inputs of dimension {0} for a network on {1}'.format(
            inputs.shape[1], params.input_dim))
    return inputs


def _forward_pass(params, inputs):
    activations = [inputs]
    pre_activations = []
    for W, b in zip(params.weights, params.biases):
        z = activations[-1].dot(W.T) + b
        pre_activations.append(z)
        activations.append(np.maximum(z, 0.0))
    return pre_activations, activations


def predict(params, inputs):
    """Network outputs for every row of ``inputs``

    :rtype: numpy.ndarray
    """
    inputs = _check_inputs(params, inputs)
    _, activations = _forward_pass(params, inputs)
    return activations[-1].dot(params.w) + params.c


def hidden_layers(params, inputs):
    """Images of ``inputs`` after each hidden layer (after relu)

    :rtype: list
    """
    inputs = _check_inputs(params, inputs)
    return _forward_pass(params, inputs)[1][1:]


def forward(params, x):
    """Network output at a single input vector

    :param MLPParams params: network
    :param x: d vector (a scalar for d = 1)
    :rtype: float
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or x.shape[0] != params.input_dim:
        raise ShapeError('input of shape {0} for a network on {1}'.format(
            x.shape, params.input_dim))
    return float(predict(params, x.reshape(1, -1))[0])


def empirical_risk(params, data, loss):
    """Mean loss over the labeled samples"""
    outputs = predict(params, data.inputs)
    return float(np.mean(loss.value(data.labels, outputs)))


def grad_1d_closed_form(params, data, loss, partial0=config.DEFAULT_PARTIAL0):
    """Risk gradient of a one hidden layer network on scalar inputs

    Neurons with ``a_i > 0`` collect the samples right of their knot
    ``x_i* = -b_i/a_i``, neurons with ``a_i < 0`` those left of it. Samples
    sitting on the knot enter with weight ``partial0`` and, for the weight
    derivative, with the knot as their location. Neurons with ``a_i = 0``
    are constant and get the factor 0, 1 or ``partial0`` according to the
    sign of ``b_i``.

    :param MLPParams params: network with depth 1 and input dimension 1
    :param LabeledData data: samples
    :param Loss loss: loss function
    :param partial0: surrogate derivative of relu at 0
    :rtype: Gradient
    """
    if params.depth != 1 or params.input_dim != 1:
        raise ShapeError('the closed form needs one hidden layer on scalars')
    p0 = as_partial0(partial0)
    x = data.inputs[:, 0]
    n = data.n
    a = params.weights[0][:, 0]
    b = params.biases[0]
    lp = loss.derivative(data.labels, predict(params, data.inputs))
    grad_a = np.zeros_like(a)
    grad_b = np.zeros_like(b)
    grad_w = np.zeros_like(params.w)
    for i in range(a.shape[0]):
        w_i = params.w[i]
        z = a[i] * x + b[i]
        if a[i] != 0:
            knot = -b[i] / a[i]
            # right of the knot for a_i > 0, left of it for a_i < 0
            side = z > 0
            edge = z == 0
            lp_side = lp[side]
            lp_edge = lp[edge].sum()
            grad_a[i] = w_i / n * (
                lp_side.dot(x[side]) + p0 * knot * lp_edge)
            grad_b[i] = w_i / n * (lp_side.sum() + p0 * lp_edge)
            grad_w[i] = lp_side.dot(z[side]) / n
        else:
            factor = 1.0 if b[i] > 0 else (p0 if b[i] == 0 else 0.0)
            grad_a[i] = w_i / n * factor * lp.dot(x)
            grad_b[i] = w_i / n * factor * lp.sum()
            grad_w[i] = max(b[i], 0.0) / n * lp.sum()
    grad_c = lp.sum() / n
    return Gradient([grad_a.reshape(-1, 1)], [grad_b], grad_w, grad_c)


def backprop(params, batch, loss, partial0=config.DEFAULT_PARTIAL0):
    """Risk gradient for all layers by reverse mode differentiation

    :param MLPParams params: network
    :param LabeledData batch: samples the risk is averaged over
    :param Loss loss: loss function
    :param partial0: surrogate derivative of relu at 0, used at every
        pre activation that is exactly 0
    :rtype: Gradient
    """
    p0 = as_partial0(partial0)
    inputs = _check_inputs(params, batch.inputs)
    pre, act = _forward_pass(params, inputs)
    outputs = act[-1].dot(params.w) + params.c
    delta = loss.derivative(batch.labels, outputs) / batch.n
    grad_w = act[-1].T.dot(delta)
    grad_c = delta.sum()
    upstream = np.outer(delta, params.w)
    grad_weights = [None] * params.depth
    grad_biases = [None] * params.depth
    for l in reversed(range(params.depth)):
        dz = upstream * relu_derivative(pre[l], p0)
        grad_weights[l] = dz.T.dot(act[l])
        grad_biases[l] = dz.sum(axis=0)
        upstream = dz.dot(params.weights[l])
    return Gradient(grad_weights, grad_biases, grad_w, grad_c)


class TrainConfig(object):
    """Settings of an Adam training run

    :param float learning_rate: Adam step size
    :param int batch_size: samples per step, at least 1
    :param int epochs: passes over the data
    :param int patience: epochs without held-out improvement before
        stopping, None disables early stopping
    :param seed: seed of the batch shuffling
    :param partial0: surrogate derivative of relu at 0
    :param Loss loss: loss function
    :param LabeledData validation: held-out samples for early stopping
    """
    def __init__(
        self, learning_rate=config.LEARNING_RATE, batch_size=config.BATCH_SIZE,
        epochs=1, patience=config.PATIENCE, seed=config.DEFAULT_SEED,
        partial0=config.DEFAULT_PARTIAL0, loss=None, validation=None,
        beta1=config.ADAM_BETA1, beta2=config.ADAM_BETA2, eps=config.ADAM_EPS,
    ):
        if int(batch_size) < 1:
            raise ValueError('batch_size must be at least 1')
        if int(epochs) < 0:
            raise ValueError('epochs must be non negative')
        if float(learning_rate) < 0:
            raise ValueError('learning_rate must be non negative')
        self.learning_rate = float(learning_rate)
        self.batch_size = int(batch_size)
        self.epochs = int(epochs)
        self.patience = None if patience is None else int(patience)
        self.seed = seed
        self.partial0 = as_partial0(partial0)
        self.loss = loss or LeastSquares()
        self.validation = validation
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.eps = float(eps)


class Adam(object):
    """Adam on a flat parameter vector"""
    def __init__(self, size, learning_rate, beta1, beta2, eps):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self._m = np.zeros(size)
        self._v = np.zeros(size)
        self._step = 0

    def step(self, theta, grad):
        self._step += 1
        self._m = self.beta1 * self._m + (1 - self.beta1) * grad
        self._v = self.beta2 * self._v + (1 - self.beta2) * grad * grad
        m_hat = self._m / (1 - self.beta1 ** self._step)
        v_hat = self._v / (1 - self.beta2 ** self._step)
        return theta - self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)


def train(params, data, train_config, callback=None):
    """Train with Adam on shuffled mini batches

    The history holds the training risk before the first epoch and after
    every completed epoch. Training stops early when a validation set is
    configured and its risk has not improved for ``patience`` epochs.

    :param MLPParams params: initial network, left untouched
    :param LabeledData data: training samples
    :param TrainConfig train_config: optimizer settings
    :param callable callback: called as ``callback(epoch, params)`` after
        every epoch, epoch 0 being the initial network
    :rtype: tuple
    :returns: ``(final params, history)``
    """
    cfg = train_config
    loss = cfg.loss
    gen = rng_mod.generator(cfg.seed)
    theta = params.to_vector()
    current = params.copy()
    optimizer = Adam(theta.shape[0], cfg.learning_rate, cfg.beta1, cfg.beta2,
                     cfg.eps)
    history = [empirical_risk(current, data, loss)]
    if callback is not None:
        callback(0, current)
    best_held_out = math.inf
    stale = 0
    for epoch in range(1, cfg.epochs + 1):
        order = gen.permutation(data.n)
        for start in range(0, data.n, cfg.batch_size):
            batch = data.subset(order[start:start + cfg.batch_size])
            grad = backprop(current, batch, loss, cfg.partial0).to_vector()
            theta = optimizer.step(theta, grad)
            current = params.with_vector(theta)
        history.append(empirical_risk(current, data, loss))
        if callback is not None:
            callback(epoch, current)
        if cfg.validation is not None and cfg.patience is not None:
            held_out = empirical_risk(current, cfg.validation, loss)
            if held_out < best_held_out:
                best_held_out = held_out
                stale = 0
            else:
                stale += 1
                if stale >= cfg.patience:
                    LOGGER.info('early stopping after epoch %d', epoch)
                    break
    return current, history


def rmse(params, data):
    """Root mean squared error of the network on labeled data"""
    return math.sqrt(empirical_risk(params, data, LeastSquares()))
