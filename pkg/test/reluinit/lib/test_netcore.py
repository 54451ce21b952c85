#!/usr/bin/env python
"""test_netcore.py - Tests for reluinit.lib.netcore
"""
import numpy as np
import pytest

from reluinit.lib.initstrat import InitConfig, init_network
from reluinit.lib.netcore import (
    LabeledData, LeastSquares, Logistic, MLPParams, Partial0, ShapeError,
    TrainConfig, backprop, empirical_risk, forward, grad_1d_closed_form,
    losses, predict, relu_derivative, rmse, train,
)
from reluinit.lib.rng import generator


def finite_difference(params, data, loss, h=1e-6):
    theta = params.to_vector()
    grad = np.empty_like(theta)
    for k in range(theta.shape[0]):
        step = np.zeros_like(theta)
        step[k] = h
        grad[k] = (
            empirical_risk(params.with_vector(theta + step), data, loss)
            - empirical_risk(params.with_vector(theta - step), data, loss)
        ) / (2 * h)
    return grad


def random_1d(gen, m=4, n=16):
    params = MLPParams.from_1d(gen.normal(size=m), gen.normal(size=m),
                               gen.normal(size=m), gen.normal())
    data = LabeledData(gen.uniform(-1.0, 1.0, n), gen.normal(size=n))
    return params, data


def random_deep(gen, arch=(3, 5, 4)):
    weights = [gen.normal(size=(arch[i + 1], arch[i]))
               for i in range(len(arch) - 1)]
    biases = [gen.normal(size=width) for width in arch[1:]]
    return MLPParams(weights, biases, gen.normal(size=arch[-1]), gen.normal())


def min_abs_pre_activation(params, inputs):
    act = inputs
    smallest = np.inf
    for W, b in zip(params.weights, params.biases):
        z = act.dot(W.T) + b
        smallest = min(smallest, np.min(np.abs(z)))
        act = np.maximum(z, 0.0)
    return smallest


@pytest.fixture
def single():
    return MLPParams.from_1d([1.0], [0.0], [1.0])


@pytest.mark.parametrize(('x', 'expected'), [(2.0, 2.0), (-2.0, 0.0)])
def test_forward_single_neuron(single, x, expected):
    assert forward(single, x) == expected


def test_forward_zero_weights():
    params = MLPParams.from_1d(np.zeros(3), np.zeros(3), np.zeros(3), 0.7)
    for x in (-5.0, 0.0, 3.0):
        assert forward(params, x) == 0.7


def test_forward_rejects_wrong_dimension(single):
    with pytest.raises(ShapeError):
        forward(single, [1.0, 2.0])


def test_params_shape_checks():
    with pytest.raises(ShapeError):
        MLPParams([np.ones((2, 1))], [np.ones(3)], np.ones(2))
    with pytest.raises(ShapeError):
        MLPParams([np.ones((2, 1)), np.ones((2, 3))], [np.ones(2), np.ones(2)],
                  np.ones(2))
    with pytest.raises(ShapeError):
        MLPParams([np.ones((2, 1))], [np.ones(2)], np.ones(3))


def test_params_vector():
    params = random_deep(generator(1))
    vector = params.to_vector()
    assert vector.shape[0] == 3 * 5 + 5 + 5 * 4 + 4 + 4 + 1
    assert params.with_vector(vector) == params
    with pytest.raises(ShapeError):
        params.with_vector(vector[:-1])


def test_risk_examples():
    inputs = np.array([0.0, 1.0])
    perfect = MLPParams.from_1d([1.0], [0.0], [1.0])
    assert empirical_risk(perfect, LabeledData(inputs, inputs),
                          LeastSquares()) == 0.0
    constant = MLPParams.from_1d([0.0], [0.0], [0.0])
    data = LabeledData(inputs, [1.0, -1.0])
    assert empirical_risk(constant, data, LeastSquares()) == 1.0
    assert rmse(constant, data) == 1.0


def test_logistic_loss():
    loss = Logistic()
    assert loss.value(1.0, 0.0) == pytest.approx(np.log(2.0), rel=1e-15)
    assert loss.derivative(1.0, 0.0) == pytest.approx(-0.5, rel=1e-15)
    assert set(losses) == {'least-squares', 'logistic'}
    with pytest.raises(ValueError):
        losses['hinge']


def test_relu_derivative():
    values = relu_derivative(np.array([-1.0, 0.0, 2.0]), 0.25)
    assert values.tolist() == [0.0, 0.25, 1.0]


@pytest.mark.parametrize('value', [-0.1, 1.5])
def test_partial0_range(value):
    with pytest.raises(ValueError):
        Partial0(value)


def test_closed_form_inactive_neuron():
    # knot at 0.5 on the wrong side of samples right of it
    params = MLPParams.from_1d([-1.0, 1.0], [0.5, 0.0], [2.0, 1.0])
    data = LabeledData([0.6, 0.8, 1.0], [1.0, 0.0, 2.0])
    grad = grad_1d_closed_form(params, data, LeastSquares())
    assert grad.weights[0][0, 0] == 0.0
    assert grad.biases[0][0] == 0.0
    assert grad.w[0] == 0.0


def test_closed_form_constant_negative_bias():
    params = MLPParams.from_1d([0.0, 1.0], [-0.3, 0.1], [1.5, 1.0])
    data = LabeledData([0.0, 0.5, 1.0], [0.2, 0.1, 0.7])
    grad = grad_1d_closed_form(params, data, LeastSquares())
    assert grad.weights[0][0, 0] == 0.0
    assert grad.biases[0][0] == 0.0
    assert grad.w[0] == 0.0


@pytest.mark.parametrize('partial0', [0.0, 0.5, 1.0])
def test_closed_form_sample_on_knot(partial0):
    params = MLPParams.from_1d([1.0, -2.0, 0.0], [-0.5, 1.0, 0.0],
                               [1.0, -0.5, 2.0], 0.3)
    data = LabeledData([0.0, 0.25, 0.5, 1.0], [0.1, -0.2, 0.4, 1.0])
    closed = grad_1d_closed_form(params, data, LeastSquares(), partial0)
    reverse = backprop(params, data, LeastSquares(), partial0)
    assert closed.max_abs_diff(reverse) <= 1e-14


def test_closed_form_matches_backprop():
    gen = generator(2)
    for index in range(1000):
        loss = LeastSquares() if index % 2 else Logistic()
        params, data = random_1d(gen, m=int(gen.integers(1, 8)),
                                 n=int(gen.integers(1, 20)))
        p0 = float(gen.uniform())
        closed = grad_1d_closed_form(params, data, loss, p0).to_vector()
        reverse = backprop(params, data, loss, p0).to_vector()
        tolerance = 1e-12 * np.maximum(1.0, np.abs(reverse))
        assert np.all(np.abs(closed - reverse) <= tolerance)


def test_closed_form_needs_one_scalar_layer():
    params = random_deep(generator(3))
    data = LabeledData(np.zeros((2, 3)), [0.0, 1.0])
    with pytest.raises(ShapeError):
        grad_1d_closed_form(params, data, LeastSquares())


def test_closed_form_matches_finite_differences():
    gen = generator(4)
    checked = 0
    while checked < 20:
        params, data = random_1d(gen)
        if min_abs_pre_activation(params, data.inputs) < 1e-3:
            continue
        checked += 1
        closed = grad_1d_closed_form(params, data, LeastSquares()).to_vector()
        numeric = finite_difference(params, data, LeastSquares())
        assert np.all(np.abs(closed - numeric)
                      <= 1e-6 * np.maximum(1.0, np.abs(numeric)))


def test_backprop_matches_finite_differences():
    gen = generator(5)
    checked = 0
    while checked < 20:
        params = random_deep(gen)
        data = LabeledData(gen.normal(size=(8, 3)), gen.normal(size=8))
        if min_abs_pre_activation(params, data.inputs) < 1e-3:
            continue
        checked += 1
        for loss in (LeastSquares(), Logistic()):
            reverse = backprop(params, data, loss).to_vector()
            numeric = finite_difference(params, data, loss)
            assert np.all(np.abs(reverse - numeric)
                          <= 1e-5 * np.maximum(1.0, np.abs(numeric)))


def test_zero_bias_network_is_homogeneous():
    gen = generator(6)
    for _ in range(100):
        params = random_deep(gen, arch=(4, 6, 6, 3))
        params = MLPParams(params.weights,
                           [np.zeros_like(b) for b in params.biases],
                           params.w, 0.0)
        x = gen.normal(size=4)
        alpha = 2.0 ** int(gen.integers(-10, 10))
        assert forward(params, alpha * x) == alpha * forward(params, x)
        assert forward(params, np.zeros(4)) == 0.0


def test_zero_bias_output_gradient_scales():
    gen = generator(7)
    params = init_network(InitConfig('he-normal', 'zero'), [3, 8, 8],
                          seed=gen)
    inputs = gen.normal(size=(5, 3))
    alpha = 4.0
    # the risk of labels 0 is quadratic in the output, so dR/dw scales by
    # alpha^2 together with the inputs
    plain = backprop(params, LabeledData(inputs, np.zeros(5)), LeastSquares())
    scaled = backprop(params, LabeledData(alpha * inputs, np.zeros(5)),
                      LeastSquares())
    assert np.allclose(scaled.w, alpha ** 2 * plain.w, rtol=1e-12, atol=0)


def test_predict_matches_forward():
    gen = generator(8)
    params = random_deep(gen)
    inputs = gen.normal(size=(6, 3))
    values = predict(params, inputs)
    for x, value in zip(inputs, values):
        assert forward(params, x) == value


def test_labeled_data_checks():
    with pytest.raises(ShapeError):
        LabeledData([0.0, 1.0], [1.0])
    with pytest.raises(ShapeError):
        LabeledData([np.inf], [1.0])
    with pytest.raises(ShapeError):
        LabeledData(np.zeros((0, 1)), [])


def linear_task(n=64):
    x = np.linspace(0.0, 1.0, n)
    return LabeledData(x, 2.0 - x)


def test_zero_learning_rate_keeps_params():
    params, _ = random_1d(generator(9), m=6)
    data = linear_task()
    final, history = train(params, data, TrainConfig(
        learning_rate=0.0, batch_size=16, epochs=5, seed=1))
    assert final == params
    assert len(history) == 6
    assert len(set(history)) == 1


def test_train_is_deterministic():
    params, _ = random_1d(generator(10), m=6)
    data = linear_task()
    cfg = TrainConfig(learning_rate=0.01, batch_size=16, epochs=10, seed=3)
    first = train(params, data, cfg)
    second = train(params, data, cfg)
    assert first[0] == second[0]
    assert first[1] == second[1]


def test_train_fits_linear_target():
    data = linear_task(256)
    params = init_network(InitConfig('he-normal', 'hull:1'), [1, 16],
                          data.inputs, seed=11)
    final, history = train(params, data, TrainConfig(
        learning_rate=0.01, batch_size=32, epochs=50, seed=2))
    assert history[-1] < history[0]
    assert rmse(final, data) < 0.05
    assert rmse(final, data) == pytest.approx(np.sqrt(history[-1]),
                                              rel=1e-12)


def test_train_callback_sees_every_epoch():
    params, _ = random_1d(generator(12))
    seen = []
    train(params, linear_task(), TrainConfig(epochs=3, batch_size=64),
          callback=lambda epoch, current: seen.append(epoch))
    assert seen == [0, 1, 2, 3]


def test_dead_neuron_is_frozen():
    # neuron 0 is inactive on [0, 1] with no sample on its knot
    params = MLPParams.from_1d([-1.0, 1.0, 2.0], [-0.1, -0.3, -1.0],
                               [0.7, 1.0, -0.5])
    data = linear_task(32)
    final, _ = train(params, data, TrainConfig(
        learning_rate=0.01, batch_size=data.n, epochs=100, partial0=0.0,
        seed=4))
    assert final.weights[0][0, 0] == -1.0
    assert final.biases[0][0] == -0.1
    assert final.w[0] == 0.7
    assert final.w[1] != 1.0


def test_early_stopping():
    gen = generator(13)
    params, _ = random_1d(gen)
    data = linear_task()
    validation = LabeledData(gen.uniform(0, 1, 16), gen.normal(size=16))
    _, history = train(params, data, TrainConfig(
        learning_rate=0.0, batch_size=64, epochs=50, patience=3,
        validation=validation))
    # no step ever improves the held out risk after the first epoch
    assert len(history) == 1 + 4


def test_train_config_checks():
    with pytest.raises(ValueError):
        TrainConfig(batch_size=0)
    with pytest.raises(ValueError):
        TrainConfig(epochs=-1)
