#!/usr/bin/env python
"""validate.py - Compare the analytic results with their sampling oracles

Every suite returns one or more checks, each with a statistic, the
threshold it is held against and a verdict. The report prints one line
per check and the task exits with code 1 if any check fails. Suites get
seeds derived from the base seed and their position in the registry, so
a report only depends on the configuration.

Columns of the optional ``validate`` table:

    check, statistic, threshold, passed
"""
import logging
import math
from collections.abc import Mapping

import numpy as np
from invoke import task
from invoke.exceptions import Exit

from reluinit import config as defaults
from reluinit.do.states import analytic_states
from reluinit.do.train import TRAIN_DEFAULTS, median_final_rmse, train_runs
from reluinit.lib import analytics, montecarlo
from reluinit.lib import rng as rng_mod
from reluinit.lib.csvout import CsvTable, format_value
from reluinit.lib.expconfig import ExperimentConfig, experiment
from reluinit.lib.geometry import (
    DataSet, Neuron, NeuronState, classify, classify_1d,
    coni_is_positive_orthant, dual_cone_contains, ico_witness,
    layer_dead_mask,
)
from reluinit.lib.initstrat import (
    InitConfig, init_network, strategies, strategy_laws,
)
from reluinit.lib.netcore import (
    LabeledData, LeastSquares, Logistic, MLPParams, backprop,
    empirical_risk, forward, grad_1d_closed_form, predict,
)
from reluinit.lib.ratiodist import (
    Dirac, Normal, RatioPair, Uniform, cdf_ratio, fminus, fplus,
    ratio_tail, ratio_tail_lower_bound, sample_ratio,
)
from reluinit.lib.utils import aborting_on, green, puts, red

LOGGER = logging.getLogger(__name__)


class CheckResult(object):
    """Outcome of one check

    :param str name: check name, ``suite/case``
    :param float statistic: measured value
    :param float threshold: value the statistic is held against
    :param bool passed: verdict
    """
    def __init__(self, name, statistic, threshold, passed):
        self.name = name
        self.statistic = float(statistic)
        self.threshold = float(threshold)
        self.passed = bool(passed)

    def line(self):
        verdict = green('PASS') if self.passed else red('FAIL')
        return '[{0}] {1}: statistic={2} threshold={3}'.format(
            verdict, self.name, format_value(self.statistic),
            format_value(self.threshold))

    def as_row(self):
        return dict(check=self.name, statistic=self.statistic,
                    threshold=self.threshold, passed=self.passed)

    def __repr__(self):
        return 'CheckResult({0!r}, passed={1})'.format(self.name, self.passed)


def at_most(name, statistic, threshold):
    return CheckResult(name, statistic, threshold, statistic <= threshold)


def below(name, statistic, threshold):
    return CheckResult(name, statistic, threshold, statistic < threshold)


def above(name, statistic, threshold):
    return CheckResult(name, statistic, threshold, statistic > threshold)


def z_score(estimate, expected, se):
    """Distance in standard errors, inf for a mismatch without spread"""
    if se == 0:
        return 0.0 if estimate == expected else math.inf
    return abs(estimate - expected) / se


class SuiteList(Mapping):
    """Registry of check suites in registration order"""
    def __init__(self):
        self._suites = {}
        self._order = []

    def __getitem__(self, key):
        try:
            return self._suites[key]
        except KeyError:
            raise ValueError('unknown suite {0!r}, choose from {1}'.format(
                key, ', '.join(self._order)))

    def __len__(self):
        return len(self._suites)

    def __iter__(self):
        return iter(self._order)

    def position(self, name):
        return self._order.index(name)

    def _add_suite(self, name):
        def decorator(func):
            self._suites[name] = func
            self._order.append(name)
            return func
        return decorator


suites = SuiteList()
_suite = suites._add_suite

#: ratio families of the CDF suite with the grid their CDF is checked on
RATIO_FAMILIES = [
    ('normal-normal', RatioPair(Normal(1.0), Normal(1.0)), (-5.0, 5.0)),
    ('dirac-normal', RatioPair(Dirac(0.1), Normal(math.sqrt(2.0))),
     (-0.5, 0.5)),
    ('dirac-uniform', RatioPair(Dirac(1.0), Uniform(-1.0, 1.0)),
     (-4.0, 4.0)),
    ('uniform-asym', RatioPair(Uniform(0.0, 1.0), Uniform(-1.0, 1.0)),
     (-4.0, 4.0)),
    ('uniform-sym', RatioPair(Uniform(-1.0, 1.0), Uniform(-1.0, 1.0)),
     (-4.0, 4.0)),
]

#: pairs of the split identity, numerically integrated ones included
SPLIT_PAIRS = [pair for _, pair, _ in RATIO_FAMILIES] + [
    RatioPair(Uniform(0.5, 2.0), Normal(1.0)),
    RatioPair(Normal(0.5), Uniform(-2.0, 2.0)),
    RatioPair(Dirac(-0.3), Normal(2.0)),
]


@_suite('ratio-cdf')
def ratio_cdf_suite(cfg, seed):
    """Analytic ratio CDFs against the empirical CDF of sampled ratios"""
    n = cfg.get_int('ratio_samples')
    points = cfg.get_int('ratio_points')
    threshold = cfg.get_float('ks_threshold')
    results = []
    for index, (name, pair, (lo, hi)) in enumerate(RATIO_FAMILIES):
        grid = np.linspace(lo, hi, points)
        samples = sample_ratio(pair, n, rng_mod.generator(seed, (index,)))
        gap = np.max(np.abs(
            np.asarray(cdf_ratio(pair, grid))
            - montecarlo.empirical_cdf(samples, grid)))
        results.append(below('ratio-cdf/' + name, gap, threshold))
    return results


@_suite('ratio-split')
def ratio_split_suite(cfg, seed):
    """fminus + fplus = cdf, and the halving for symmetric pairs"""
    gen = rng_mod.generator(seed)
    count = cfg.get_int('split_instances')
    worst_sum = 0.0
    worst_half = 0.0
    for _ in range(count):
        pair = SPLIT_PAIRS[int(gen.integers(len(SPLIT_PAIRS)))]
        z = float(gen.normal(0.0, 3.0))
        total = cdf_ratio(pair, z)
        worst_sum = max(worst_sum,
                        abs(fminus(pair, z) + fplus(pair, z) - total))
        if pair.num.is_symmetric and pair.den.is_symmetric:
            worst_half = max(worst_half, abs(fplus(pair, z) - total / 2))
    return [
        at_most('ratio-split/sum', worst_sum, 1e-10),
        at_most('ratio-split/symmetric-half', worst_half, 1e-10),
    ]


@_suite('ratio-tail')
def ratio_tail_suite(cfg, seed):
    """Lower tail bounds never exceed the exact tails"""
    worst = -math.inf
    for _, pair, _ in RATIO_FAMILIES:
        for z in (-3.0, -1.0, -0.25, 0.25, 1.0, 3.0):
            for eps in (0.1, 0.5, 1.0, 2.0):
                worst = max(worst, ratio_tail_lower_bound(pair, z, eps)
                            - ratio_tail(pair, z))
    return [at_most('ratio-tail/bound-below-exact', worst, 1e-12)]


@_suite('states')
def states_suite(cfg, seed):
    """Sampled neuron state frequencies against the analytic ones"""
    n = cfg.get_int('state_neurons')
    sigmas = cfg.get_float('sigmas')
    results = []
    stream = 0
    for window in ((0.0, 1.0), (-1.0, 1.0)):
        for name in strategies:
            for rho in cfg.get_float_list('state_rhos'):
                probs = analytic_states(name, rho, *window)
                bias, weight = strategy_laws(name, rho)
                freqs = montecarlo.state_frequencies(
                    bias, weight, window[0], window[1], n,
                    rng_mod.generator(seed, (stream,)))
                stream += 1
                worst = max(
                    z_score(f, p, montecarlo.binomial_se(p, n))
                    for f, p in zip(freqs, probs))
                results.append(at_most(
                    'states/{0}/rho={1:g}/[{2:g},{3:g}]'.format(
                        name, rho, window[0], window[1]),
                    worst, sigmas))
    he = analytic_states('he-zero', 1.0, 0.0, 1.0)
    results.append(at_most(
        'states/he-zero-halves',
        max(abs(he.p_semi_active - 0.5), abs(he.p_inactive - 0.5)), 1e-12))
    nn = analytic_states('normal-normal', 1.0, 0.0, 1.0)
    results.append(at_most(
        'states/normal-normal-inactive', abs(nn.p_inactive - 0.375), 1e-9))
    return results


@_suite('bias-sign')
def bias_sign_suite(cfg, seed):
    """Positive biases leave no inactive neuron, negative ones no semi
    active one, on a window around 0"""
    n = cfg.get_int('bias_draws')
    weight = Normal(math.sqrt(2.0))
    _, _, p_ia = montecarlo.state_frequencies(
        Uniform(0.0, 1.0), weight, -1.0, 1.0, n,
        rng_mod.generator(seed, (0,)))
    _, p_sa, _ = montecarlo.state_frequencies(
        Uniform(-1.0, 0.0), weight, -1.0, 1.0, n,
        rng_mod.generator(seed, (1,)))
    return [
        at_most('bias-sign/positive-no-inactive', round(p_ia * n), 0),
        at_most('bias-sign/negative-no-semi-active', round(p_sa * n), 0),
    ]


@_suite('orthant')
def orthant_suite(cfg, seed):
    """Zero bias inactive frequency on orthant spanning data is 2^-d"""
    n = cfg.get_int('orthant_neurons')
    sigmas = cfg.get_float('sigmas')
    results = []
    for d in cfg.get_int_list('orthant_dims'):
        expected = analytics.inactive_probability_orthant(d)
        freq = montecarlo.orthant_inactive_frequency(
            d, n, rng_mod.generator(seed, (d,)))
        results.append(at_most(
            'orthant/d={0}'.format(d),
            z_score(freq, expected, montecarlo.binomial_se(expected, n)),
            sigmas))
    return results


def _random_1d_instance(gen, loss):
    m = int(gen.integers(1, 7))
    n = int(gen.integers(2, 11))
    params = MLPParams.from_1d(gen.normal(0, 1, m), gen.normal(0, 1, m),
                               gen.normal(0, 1, m), gen.normal())
    x = gen.uniform(-1.0, 2.0, n)
    if isinstance(loss, Logistic):
        labels = gen.choice([-1.0, 1.0], n)
    else:
        labels = gen.normal(0, 1, n)
    return params, LabeledData(x, labels)


def finite_difference(params, data, loss, h=1e-6):
    """Central difference gradient of the risk in the flat parameters"""
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


@_suite('gradients')
def gradients_suite(cfg, seed):
    """Closed form, reverse mode and finite difference gradients agree"""
    gen = rng_mod.generator(seed)
    count = cfg.get_int('gradient_instances')
    worst_closed = 0.0
    worst_fd = 0.0
    for index in range(count):
        loss = LeastSquares() if index % 2 == 0 else Logistic()
        params, data = _random_1d_instance(gen, loss)
        p0 = float(gen.uniform())
        closed = grad_1d_closed_form(params, data, loss, p0).to_vector()
        reverse = backprop(params, data, loss, p0).to_vector()
        scale = 1.0 + np.max(np.abs(reverse))
        worst_closed = max(worst_closed,
                           np.max(np.abs(closed - reverse)) / scale)
        z = np.outer(data.inputs[:, 0], params.weights[0][:, 0]) \
            + params.biases[0]
        if np.min(np.abs(z)) < 1e-3:
            continue
        fd = finite_difference(params, data, loss)
        worst_fd = max(worst_fd, np.max(np.abs(fd - reverse))
                       / max(np.max(np.abs(reverse)), 1e-8))
    return [
        at_most('gradients/closed-form-vs-backprop', worst_closed, 1e-12),
        below('gradients/finite-difference', worst_fd, 1e-6),
    ]


@_suite('homogeneity')
def homogeneity_suite(cfg, seed):
    """Zero bias networks satisfy f(alpha x) = alpha f(x) and f(0) = 0

    Scales are powers of two, which the floating point arithmetic carries
    through every layer without rounding.
    """
    gen = rng_mod.generator(seed)
    eps = np.finfo(float).eps
    worst = 0.0
    at_zero = 0.0
    for index in range(cfg.get_int('homogeneity_instances')):
        d = int(gen.integers(1, 5))
        arch = [d] + [int(w) for w in gen.integers(2, 9, gen.integers(1, 5))]
        params = init_network(InitConfig('he-normal', 'zero'), arch,
                              seed=rng_mod.derive_seed(seed, index))
        x = gen.normal(0, 1, d)
        alpha = 2.0 ** int(gen.integers(-10, 11))
        scaled = alpha * forward(params, x)
        gap = abs(forward(params, alpha * x) - scaled)
        if gap:
            worst = max(worst, gap / (eps * abs(scaled)) if scaled
                        else math.inf)
        at_zero = max(at_zero, abs(forward(params, np.zeros(d))))
    return [
        at_most('homogeneity/scaling-ulps', worst, 4.0),
        at_most('homogeneity/zero-input', at_zero, 0.0),
    ]


@_suite('norms')
def norms_suite(cfg, seed):
    """Norm moments, tails and delta thresholds of He weights"""
    sigmas = cfg.get_float('sigmas')
    reps = cfg.get_int('norm_reps')
    level = defaults.NORM_LEVEL
    results = []
    gautschi = 0.0
    ordering = 0.0
    for d in cfg.get_int_list('norm_dims'):
        sigma = math.sqrt(2.0 / d)
        stats = analytics.weight_norm_stats(d, sigma)
        gautschi = max(gautschi, stats.gautschi_lo - stats.mean,
                       stats.mean - stats.gautschi_hi)
        delta = analytics.norm_threshold_exact(d, level)
        s = math.sqrt(2.0) + delta
        exact = analytics.weight_norm_tail(d, sigma, s)
        freq = montecarlo.norm_tail_frequency(
            d, sigma, s, reps, rng_mod.generator(seed, (d,)))
        results.append(at_most(
            'norms/tail-mc/d={0}'.format(d),
            z_score(freq, exact, montecarlo.binomial_se(exact, reps)),
            sigmas))
        if d >= 3:
            results.append(at_most(
                'norms/tail-below-gamma-bound/d={0}'.format(d),
                exact - analytics.weight_norm_tail_bound(d, delta), 0.0))
            ordering = max(
                ordering,
                delta - analytics.norm_threshold_gamma(d, level),
                analytics.norm_threshold_gamma(d, level)
                - analytics.norm_threshold_lipschitz(d, level))
    results.append(at_most('norms/gautschi-bracket', gautschi, 0.0))
    results.append(at_most('norms/threshold-ordering', ordering, 1e-9))
    mean64 = analytics.expected_norm(64, math.sqrt(2.0 / 64)) / math.sqrt(2)
    results.append(at_most('norms/mean-d64',
                           max(0.996 - mean64, mean64 - 0.9981), 0.0))
    return results


@_suite('psi')
def psi_suite(cfg, seed):
    """Expected squared output size against its closed form"""
    n = cfg.get_int('psi_samples')
    rel_tol = cfg.get_float('psi_rel_tol')
    results = [
        at_most('psi/no-input', abs(analytics.psi_output_size(0, 0.1) - 0.01),
                1e-15),
        at_most('psi/unit-input',
                abs(math.sqrt(analytics.psi_output_size(1, 0.1)) - 1
                    - 0.057323), 5e-6),
    ]
    worst = 0.0
    stream = 0
    for u in (0.25, 0.5, 1.0):
        for b in (0.0, 0.1, 1.0):
            estimate, _ = montecarlo.psi_estimate(
                u, b, n, rng_mod.generator(seed, (stream,)))
            stream += 1
            exact = analytics.psi_output_size(u, b)
            worst = max(worst, abs(estimate - exact) / exact)
    results.append(below('psi/monte-carlo-relative', worst, rel_tol))
    return results


@_suite('directions')
def directions_suite(cfg, seed):
    """He directions are uniform, uniform weight directions follow their
    closed form density"""
    n = cfg.get_int('direction_samples')
    sigmas = cfg.get_float('sigmas')
    results = []
    for d in (2, 3):
        p_value = montecarlo.direction_chisquare(
            d, n, rng_mod.generator(seed, (d,)))
        results.append(above('directions/he-uniform/d={0}'.format(d),
                             p_value, 0.01))
    xi = np.array([1.0, 1.0]) / math.sqrt(2.0)
    results.append(at_most(
        'directions/uniform-density-diagonal',
        abs(analytics.direction_density_uniform_weights(xi) - 0.25), 1e-12))
    results.append(at_most(
        'directions/uniform-density-mass',
        abs(montecarlo.uniform_direction_total_mass() - 1.0), 1e-8))
    observed, expected, se = montecarlo.uniform_direction_window(
        math.pi / 4, 0.05, n, rng_mod.generator(seed, (4,)))
    results.append(at_most('directions/uniform-window/d=2',
                           z_score(observed, expected, se), sigmas))
    for d in (3, 4, 5):
        direct, reweighted, se = montecarlo.uniform_direction_linf(
            d, n, rng_mod.generator(seed, (5, d)))
        results.append(at_most(
            'directions/uniform-sup-norm/d={0}'.format(d),
            z_score(direct, reweighted, se), sigmas))
    return results


@_suite('dead-count')
def dead_count_suite(cfg, seed):
    """He-zero dead neuron counts follow Binomial(m, 1/2) on [0, 1] data"""
    width = 16
    inits = cfg.get_int('dead_inits')
    counts = np.empty(inits)
    cfg_init = InitConfig('he-normal', 'zero')
    for k in range(inits):
        t = rng_mod.generator(seed, (0, k)).uniform(0, 1, (256, 1))
        params = init_network(cfg_init, [1, width], t,
                              seed=rng_mod.derive_seed(seed, 1, k))
        counts[k] = np.sum(layer_dead_mask(DataSet(t), params.weights[0],
                                           params.biases[0]))
    se = math.sqrt(width * 0.25 / inits)
    return [at_most('dead-count/binomial-mean',
                    z_score(float(np.mean(counts)), width * 0.5, se),
                    cfg.get_float('sigmas'))]


@_suite('geometry')
def geometry_suite(cfg, seed):
    """State characterizations agree: the knot shortcut, the ico witness,
    dual cones and the orthant test"""
    count = cfg.get_int('geometry_instances')
    gen = rng_mod.generator(seed, (0,))
    disagreements = 0
    for index in range(count):
        neuron = Neuron([gen.normal()], gen.normal())
        if index % 2:
            knot = -neuron.b / float(neuron.a[0])
            data = DataSet([knot, knot + 0.01 + abs(gen.normal())])
        else:
            data = DataSet(gen.uniform(-1.0, 1.0, int(gen.integers(2, 6))))
        if classify_1d(data, neuron) is not classify(data, neuron):
            disagreements += 1
    gen = rng_mod.generator(seed, (1,))
    wrong_witness = 0
    off_edge = 0.0
    for _ in range(count):
        data = DataSet(gen.normal(size=(int(gen.integers(2, 7)), 2)))
        neuron = Neuron(gen.normal(size=2), gen.normal())
        witness = ico_witness(data, neuron)
        fully = classify(data, neuron) is NeuronState.FULLY_ACTIVE
        if (witness is not None) != fully:
            wrong_witness += 1
        elif witness is not None:
            if not np.all(witness.coefficients > 0):
                wrong_witness += 1
            off_edge = max(off_edge, abs(float(
                neuron.pre_activation(witness.point[None, :])[0])))
    gen = rng_mod.generator(seed, (2,))
    not_reversed = 0
    for _ in range(count):
        small = gen.normal(size=(3, 2))
        large = DataSet(np.vstack([small, gen.normal(size=(3, 2))]))
        y = gen.normal(size=2)
        if dual_cone_contains(large, y) \
                and not dual_cone_contains(DataSet(small), y):
            not_reversed += 1
    gen = rng_mod.generator(seed, (3,))
    orthant_wrong = 0
    for d in cfg.get_int_list('orthant_dims'):
        inner = gen.uniform(0.1, 1.0, (16, d))
        axes = np.eye(d) * gen.uniform(0.5, 2.0, d)
        if not coni_is_positive_orthant(DataSet(np.vstack([axes, inner]))):
            orthant_wrong += 1
        if d > 1 and coni_is_positive_orthant(DataSet(inner)):
            orthant_wrong += 1
    return [
        at_most('geometry/classify-1d-agrees', disagreements, 0),
        at_most('geometry/ico-witness-iff-fully-active', wrong_witness, 0),
        at_most('geometry/ico-witness-on-edge', off_edge, 1e-9),
        at_most('geometry/dual-cone-reverses-inclusion', not_reversed, 0),
        at_most('geometry/orthant-conic-hull', orthant_wrong, 0),
    ]


def affine_residual(params, inputs):
    """Largest residual of the best affine fit to the predictor"""
    outputs = predict(params, inputs)
    design = np.hstack([inputs, np.ones((inputs.shape[0], 1))])
    coef = np.linalg.lstsq(design, outputs, rcond=None)[0]
    scale = max(1.0, float(np.max(np.abs(outputs))))
    return float(np.max(np.abs(design.dot(coef) - outputs))) / scale


@_suite('training')
def training_suite(cfg, seed):
    """Knot uniform initialization trains the sine target much better"""
    epochs = cfg.get_int('train_epochs')
    train_cfg = ExperimentConfig('train-1d', {
        'seed': str(seed),
        'widths': str(cfg.get_int('train_width')),
        'targets': 'sine',
        'inits': 'he-zero;knot-uniform',
        'seeds': str(cfg.get_int('train_seeds')),
        'epochs': str(epochs),
        'snapshots': str(epochs),
    }, TRAIN_DEFAULTS)
    runs = train_runs(train_cfg)
    he = median_final_rmse(runs, 'he-zero', epochs)
    knot = median_final_rmse(runs, 'knot-uniform', epochs)
    t = rng_mod.generator(seed, (0, 0)).uniform(0, 1, (256, 1))
    params = init_network(InitConfig('he-normal', 'zero'),
                          [1, cfg.get_int('train_width')], t, seed=seed)
    return [
        below('training/knot-uniform-vs-he-zero-rmse', knot / he, 0.5),
        below('training/he-zero-affine-at-init', affine_residual(params, t),
              1e-9),
    ]


VALIDATE_DEFAULTS = {
    'suites': ';'.join(suites),
    'ks_threshold': str(defaults.KS_THRESHOLD),
    'sigmas': str(defaults.BINOMIAL_SIGMAS),
    'ratio_samples': '1000000',
    'ratio_points': '12',
    'split_instances': '1000',
    'state_neurons': '100000',
    'state_rhos': '1,5',
    'bias_draws': '1000000',
    'orthant_neurons': '100000',
    'orthant_dims': '2,3,4,5,6,7,8',
    'gradient_instances': '1000',
    'homogeneity_instances': '10000',
    'norm_dims': '1,2,3,8,64,256',
    'norm_reps': str(defaults.NORM_REPETITIONS),
    'psi_samples': '10000000',
    'psi_rel_tol': '0.01',
    'direction_samples': '100000',
    'dead_inits': '1000',
    'geometry_instances': '10000',
    'train_seeds': '10',
    'train_epochs': '250',
    'train_width': '1024',
}


def run_suites(cfg):
    """Run the configured suites in registry order

    :rtype: list of CheckResult
    """
    names = cfg.get_str_list('suites')
    for name in names:
        suites[name]
    results = []
    for name in sorted(names, key=suites.position):
        LOGGER.info('running suite %s', name)
        results.extend(suites[name](
            cfg, rng_mod.derive_seed(cfg.seed, suites.position(name))))
    return results


def report_table(results):
    table = CsvTable('validate',
                     ['check', 'statistic', 'threshold', 'passed'])
    table.extend(result.as_row() for result in results)
    return table


@task
def validate(c, config=None, seed=None, out=None):
    """Run the sampling and inequality checks, exit 1 on any failure

    :param str config: INI file with a [validate] section
    :param int seed:   base seed of all suites
    :param str out:    optional CSV copy of the report
    """
    with aborting_on(ValueError, RuntimeError, OSError):
        cfg = experiment('validate', config, VALIDATE_DEFAULTS, seed, out)
        results = run_suites(cfg)
        out_path = dict(cfg.items()).get('out')
        if out_path:
            report_table(results).write(out_path)
    for result in results:
        puts(result.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        puts(red('{0} of {1} checks failed: {2}'.format(
            len(failed), len(results), ', '.join(failed))))
        raise Exit(code=1)
    puts(green('all {0} checks passed'.format(len(results))))
