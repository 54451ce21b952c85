#!/usr/bin/env python
"""train.py - Training of single hidden layer networks on 1-D targets

Columns of the ``train-1d`` table, one row per run and snapshot epoch:

    target, init, width, seed   the run
    epoch                       0 is the initial network
    risk                        least squares training risk
    rmse                        root mean squared error on the samples
    dead                        neurons dead on the samples

The ``-knots`` sibling table holds knot histograms per snapshot, split by
the sign of the neuron weight (``positive`` for a > 0):

    target, init, width, seed, epoch, sign, bin_lo, bin_hi, count
"""
import logging
import math
from collections.abc import Mapping

import numpy as np
from invoke import task

from reluinit import config as defaults
from reluinit.lib import rng as rng_mod
from reluinit.lib.csvout import CsvTable
from reluinit.lib.expconfig import experiment
from reluinit.lib.geometry import DataSet, layer_dead_mask
from reluinit.lib.initstrat import InitConfig, init_network, layer_knots
from reluinit.lib.netcore import (
    LabeledData, LeastSquares, TrainConfig, empirical_risk, rmse, train,
)
from reluinit.lib.parallel import RepetitionQueue
from reluinit.lib.utils import aborting_on, green, puts, sibling_path

LOGGER = logging.getLogger(__name__)

TRAIN_DEFAULTS = {
    'widths': '16,128,1024',
    'targets': 'linear;hat;sine',
    'inits': 'he-zero;knot-uniform',
    'seeds': '50',
    'epochs': '250',
    'snapshots': '10,50,250',
    'n': str(defaults.TRAIN_SAMPLES),
    'learning_rate': str(defaults.LEARNING_RATE),
    'batch_size': str(defaults.BATCH_SIZE),
    'partial0': str(defaults.DEFAULT_PARTIAL0),
    'bins': '40',
    'knot_range': '-1,2',
}

LOSS_COLUMNS = [
    'target', 'init', 'width', 'seed', 'epoch', 'risk', 'rmse', 'dead',
]

KNOT_COLUMNS = [
    'target', 'init', 'width', 'seed', 'epoch', 'sign', 'bin_lo', 'bin_hi',
    'count',
]

#: initializations of the training comparison
INITS = {
    'he-zero': InitConfig('he-normal', 'zero'),
    'knot-uniform': InitConfig('he-normal', 'knot-uniform'),
}


class TargetList(Mapping):
    """Registry of target functions on [0, 1]"""
    def __init__(self):
        self._targets = {}

    def __getitem__(self, key):
        try:
            return self._targets[key]
        except KeyError:
            raise ValueError('unknown target {0!r}, choose from {1}'.format(
                key, ', '.join(sorted(self._targets))))

    def __len__(self):
        return len(self._targets)

    def __iter__(self):
        return iter(sorted(self._targets))

    def _add_target(self, name):
        def decorator(func):
            self._targets[name] = func
            return func
        return decorator


targets = TargetList()


@targets._add_target('linear')
def linear(t):
    return 2.0 - t


@targets._add_target('hat')
def hat(t):
    return 1.0 - 6.0 * np.abs(t - 1.0 / 3.0)


@targets._add_target('sine')
def sine(t):
    return np.sin(2 * math.pi * t)


def init_config(name):
    try:
        return INITS[name]
    except KeyError:
        raise ValueError('unknown init {0!r}, choose from {1}'.format(
            name, ', '.join(sorted(INITS))))


def training_data(target, n, seed, index):
    """``n`` uniform samples on [0, 1] labeled by the target

    Samples depend on the seed index only, so every init and width of a
    seed trains on the same data.
    """
    gen = rng_mod.generator(seed, (0, index))
    t = np.sort(gen.uniform(0.0, 1.0, n))
    return LabeledData(t, targets[target](t))


def knot_histogram(params, edges):
    """Knot counts of the neurons with positive and negative weight

    :rtype: dict
    :returns: ``{'positive': counts, 'negative': counts}``
    """
    a = params.weights[0].reshape(-1)
    knots = layer_knots(a, params.biases[0])
    return {
        'positive': np.histogram(knots[a > 0], bins=edges)[0],
        'negative': np.histogram(knots[a < 0], bins=edges)[0],
    }


class TrainRun(object):
    """One training run of the comparison

    :param str target: target name
    :param str init: init name
    :param int width: hidden layer width
    :param int index: seed index
    :param ExperimentConfig cfg: train-1d section
    """
    def __init__(self, target, init, width, index, cfg):
        self.target = target
        self.init = init
        self.width = width
        self.index = index
        self._cfg = cfg
        self._snapshots = set(cfg.get_int_list('snapshots')) | {0}
        lo, hi = cfg.get_float_list('knot_range')
        self._edges = np.linspace(lo, hi, cfg.get_int('bins') + 1)
        self.loss_rows = []
        self.knot_rows = []

    def _key(self):
        return dict(target=self.target, init=self.init, width=self.width,
                    seed=self.index)

    def _record(self, epoch, params, data, partial0):
        if epoch not in self._snapshots:
            return
        dead = layer_dead_mask(DataSet(data.inputs), params.weights[0],
                               params.biases[0], partial0)
        row = self._key()
        row.update(
            epoch=epoch,
            risk=empirical_risk(params, data, LeastSquares()),
            rmse=rmse(params, data),
            dead=int(np.sum(dead)),
        )
        self.loss_rows.append(row)
        histogram = knot_histogram(params, self._edges)
        for sign, counts in sorted(histogram.items()):
            for lo, hi, count in zip(self._edges[:-1], self._edges[1:],
                                     counts):
                row = self._key()
                row.update(epoch=epoch, sign=sign, bin_lo=float(lo),
                           bin_hi=float(hi), count=int(count))
                self.knot_rows.append(row)

    def run(self):
        cfg = self._cfg
        seed = cfg.seed
        partial0 = cfg.get_float('partial0')
        data = training_data(self.target, cfg.get_int('n'), seed, self.index)
        params = init_network(
            init_config(self.init), [1, self.width], data.inputs,
            seed=rng_mod.derive_seed(seed, 1, self.index),
        )
        train_cfg = TrainConfig(
            learning_rate=cfg.get_float('learning_rate'),
            batch_size=cfg.get_int('batch_size'),
            epochs=cfg.get_int('epochs'),
            patience=None,
            seed=rng_mod.derive_seed(seed, 2, self.index),
            partial0=partial0,
        )

        def callback(epoch, current):
            self._record(epoch, current, data, partial0)

        final, history = train(params, data, train_cfg, callback)
        LOGGER.debug('%s/%s/%d seed %d: risk %g -> %g', self.target,
                     self.init, self.width, self.index, history[0],
                     history[-1])
        return self


def train_runs(cfg):
    """Run every (target, init, width, seed) combination

    :rtype: list
    :returns: finished TrainRun objects in combination order
    """
    names = cfg.get_str_list('targets')
    inits = cfg.get_str_list('inits')
    for name in names:
        targets[name]
    for name in inits:
        init_config(name)
    widths = cfg.get_int_list('widths')
    if not widths or min(widths) < 1:
        raise ValueError('widths must be positive integers')
    if len(cfg.get_float_list('knot_range')) != 2:
        raise ValueError('knot_range needs two values lo,hi')
    cells = [
        (target, init, width, index)
        for target in names for init in inits for width in widths
        for index in range(cfg.get_int('seeds'))
    ]

    def job(position, seed):
        return TrainRun(*cells[position], cfg=cfg).run()

    return RepetitionQueue(job, len(cells), cfg.seed, name='train').run()


def train_tables(cfg):
    """:rtype: tuple of the loss and the knot CsvTable"""
    losses = CsvTable('train-1d', LOSS_COLUMNS)
    knots = CsvTable('train-1d-knots', KNOT_COLUMNS)
    for run in train_runs(cfg):
        losses.extend(run.loss_rows)
        knots.extend(run.knot_rows)
    return losses, knots


def median_final_rmse(runs, init, epoch):
    """Median RMSE at ``epoch`` over the runs of one init"""
    values = [
        row['rmse'] for run in runs if run.init == init
        for row in run.loss_rows if row['epoch'] == epoch
    ]
    if not values:
        raise ValueError('no {0} runs recorded epoch {1}'.format(init, epoch))
    return float(np.median(values))


@task
def train_1d(c, config=None, seed=None, out=None):
    """Train 1-D networks from He-zero and knot-uniform initializations

    Writes loss curves to ``out`` and knot histograms next to it as
    ``<out>-knots.csv``.

    :param str config: INI file with a [train-1d] section
    :param int seed:   base seed of data, inits and batch order
    :param str out:    output CSV path
    """
    with aborting_on(ValueError, RuntimeError, OSError):
        cfg = experiment('train-1d', config, TRAIN_DEFAULTS, seed, out)
        out = cfg.out
        losses, knots = train_tables(cfg)
        losses.write(out)
        knots.write(sibling_path(out, 'knots'))
    puts(green('wrote {0} rows to {1}'.format(len(losses), out)))
