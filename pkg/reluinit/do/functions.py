#!/usr/bin/env python
"""functions.py - Randomly initialized predictors on a grid

Columns of the ``random-functions`` table:

    strategy, dim, rep   init strategy, input dimension and repetition
    x1, x2               grid point, x2 empty in one dimension
    y                    predictor value

The ``-edges`` sibling table describes the neurons of the 2-D networks:

    strategy, rep, neuron
    a1, a2, b            weights and bias, the edge is a1 x1 + a2 x2 + b = 0
    distance             distance of the edge from the origin
    xstar1, xstar2       data point the edge was drawn through, empty for
                         data independent biases
"""
import numpy as np
from invoke import task

from reluinit.lib import rng as rng_mod
from reluinit.lib.csvout import CsvTable
from reluinit.lib.expconfig import experiment
from reluinit.lib.geometry import DataSet
from reluinit.lib.initstrat import (
    InitConfig, WeightScheme, init_layer, layer_edge_distances,
)
from reluinit.lib.netcore import MLPParams, predict
from reluinit.lib.parallel import RepetitionQueue
from reluinit.lib.utils import aborting_on, green, puts, sibling_path

FUNCTION_DEFAULTS = {
    'strategies': 'he-zero;he-const;hull',
    'reps': '10',
    'width_1d': '128',
    'width_2d': '20',
    'grid_range': '-0.5,1.5',
    'grid_1d': '201',
    'grid_2d': '41',
    'n_data': '100',
}

#: initializations of the random function panels
STRATEGIES = {
    'he-zero': InitConfig('he-normal', 'zero'),
    'he-const': InitConfig('he-normal', 'const:0.1'),
    'hull': InitConfig('sphere', 'hull:5'),
}


def strategy_config(name):
    try:
        return STRATEGIES[name]
    except KeyError:
        raise ValueError('unknown strategy {0!r}, choose from {1}'.format(
            name, ', '.join(sorted(STRATEGIES))))


def grid_points(lo, hi, count, dim):
    """Grid of ``count`` points per axis, one point per row"""
    axis = np.linspace(lo, hi, count)
    if dim == 1:
        return axis.reshape(-1, 1)
    x1, x2 = np.meshgrid(axis, axis, indexing='ij')
    return np.column_stack([x1.ravel(), x2.ravel()])


def random_network(name, dim, width, n_data, seed):
    """One random single hidden layer network and its edge anchors

    Data dependent biases see ``n_data`` uniform samples of [0, 1]^dim.

    :rtype: tuple
    :returns: ``(MLPParams, anchors)``, anchors None for data independent
        biases
    """
    cfg = strategy_config(name)
    data = DataSet(rng_mod.generator(seed, (0,)).uniform(0, 1, (n_data, dim)))
    W, b, anchors = init_layer(cfg, dim, width, data,
                               seed=rng_mod.generator(seed, (1,)),
                               return_anchors=True)
    w = WeightScheme('he-normal').sample(
        rng_mod.generator(seed, (2,)), width, 1)[0]
    return MLPParams([W], [b], w), anchors


class FunctionSample(object):
    """Grid values and edges of one random network"""
    def __init__(self, strategy, dim, rep, points, values, params, anchors):
        self.strategy = strategy
        self.dim = dim
        self.rep = rep
        self.points = points
        self.values = values
        self.params = params
        self.anchors = anchors

    def curve_rows(self):
        for x, y in zip(self.points, self.values):
            yield dict(strategy=self.strategy, dim=self.dim, rep=self.rep,
                       x1=float(x[0]),
                       x2=float(x[1]) if self.dim == 2 else None,
                       y=float(y))

    def edge_rows(self):
        W = self.params.weights[0]
        b = self.params.biases[0]
        distances = layer_edge_distances(W, b)
        for i in range(W.shape[0]):
            anchor = None if self.anchors is None else self.anchors[i]
            yield dict(
                strategy=self.strategy, rep=self.rep, neuron=i,
                a1=float(W[i, 0]), a2=float(W[i, 1]), b=float(b[i]),
                distance=float(distances[i]),
                xstar1=None if anchor is None else float(anchor[0]),
                xstar2=None if anchor is None else float(anchor[1]),
            )


def function_samples(cfg):
    """:rtype: list of FunctionSample in (strategy, dim, rep) order"""
    names = cfg.get_str_list('strategies')
    for name in names:
        strategy_config(name)
    grid_range = cfg.get_float_list('grid_range')
    if len(grid_range) != 2 or not grid_range[0] < grid_range[1]:
        raise ValueError('grid_range needs two increasing values lo,hi')
    widths = {1: cfg.get_int('width_1d'), 2: cfg.get_int('width_2d')}
    grids = {
        dim: grid_points(grid_range[0], grid_range[1],
                         cfg.get_int('grid_{0}d'.format(dim)), dim)
        for dim in (1, 2)
    }
    n_data = cfg.get_int('n_data')
    cells = [
        (name, dim, rep)
        for name in names for dim in (1, 2)
        for rep in range(cfg.get_int('reps'))
    ]

    def job(index, seed):
        name, dim, rep = cells[index]
        params, anchors = random_network(name, dim, widths[dim], n_data, seed)
        return FunctionSample(name, dim, rep, grids[dim],
                              predict(params, grids[dim]), params, anchors)

    return RepetitionQueue(job, len(cells), cfg.seed, name='functions').run()


def function_tables(cfg):
    """:rtype: tuple of the curve and the edge CsvTable"""
    curves = CsvTable('random-functions',
                      ['strategy', 'dim', 'rep', 'x1', 'x2', 'y'])
    edges = CsvTable('random-functions-edges', [
        'strategy', 'rep', 'neuron', 'a1', 'a2', 'b', 'distance', 'xstar1',
        'xstar2',
    ])
    for sample in function_samples(cfg):
        curves.extend(sample.curve_rows())
        if sample.dim == 2:
            edges.extend(sample.edge_rows())
    return curves, edges


@task
def random_functions(c, config=None, seed=None, out=None):
    """Evaluate randomly initialized 1-D and 2-D networks on a grid

    Writes the grid values to ``out`` and the 2-D edges next to it as
    ``<out>-edges.csv``.

    :param str config: INI file with a [random-functions] section
    :param int seed:   base seed of the networks
    :param str out:    output CSV path
    """
    with aborting_on(ValueError, RuntimeError, OSError):
        cfg = experiment('random-functions', config, FUNCTION_DEFAULTS, seed,
                         out)
        out = cfg.out
        curves, edges = function_tables(cfg)
        curves.write(out)
        edges.write(sibling_path(out, 'edges'))
    puts(green('wrote {0} rows to {1}'.format(len(curves), out)))
