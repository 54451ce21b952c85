#!/usr/bin/env python
"""norms.py - Concentration of He initialized weight norms

Columns of the ``norm-conc`` table, one row per dimension d, weights
``A ~ N(0, 2/d I_d)``:

    d                           dimension
    mean, mode                  E||A||_2 and the mode of ||A||_2
    gautschi_lo, gautschi_hi    bracket of the mean
    delta_exact                 smallest delta with
                                P(||A|| >= sqrt(2) + delta) <= level
    delta_gamma                 the same from the incomplete gamma bound,
                                empty for d < 3
    delta_lipschitz             the same from Lipschitz concentration
    delta_mc, se_mc             sampled quantile and its standard error

The ``-density`` sibling table holds ``d, x, pdf`` on a grid of norms.
"""
import math

import numpy as np
from invoke import task

from reluinit.lib import analytics, montecarlo
from reluinit.lib.csvout import CsvTable
from reluinit.lib.expconfig import experiment
from reluinit.lib.parallel import RepetitionQueue
from reluinit.lib.utils import aborting_on, green, puts, sibling_path

NORM_DEFAULTS = {
    'dims': '3,4,8,16,32,64,128,256,512,1024,2048,4096',
    'level': '0.01',
    'reps': '50000',
    'density_dims': '1,2,3,8,64',
    'density_points': '401',
    'density_max': '4',
}

NORM_COLUMNS = [
    'd', 'mean', 'mode', 'gautschi_lo', 'gautschi_hi', 'delta_exact',
    'delta_gamma', 'delta_lipschitz', 'delta_mc', 'se_mc',
]

#: smallest dimension the gamma bound is derived for
GAMMA_BOUND_MIN_D = 3


def mc_threshold(d, level, reps, seed):
    """Sampled delta threshold and its standard error

    The ``1 - level`` quantile q of sampled norms gives ``delta = q -
    sqrt(2)``; its standard error is ``sqrt(level (1 - level) / reps)``
    divided by the norm density at q.

    :rtype: tuple
    """
    sigma = math.sqrt(2.0 / d)
    samples = montecarlo.norm_samples(d, sigma, reps, seed)
    quantile = float(np.quantile(samples, 1.0 - level))
    density = analytics.weight_norm_density(quantile, d, sigma)
    se = montecarlo.binomial_se(level, reps) / density if density > 0 \
        else math.inf
    return quantile - math.sqrt(2.0), se


def norm_row(d, level, reps, seed):
    stats = analytics.weight_norm_stats(d, math.sqrt(2.0 / d))
    row = {
        'd': d,
        'mean': stats.mean,
        'mode': stats.mode,
        'gautschi_lo': stats.gautschi_lo,
        'gautschi_hi': stats.gautschi_hi,
        'delta_exact': analytics.norm_threshold_exact(d, level),
        'delta_gamma': None,
        'delta_lipschitz': analytics.norm_threshold_lipschitz(d, level),
        'delta_mc': None,
        'se_mc': None,
    }
    if d >= GAMMA_BOUND_MIN_D:
        row['delta_gamma'] = analytics.norm_threshold_gamma(d, level)
    if reps > 0:
        row['delta_mc'], row['se_mc'] = mc_threshold(d, level, reps, seed)
    return row


def norm_table(cfg):
    """Compute the norm-conc table

    :rtype: CsvTable
    """
    dims = cfg.get_int_list('dims')
    if not dims or min(dims) < 1:
        raise ValueError('dims must be positive integers')
    level = cfg.get_float('level')
    if not 0 < level < 1:
        raise ValueError('level must lie in (0, 1)')
    reps = cfg.get_int('reps')

    def job(index, seed):
        return norm_row(dims[index], level, reps, seed)

    table = CsvTable('norm-conc', NORM_COLUMNS)
    table.extend(RepetitionQueue(job, len(dims), cfg.seed, name='norms').run())
    return table


def density_table(cfg):
    """Densities of ||A||_2 under He scaling

    :rtype: CsvTable
    """
    dims = cfg.get_int_list('density_dims')
    grid = np.linspace(0.0, cfg.get_float('density_max'),
                       cfg.get_int('density_points'))
    table = CsvTable('norm-density', ['d', 'x', 'pdf'])
    for d in dims:
        pdf = analytics.weight_norm_density(grid, d, math.sqrt(2.0 / d))
        for x, value in zip(grid, pdf):
            table.add(d=d, x=float(x), pdf=float(value))
    return table


@task
def norm_conc(c, config=None, seed=None, out=None):
    """Norm statistics and delta thresholds of He weights over dimensions

    Writes the threshold table to ``out`` and the densities next to it as
    ``<out>-density.csv``.

    :param str config: INI file with a [norm-conc] section
    :param int seed:   base seed of the sampled thresholds
    :param str out:    output CSV path
    """
    with aborting_on(ValueError, RuntimeError, OSError):
        cfg = experiment('norm-conc', config, NORM_DEFAULTS, seed, out)
        out = cfg.out
        table = norm_table(cfg)
        densities = density_table(cfg)
        table.write(out)
        densities.write(sibling_path(out, 'density'))
    puts(green('wrote {0} rows to {1}'.format(len(table), out)))
