#!/usr/bin/env python
"""states.py - Neuron state probabilities and knot densities over rho

Columns of the ``states-sweep`` table:

    strategy, rho        sweep strategy and its dispersion ratio
    p_fa, p_sa, p_ia     analytic state probabilities on [x_min, x_max]
    mc_fa, mc_sa, mc_ia  Monte Carlo frequencies (empty when mc_neurons = 0)
    se_fa, se_sa, se_ia  binomial standard errors of the frequencies

Columns of the ``knot-density`` table:

    strategy, rho, z     z is the negated knot b/a
    pdf, cdf             density and distribution function of b/a
"""
import numpy as np
from invoke import task

from reluinit.lib import analytics, montecarlo, ratiodist
from reluinit.lib.csvout import CsvTable
from reluinit.lib.expconfig import experiment
from reluinit.lib.initstrat import strategies, strategy_laws
from reluinit.lib.parallel import RepetitionQueue
from reluinit.lib.utils import aborting_on, puts, green

SWEEP_DEFAULTS = {
    'strategies': ';'.join(strategies),
    'rho_max': '15',
    'rho_points': '150',
    'x_min': '0',
    'x_max': '1',
    'mc_neurons': '100000',
}

DENSITY_DEFAULTS = {
    'strategies': 'dirac-normal;dirac-uniform;normal-normal;'
                  'uniform-asym;uniform-sym',
    'rhos': '1,2,5,14.1',
    'z_min': '-5',
    'z_max': '5',
    'z_points': '1001',
}

SWEEP_COLUMNS = [
    'strategy', 'rho', 'p_fa', 'p_sa', 'p_ia',
    'mc_fa', 'mc_sa', 'mc_ia', 'se_fa', 'se_sa', 'se_ia',
]


def rho_grid(rho_max, points):
    """``points`` equally spaced ratios in (0, rho_max]"""
    if points < 1 or not rho_max > 0:
        raise ValueError('the rho grid needs rho_max > 0 and points >= 1')
    return [rho_max * (k + 1) / points for k in range(points)]


def analytic_states(strategy, rho, x_min, x_max):
    """Analytic state probabilities of a sweep strategy

    :rtype: reluinit.lib.analytics.StateProbs
    """
    bias, weight = strategy_laws(strategy, rho)
    if isinstance(bias, ratiodist.Dirac) and bias.b == 0:
        return analytics.zero_bias_state_probabilities(weight, x_min, x_max)
    return analytics.state_probabilities(bias, weight, x_min, x_max)


def sweep_table(cfg):
    """Compute the states-sweep table

    :param reluinit.lib.expconfig.ExperimentConfig cfg: sweep section
    :rtype: CsvTable
    """
    names = cfg.get_str_list('strategies')
    for name in names:
        strategy_laws(name, 1.0)
    grid = rho_grid(cfg.get_float('rho_max'), cfg.get_int('rho_points'))
    x_min, x_max = cfg.get_float('x_min'), cfg.get_float('x_max')
    neurons = cfg.get_int('mc_neurons')
    cells = [(name, rho) for name in names for rho in grid]

    def job(index, seed):
        name, rho = cells[index]
        probs = analytic_states(name, rho, x_min, x_max)
        row = dict(zip(('p_fa', 'p_sa', 'p_ia'), probs.as_tuple()))
        row.update(strategy=name, rho=rho)
        if neurons > 0:
            bias, weight = strategy_laws(name, rho)
            freqs = montecarlo.state_frequencies(
                bias, weight, x_min, x_max, neurons, seed)
            for key, freq in zip(('fa', 'sa', 'ia'), freqs):
                row['mc_' + key] = freq
                row['se_' + key] = montecarlo.binomial_se(freq, neurons)
        else:
            for key in ('fa', 'sa', 'ia'):
                row['mc_' + key] = None
                row['se_' + key] = None
        return row

    table = CsvTable('states-sweep', SWEEP_COLUMNS)
    table.extend(
        RepetitionQueue(job, len(cells), cfg.seed, name='states').run())
    return table


def density_table(cfg):
    """Compute the knot-density table

    :rtype: CsvTable
    """
    names = cfg.get_str_list('strategies')
    rhos = cfg.get_float_list('rhos')
    z = np.linspace(cfg.get_float('z_min'), cfg.get_float('z_max'),
                    cfg.get_int('z_points'))
    table = CsvTable('knot-density', ['strategy', 'rho', 'z', 'pdf', 'cdf'])
    for name in names:
        for rho in rhos:
            bias, weight = strategy_laws(name, rho)
            if isinstance(bias, ratiodist.Dirac) and bias.b == 0:
                raise ValueError(
                    'strategy {0} puts every knot at 0 and has no knot '
                    'density'.format(name))
            pair = ratiodist.RatioPair(bias, weight)
            pdf = ratiodist.pdf_ratio(pair, z)
            cdf = ratiodist.cdf_ratio(pair, z)
            for zv, pv, cv in zip(z, pdf, cdf):
                table.add(strategy=name, rho=rho, z=float(zv), pdf=float(pv),
                          cdf=float(cv))
    return table


@task
def states_sweep(c, config=None, seed=None, out=None):
    """Sweep neuron state probabilities over rho for the six strategies

    :param str config: INI file with a [states-sweep] section
    :param int seed:   base seed of the Monte Carlo counts
    :param str out:    output CSV path
    """
    with aborting_on(ValueError, RuntimeError, OSError):
        cfg = experiment('states-sweep', config, SWEEP_DEFAULTS, seed, out)
        out = cfg.out
        table = sweep_table(cfg)
        table.write(out)
    puts(green('wrote {0} rows to {1}'.format(len(table), out)))


@task
def knot_density(c, config=None, seed=None, out=None):
    """Tabulate knot densities of the sweep strategies

    :param str config: INI file with a [knot-density] section
    :param int seed:   accepted for a uniform interface, unused
    :param str out:    output CSV path
    """
    with aborting_on(ValueError, RuntimeError, OSError):
        cfg = experiment('knot-density', config, DENSITY_DEFAULTS, seed, out)
        out = cfg.out
        table = density_table(cfg)
        table.write(out)
    puts(green('wrote {0} rows to {1}'.format(len(table), out)))
