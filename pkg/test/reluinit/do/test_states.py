#!/usr/bin/env python
"""test_states.py - Tests for reluinit.do.states
"""
import csv

import numpy as np
import pytest
from invoke import Context
from invoke.exceptions import Exit
from scipy import integrate, stats

from reluinit.do import states
from reluinit.lib.expconfig import ExperimentConfig


def sweep_config(**values):
    values.setdefault('mc_neurons', '0')
    return ExperimentConfig('states-sweep', values, states.SWEEP_DEFAULTS)


def read_rows(path):
    with open(str(path)) as fd:
        return list(csv.DictReader(fd))


def test_rho_grid():
    assert states.rho_grid(15.0, 3) == [5.0, 10.0, 15.0]
    with pytest.raises(ValueError):
        states.rho_grid(0.0, 3)
    with pytest.raises(ValueError):
        states.rho_grid(1.0, 0)


def test_dirac_normal_at_large_rho():
    probs = states.analytic_states('dirac-normal', 14.1, 0.0, 1.0)
    assert probs.p_fully_active == pytest.approx(stats.norm.cdf(-1 / 14.1),
                                                 abs=1e-12)
    assert probs.p_fully_active == pytest.approx(0.4717, abs=1e-4)


def test_he_zero_row():
    table = states.sweep_table(sweep_config(strategies='he-zero',
                                            rho_points='3'))
    assert len(table) == 3
    for row in table.rows:
        strategy, rho, p_fa, p_sa, p_ia = row[:5]
        assert strategy == 'he-zero'
        assert (p_fa, p_sa, p_ia) == pytest.approx((0.0, 0.5, 0.5))
        assert row[5:] == [None] * 6


def test_sweep_rows_sum_to_one():
    table = states.sweep_table(sweep_config(rho_points='5'))
    assert len(table) == 6 * 5
    for row in table.rows:
        assert sum(row[2:5]) == pytest.approx(1.0, abs=1e-10)


def test_sweep_monte_carlo_columns():
    table = states.sweep_table(sweep_config(
        strategies='normal-normal;uniform-asym', rho_points='2',
        mc_neurons='20000'))
    for row in table.rows:
        probs = row[2:5]
        freqs = row[5:8]
        ses = row[8:11]
        assert sum(freqs) == pytest.approx(1.0)
        for p, f, se in zip(probs, freqs, ses):
            assert abs(p - f) <= 5 * max(se, 1.0 / 20000)


def test_sweep_rejects_unknown_strategy():
    with pytest.raises(ValueError):
        states.sweep_table(sweep_config(strategies='he-zero;cauchy'))


def test_density_integrates_to_one():
    cfg = ExperimentConfig('knot-density', {
        'strategies': 'dirac-normal;normal-normal;uniform-sym',
        'rhos': '1,14.1', 'z_min': '-60', 'z_max': '60', 'z_points': '24001',
    }, states.DENSITY_DEFAULTS)
    table = states.density_table(cfg)
    rows = table.rows
    by_curve = {}
    for strategy, rho, z, pdf, cdf in rows:
        by_curve.setdefault((strategy, rho), []).append((z, pdf, cdf))
    assert len(by_curve) == 6
    for (strategy, rho), curve in by_curve.items():
        z, pdf, cdf = (np.array(v) for v in zip(*curve))
        mass = integrate.trapezoid(pdf, z)
        tails = cdf[0] + 1 - cdf[-1]
        assert mass + tails == pytest.approx(1.0, abs=1e-3), strategy
        assert np.all(np.diff(cdf) >= -1e-12)


def test_dirac_density_vanishes_at_zero():
    cfg = ExperimentConfig('knot-density', {
        'strategies': 'dirac-normal', 'rhos': '2', 'z_min': '-1',
        'z_max': '1', 'z_points': '5',
    }, states.DENSITY_DEFAULTS)
    rows = states.density_table(cfg).rows
    assert [row[3] for row in rows if row[2] == 0.0] == [0.0]


def test_density_rejects_zero_bias():
    cfg = ExperimentConfig('knot-density', {'strategies': 'he-zero'},
                           states.DENSITY_DEFAULTS)
    with pytest.raises(ValueError):
        states.density_table(cfg)


def test_states_sweep_task(tmp_path):
    config = tmp_path / 'exp.ini'
    config.write_text(
        '[states-sweep]\nstrategies = dirac-normal\nrho_points = 4\n'
        'mc_neurons = 1000\n')
    out = tmp_path / 'states.csv'
    states.states_sweep(Context(), config=str(config), seed='3',
                        out=str(out))
    rows = read_rows(out)
    assert len(rows) == 4
    assert rows[0]['schema'] == 'states-sweep/1'
    assert float(rows[-1]['rho']) == 15.0
    first = out.read_bytes()
    states.states_sweep(Context(), config=str(config), seed='3',
                        out=str(out))
    assert out.read_bytes() == first


def test_states_sweep_task_needs_out(tmp_path, capsys):
    with pytest.raises(Exit):
        states.states_sweep(Context())
    assert 'out' in capsys.readouterr().err


def test_knot_density_task(tmp_path):
    config = tmp_path / 'exp.ini'
    config.write_text(
        '[knot-density]\nstrategies = uniform-asym\nrhos = 2\n'
        'z_points = 11\n')
    out = tmp_path / 'density.csv'
    states.knot_density(Context(), config=str(config), out=str(out))
    rows = read_rows(out)
    assert len(rows) == 11
    assert rows[0]['schema'] == 'knot-density/1'
