#!/usr/bin/env python
"""test_norms.py - Tests for reluinit.do.norms
"""
import csv
import math

import pytest
from invoke import Context
from scipy import stats

from reluinit.do import norms
from reluinit.lib.expconfig import ExperimentConfig


def norm_config(**values):
    return ExperimentConfig('norm-conc', values, norms.NORM_DEFAULTS)


def test_thresholds_ordered():
    table = norm_config(dims='3,8,64,512,4096', reps='0')
    rows = norms.norm_table(table).rows
    columns = norms.NORM_COLUMNS
    for values in rows:
        row = dict(zip(columns, values))
        assert row['delta_exact'] <= row['delta_gamma'] \
            <= row['delta_lipschitz']
        assert row['gautschi_lo'] <= row['mean'] <= row['gautschi_hi']
        assert row['delta_mc'] is None and row['se_mc'] is None


def test_small_dimensions_skip_gamma_bound():
    rows = norms.norm_table(norm_config(dims='1,2', reps='0')).rows
    gamma = norms.NORM_COLUMNS.index('delta_gamma')
    assert [row[gamma] for row in rows] == [None, None]


def test_sampled_threshold():
    for d in (3, 64):
        delta, se = norms.mc_threshold(d, 0.01, 50000, seed=d)
        row = norms.norm_row(d, 0.01, 0, seed=0)
        assert abs(delta - row['delta_exact']) <= 4 * se


def test_rejects_bad_level():
    with pytest.raises(ValueError):
        norms.norm_table(norm_config(level='1.5'))
    with pytest.raises(ValueError):
        norms.norm_table(norm_config(dims='0,3'))


def test_one_dimensional_density_is_half_normal():
    cfg = norm_config(density_dims='1', density_points='9',
                      density_max='4')
    rows = norms.density_table(cfg).rows
    assert len(rows) == 9
    for d, x, pdf in rows:
        assert d == 1
        assert pdf == pytest.approx(
            2 * stats.norm.pdf(x, scale=math.sqrt(2.0)), rel=1e-12)


def test_norm_conc_task(tmp_path):
    config = tmp_path / 'exp.ini'
    config.write_text(
        '[DEFAULT]\nseed = 5\n\n[norm-conc]\ndims = 3,16\nreps = 2000\n'
        'density_dims = 2\ndensity_points = 5\n')
    out = tmp_path / 'norms.csv'
    norms.norm_conc(Context(), config=str(config), out=str(out))
    with open(str(out)) as fd:
        rows = list(csv.DictReader(fd))
    assert [row['d'] for row in rows] == ['3', '16']
    assert all(row['schema'] == 'norm-conc/1' for row in rows)
    with open(str(tmp_path / 'norms-density.csv')) as fd:
        densities = list(csv.DictReader(fd))
    assert len(densities) == 5
    assert densities[0]['schema'] == 'norm-density/1'
