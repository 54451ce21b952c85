#!/usr/bin/env python
"""test_train.py - Tests for reluinit.do.train
"""
import csv

import numpy as np
import pytest
from invoke import Context

from reluinit.do import train
from reluinit.lib.expconfig import ExperimentConfig

SMALL = {
    'widths': '8',
    'targets': 'linear',
    'inits': 'he-zero;knot-uniform',
    'seeds': '2',
    'epochs': '4',
    'snapshots': '2,4',
    'n': '32',
    'batch_size': '16',
    'bins': '5',
}


def train_config(**values):
    merged = dict(SMALL)
    merged.update(values)
    return ExperimentConfig('train-1d', merged, train.TRAIN_DEFAULTS)


@pytest.mark.parametrize(('name', 't', 'expected'), [
    ('linear', 0.5, 1.5),
    ('hat', 1.0 / 3.0, 1.0),
    ('sine', 0.25, 1.0),
])
def test_targets(name, t, expected):
    assert train.targets[name](t) == pytest.approx(expected)


def test_unknown_target():
    with pytest.raises(ValueError):
        train.targets['cubic']
    assert list(train.targets) == ['hat', 'linear', 'sine']


def test_training_data_shared_by_seed_index():
    first = train.training_data('sine', 20, 3, 1)
    second = train.training_data('sine', 20, 3, 1)
    other = train.training_data('sine', 20, 3, 2)
    assert np.array_equal(first.inputs, second.inputs)
    assert not np.array_equal(first.inputs, other.inputs)
    assert np.all(np.diff(first.inputs[:, 0]) >= 0)


def test_runs_record_snapshots():
    runs = train.train_runs(train_config())
    assert len(runs) == 2 * 2
    for run in runs:
        assert [row['epoch'] for row in run.loss_rows] == [0, 2, 4]
        assert len(run.knot_rows) == 3 * 2 * 5


def test_he_zero_knots_at_origin():
    runs = train.train_runs(train_config(inits='he-zero', seeds='1',
                                         snapshots='4'))
    initial = [row for row in runs[0].knot_rows if row['epoch'] == 0]
    at_origin = [row['count'] for row in initial
                 if row['bin_lo'] <= 0.0 < row['bin_hi']]
    assert len(at_origin) == 2
    assert sum(at_origin) == 8
    assert sum(row['count'] for row in initial) == 8


def test_he_zero_dead_neurons_at_init():
    runs = train.train_runs(train_config(inits='he-zero', seeds='1',
                                         widths='64'))
    row = runs[0].loss_rows[0]
    # with zero biases the neurons with a < 0 are dead on [0, 1]
    assert 10 < row['dead'] < 54


def test_knot_uniform_trains_better_on_sine():
    runs = train.train_runs(train_config(
        targets='sine', widths='256', seeds='2', epochs='60',
        snapshots='60', n='128', batch_size='32', learning_rate='0.01'))
    he = train.median_final_rmse(runs, 'he-zero', 60)
    knot = train.median_final_rmse(runs, 'knot-uniform', 60)
    assert knot < he


def test_median_needs_runs():
    with pytest.raises(ValueError):
        train.median_final_rmse([], 'he-zero', 4)


def test_rejects_bad_config():
    with pytest.raises(ValueError):
        train.train_runs(train_config(inits='xavier'))
    with pytest.raises(ValueError):
        train.train_runs(train_config(widths='0'))
    with pytest.raises(ValueError):
        train.train_runs(train_config(knot_range='1'))


def test_train_task_is_reproducible(tmp_path):
    config = tmp_path / 'exp.ini'
    config.write_text('[train-1d]\n' + ''.join(
        '{0} = {1}\n'.format(k, v) for k, v in sorted(SMALL.items())))
    out = tmp_path / 'train.csv'
    train.train_1d(Context(), config=str(config), seed='9', out=str(out))
    first = out.read_bytes()
    knots = (tmp_path / 'train-knots.csv').read_bytes()
    train.train_1d(Context(), config=str(config), seed='9', out=str(out))
    assert out.read_bytes() == first
    assert (tmp_path / 'train-knots.csv').read_bytes() == knots
    with open(str(out)) as fd:
        rows = list(csv.DictReader(fd))
    assert len(rows) == 2 * 2 * 3
    assert rows[0]['schema'] == 'train-1d/1'
