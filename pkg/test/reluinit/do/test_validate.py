#!/usr/bin/env python
"""test_validate.py - Tests for reluinit.do.validate
"""
import csv

import numpy as np
import pytest
from invoke import Context
from invoke.exceptions import Exit

from reluinit.do import validate
from reluinit.lib.expconfig import ExperimentConfig
from reluinit.lib.initstrat import InitConfig, init_network

#: suites whose checks are exact identities or inequalities
EXACT_SUITES = 'ratio-split;ratio-tail;gradients;homogeneity'

SMALL = {
    'split_instances': '200',
    'gradient_instances': '100',
    'homogeneity_instances': '200',
    'ratio_samples': '20000',
    'ratio_points': '6',
}


def validate_config(**values):
    merged = dict(SMALL)
    merged.update(values)
    return ExperimentConfig('validate', merged, validate.VALIDATE_DEFAULTS)


def write_config(path, **values):
    merged = dict(SMALL)
    merged.update(values)
    path.write_text('[validate]\n' + ''.join(
        '{0} = {1}\n'.format(k, v) for k, v in sorted(merged.items())))
    return str(path)


def test_suite_registry_order():
    assert list(validate.suites)[:3] == ['ratio-cdf', 'ratio-split',
                                         'ratio-tail']
    assert validate.suites.position('training') == len(validate.suites) - 1
    with pytest.raises(ValueError):
        validate.suites['nope']


def test_check_line():
    result = validate.at_most('states/x', 0.5, 3.0)
    assert result.passed
    assert result.line().endswith('states/x: statistic=0.5 threshold=3')
    assert 'FAIL' in validate.below('a', 1.0, 1.0).line()
    assert validate.above('a', 2.0, 1.0).passed


@pytest.mark.parametrize(('estimate', 'expected', 'se', 'score'), [
    (0.5, 0.5, 0.0, 0.0),
    (0.6, 0.5, 0.0, float('inf')),
    (0.6, 0.5, 0.05, 2.0),
])
def test_z_score(estimate, expected, se, score):
    assert validate.z_score(estimate, expected, se) == pytest.approx(score)


def test_exact_suites_pass():
    results = validate.run_suites(validate_config(suites=EXACT_SUITES))
    names = [r.name for r in results]
    assert names == [
        'ratio-split/sum', 'ratio-split/symmetric-half',
        'ratio-tail/bound-below-exact',
        'gradients/closed-form-vs-backprop', 'gradients/finite-difference',
        'homogeneity/scaling-ulps', 'homogeneity/zero-input',
    ]
    assert all(r.passed for r in results), [r.line() for r in results]


def test_geometry_suite_passes():
    results = validate.run_suites(validate_config(
        suites='geometry', geometry_instances='1000', orthant_dims='2,3,4'))
    assert [r.name for r in results] == [
        'geometry/classify-1d-agrees',
        'geometry/ico-witness-iff-fully-active',
        'geometry/ico-witness-on-edge',
        'geometry/dual-cone-reverses-inclusion',
        'geometry/orthant-conic-hull',
    ]
    assert all(r.passed for r in results), [r.line() for r in results]


def test_direction_checks_name_their_dimension():
    results = validate.run_suites(validate_config(
        suites='directions', direction_samples='20000'))
    names = [r.name for r in results]
    assert 'directions/uniform-window/d=2' in names
    assert names[-3:] == ['directions/uniform-sup-norm/d={0}'.format(d)
                          for d in (3, 4, 5)]


def test_suites_run_in_registry_order():
    results = validate.run_suites(validate_config(
        suites='homogeneity;ratio-tail'))
    assert results[0].name.startswith('ratio-tail/')


def test_report_is_deterministic():
    cfg = validate_config(suites='ratio-cdf;orthant', orthant_dims='2,3',
                          orthant_neurons='5000')
    first = validate.report_table(validate.run_suites(cfg)).render()
    second = validate.report_table(validate.run_suites(cfg)).render()
    assert first == second


def test_corrupted_threshold_fails():
    results = validate.run_suites(validate_config(suites='ratio-cdf',
                                                  ks_threshold='1e-6'))
    assert len(results) == 5
    assert not any(r.passed for r in results)
    assert results[0].name == 'ratio-cdf/normal-normal'


def test_affine_residual():
    t = np.linspace(0.0, 1.0, 50).reshape(-1, 1)
    params = init_network(InitConfig('he-normal', 'zero'), [1, 32], t,
                          seed=4)
    assert validate.affine_residual(params, t) < 1e-9
    params = init_network(InitConfig('he-normal', 'knot-uniform'), [1, 32],
                          t, seed=4)
    assert validate.affine_residual(params, t) > 1e-6


def test_validate_task_passes(tmp_path, capsys):
    config = write_config(tmp_path / 'validate.ini', suites=EXACT_SUITES)
    out = tmp_path / 'report.csv'
    validate.validate(Context(), config=config, out=str(out))
    printed = capsys.readouterr().out.splitlines()
    assert sum(1 for line in printed if 'PASS' in line) == 7
    assert 'all 7 checks passed' in printed[-1]
    with open(str(out)) as fd:
        rows = list(csv.DictReader(fd))
    assert [row['passed'] for row in rows] == ['true'] * 7
    assert rows[0]['schema'] == 'validate/1'


def test_validate_task_without_report(tmp_path):
    config = write_config(tmp_path / 'validate.ini', suites='ratio-tail')
    validate.validate(Context(), config=config)
    assert sorted(p.name for p in tmp_path.iterdir()) == ['validate.ini']


def test_validate_task_fails(tmp_path, capsys):
    config = write_config(tmp_path / 'validate.ini', suites='ratio-cdf',
                          ks_threshold='1e-6')
    with pytest.raises(Exit) as err:
        validate.validate(Context(), config=config)
    assert err.value.code == 1
    printed = capsys.readouterr().out
    assert '[FAIL] ratio-cdf/normal-normal: statistic=' in printed
    assert 'threshold=9.9999999999999995e-07' in printed


def test_validate_task_unknown_suite(tmp_path):
    config = write_config(tmp_path / 'validate.ini', suites='nope')
    with pytest.raises(Exit):
        validate.validate(Context(), config=config)
