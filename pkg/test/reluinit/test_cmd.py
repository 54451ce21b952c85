#!/usr/bin/env python
"""test_cmd.py - Tests for the reluinit command line entry point
"""
import csv
import logging

import pytest
from mock import patch

from reluinit import cmd, config


@pytest.mark.parametrize(('environ', 'level'), [
    ({}, logging.WARNING),
    ({config.DEBUG_ENV: '1'}, logging.DEBUG),
])
def test_setup_logging(environ, level):
    with patch('logging.basicConfig') as basic_config:
        cmd.setup_logging(environ)
    assert basic_config.call_args[1]['level'] == level


def test_list_tasks(capsys):
    with pytest.raises(SystemExit) as err:
        cmd.main(['reluinit', '--list'])
    assert err.value.code == 0
    listed = capsys.readouterr().out
    for name in ('states-sweep', 'knot-density', 'norm-conc', 'train-1d',
                 'random-functions', 'validate'):
        assert name in listed


def test_run_task(tmp_path):
    ini = tmp_path / 'exp.ini'
    ini.write_text('[knot-density]\nstrategies = normal-normal\nrhos = 1\n'
                   'z_points = 7\n')
    out = tmp_path / 'density.csv'
    cmd.main(['reluinit', 'knot-density', '--config', str(ini),
              '--out', str(out)])
    with open(str(out)) as fd:
        rows = list(csv.DictReader(fd))
    assert len(rows) == 7
    assert {row['strategy'] for row in rows} == {'normal-normal'}


def test_task_error_exits(tmp_path, capsys):
    ini = tmp_path / 'exp.ini'
    ini.write_text('[knot-density]\ncolour = red\n')
    with pytest.raises(SystemExit) as err:
        cmd.main(['reluinit', 'knot-density', '--config', str(ini),
                  '--out', str(tmp_path / 'x.csv')])
    assert err.value.code == 1
    assert 'colour' in capsys.readouterr().err
