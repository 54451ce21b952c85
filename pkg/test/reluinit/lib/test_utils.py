#!/usr/bin/env python
"""test_utils.py - Tests for reluinit.lib.utils
"""
import pytest
from invoke.exceptions import Exit

from reluinit.lib import utils
from reluinit.lib.mockups import environ_mockup


@pytest.mark.parametrize(('environ', 'expected'), [
    ({}, 3),
    ({'RELUINIT_THREADS': ''}, 3),
    ({'RELUINIT_THREADS': '7'}, 7),
    ({'RELUINIT_THREADS': ' 2 '}, 2),
])
def test_worker_count(environ, expected):
    assert utils.worker_count(default=3, environ=environ) == expected


@pytest.mark.parametrize('value', ['0', '-2', 'many'])
def test_worker_count_rejects(value):
    with pytest.raises(ValueError):
        utils.worker_count(environ={'RELUINIT_THREADS': value})


@pytest.mark.parametrize(('path', 'expected'), [
    ('out/train.csv', 'out/train-knots.csv'),
    ('train', 'train-knots.csv'),
])
def test_sibling_path(path, expected):
    assert utils.sibling_path(path, 'knots') == expected


def test_aborting_on(capsys):
    with pytest.raises(Exit) as err:
        with utils.aborting_on(ValueError):
            raise ValueError('rho must be positive')
    assert err.value.code == 1
    assert 'rho must be positive' in capsys.readouterr().err


def test_aborting_on_other_errors():
    with pytest.raises(KeyError):
        with utils.aborting_on(ValueError):
            raise KeyError('x')


def test_colors_plain_without_tty(monkeypatch):
    monkeypatch.setattr(utils, 'TTY', False)
    assert utils.green('ok', True) == 'ok'
    monkeypatch.setattr(utils, 'TTY', True)
    assert utils.red('no') == '\033[31mno\033[0m'
    assert utils.green('ok', True) == '\033[1m\033[32mok\033[0m'


def test_puts(capsys):
    utils.puts(12)
    assert capsys.readouterr().out == '12\n'


def test_worker_count_reads_process_environment():
    with environ_mockup({'RELUINIT_THREADS': '5'}):
        assert utils.worker_count() == 5
