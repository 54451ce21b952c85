#!/usr/bin/env python
# encoding: utf-8
"""utils.py - Console output helpers shared by the tasks
"""
from __future__ import print_function

import contextlib
import os
import sys

from invoke.exceptions import Exit
from termcolor import colored

from reluinit import config


TTY = sys.stdout.isatty()


def _color_func(name):
    def color(msg, bold=False):
        msg = str(msg)
        if not TTY:
            return msg
        return colored(msg, name, attrs=['bold'] if bold else None,
                       force_color=True)

    color.__name__ = name
    return color


red = _color_func('red')
green = _color_func('green')


def fastprint(msg, end='\n', stream=None):
    stream = stream or sys.stdout
    stream.write(msg + end)
    stream.flush()


def abort(msg, code=1):
    """
    Print the message as an error and stop the running task

    :param str msg: reason for aborting
    :param int code: exit code handed to the task runner
    :raises invoke.exceptions.Exit: always
    """
    fastprint(red('[ERROR] ', True) + red(msg), stream=sys.stderr)
    raise Exit(code=code)


def puts(msg, end='\n'):
    msg = str(msg)
    fastprint(msg, end=end)


def worker_count(default=None, environ=None):
    """
    Number of workers repetitions may fan out to

    Reads the cap from the environment variable named in
    :data:`reluinit.config.THREADS_ENV`, falls back to the CPU count.

    :param int default: value used when the variable is unset
    :param Mapping environ: environment to look into, os.environ by default
    :rtype: int
    """
    environ = os.environ if environ is None else environ
    fallback = default or os.cpu_count() or 1
    raw = environ.get(config.THREADS_ENV, '').strip()
    if not raw:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(
            '{0} must be a positive integer, got {1!r}'.format(
                config.THREADS_ENV, raw)
        )
    if value < 1:
        raise ValueError(
            '{0} must be a positive integer, got {1!r}'.format(
                config.THREADS_ENV, raw)
        )
    return value


@contextlib.contextmanager
def aborting_on(*errors):
    """Turn the given exceptions into a task abort with their message"""
    try:
        yield
    except errors as err:
        abort(str(err))


def sibling_path(path, suffix):
    """``results.csv`` -> ``results-<suffix>.csv``"""
    root, ext = os.path.splitext(path)
    return '{0}-{1}{2}'.format(root, suffix, ext or '.csv')
