#!/usr/bin/env python
import logging
import os

from invoke import Program

from reluinit import __version__, config
from reluinit.tasks import namespace


def setup_logging(environ=None):
    environ = os.environ if environ is None else environ
    level = logging.DEBUG if environ.get(config.DEBUG_ENV) else logging.WARNING
    logging.basicConfig(
        level=level, format='%(asctime)s %(name)s %(levelname)s %(message)s')


def main(argv=None):
    setup_logging()
    program = Program(
        namespace=namespace, name='reluinit', binary='reluinit',
        version=__version__,
    )
    program.run(argv)
