#!/usr/bin/env python
"""parallel.py - Fan out independent repetitions over worker threads

Every repetition gets a seed derived from the base seed and its index, so
the results do not depend on which worker runs it or in which order the
workers finish. Results are handed back in repetition order.
"""
from __future__ import print_function

import logging
import sys
import time
from concurrent import futures

from tqdm import tqdm

from reluinit.lib import rng as rng_mod
from reluinit.lib.utils import green, red, worker_count

LOGGER = logging.getLogger(__name__)


class RepetitionError(RuntimeError):
    """Raised when at least one repetition failed

    :param dict failures: repetition index to exception
    """
    def __init__(self, failures):
        self.failures = failures
        super(RepetitionError, self).__init__(
            '{0} repetition(s) failed: {1}'.format(
                len(failures), ', '.join(str(i) for i in sorted(failures))))


class RepetitionQueue(object):
    """Run ``func(index, seed)`` for ``count`` repetitions

    :param callable func: job, called with the repetition index and its
        derived seed
    :param int count: number of repetitions
    :param int seed: base seed
    :param int workers: worker cap, read from the environment by default
    :param str name: label of the progress bar
    :param bool show_progress: progress bar on stderr, on for terminals
    :param stream: where the closing summary goes, stderr by default
    """
    def __init__(self, func, count, seed, workers=None, name='repetitions',
                 show_progress=None, stream=None):
        self._func = func
        self._count = int(count)
        self._seed = int(seed)
        self._workers = workers or worker_count()
        self._name = name
        self._stream = stream or sys.stderr
        if show_progress is None:
            show_progress = self._stream.isatty()
        self._show_progress = show_progress
        self._errors = {}
        self._time_start = None

    @property
    def errors(self):
        return dict(self._errors)

    def seed_of(self, index):
        return rng_mod.derive_seed(self._seed, index)

    def _run_one(self, index):
        return self._func(index, self.seed_of(index))

    def run(self):
        """Run all repetitions

        :rtype: list
        :returns: results in repetition order
        :raises RepetitionError: when any repetition raised
        """
        self._time_start = time.time()
        self._errors = {}
        results = [None] * self._count
        progress = tqdm(
            total=self._count, desc=self._name, file=self._stream,
            disable=not self._show_progress, leave=False,
        )
        workers = max(1, min(self._workers, self._count or 1))
        with progress, futures.ThreadPoolExecutor(workers) as pool:
            pending = {
                pool.submit(self._run_one, index): index
                for index in range(self._count)
            }
            for done in futures.as_completed(pending):
                index = pending[done]
                try:
                    results[index] = done.result()
                except Exception as err:
                    LOGGER.debug('repetition %d failed', index, exc_info=True)
                    self._errors[index] = err
                progress.update(1)
                progress.set_postfix(errors=len(self._errors))
        self._status()
        if self._errors:
            raise RepetitionError(self._errors)
        return results

    def _status(self):
        if not self._show_progress and not self._errors:
            return
        print("[ %s OK / %s ERROR ] in %.2f seconds" % (
            green(self._count - len(self._errors), True),
            red(len(self._errors)),
            time.time() - self._time_start,
        ), file=self._stream)
        if self._errors:
            print(red("Failures:", True), file=self._stream)
            for index in sorted(self._errors):
                print(red('{0}: {1}'.format(index, self._errors[index])),
                      file=self._stream)
        self._stream.flush()


def run_repetitions(func, count, seed, workers=None, name='repetitions'):
    """Shortcut for ``RepetitionQueue(...).run()``"""
    return RepetitionQueue(func, count, seed, workers, name).run()
