#!/usr/bin/env python
"""rng.py - Seeded random streams

All randomness goes through :func:`generator`, which wraps numpy's Philox
counter based bit generator. A stream is identified by a base seed and a
tuple of stream indices, so repetition ``k`` of an experiment always sees
the same numbers no matter which worker runs it.
"""
import numpy as np


def _seed_sequence(seed, stream):
    if isinstance(stream, int):
        stream = (stream,)
    return np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(stream))


def generator(seed, stream=()):
    """Build a generator for the given seed and stream

    :param seed: non negative integer seed, or an existing
        :class:`numpy.random.Generator` which is returned unchanged
    :param stream: int or tuple of ints identifying a sub stream
    :rtype: numpy.random.Generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError('a seed is required for reproducible sampling')
    if int(seed) < 0:
        raise ValueError('seeds must be non negative, got {0}'.format(seed))
    return np.random.Generator(np.random.Philox(_seed_sequence(seed, stream)))


def derive_seed(seed, *stream):
    """Derive a plain integer seed for a sub stream

    :param int seed: base seed
    :param stream: stream indices
    :rtype: int
    """
    state = _seed_sequence(seed, stream).generate_state(2, dtype=np.uint32)
    return int(state[0]) << 32 | int(state[1])
