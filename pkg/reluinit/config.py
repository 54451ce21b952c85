#!/usr/bin/env python
# encoding: utf-8
"""
Some global configuration values

"""

#: seed used when neither the config file nor the command line sets one
DEFAULT_SEED = 20240101
#: value used in place of the undefined derivative of relu at 0
DEFAULT_PARTIAL0 = 0.0

#: absolute tolerance of the fallback ratio quadrature
QUAD_EPSABS = 1e-10
#: tail mass cut off when integrating over an unbounded denominator
QUAD_TAIL_MASS = 1e-12
#: subdivision limit handed to the adaptive quadrature
QUAD_LIMIT = 200

#: largest KS distance accepted between sampled and analytic ratio laws
KS_THRESHOLD = 0.005
#: number of binomial standard errors accepted for frequency checks
BINOMIAL_SIGMAS = 3.0

#: version tag written in the first column of every CSV row
CSV_SCHEMA_VERSION = 1
#: printf style format used to serialize floats
CSV_FLOAT_FORMAT = '%.17g'

#: environment variable capping the number of repetition workers
THREADS_ENV = 'RELUINIT_THREADS'
#: environment variable switching library logging to DEBUG
DEBUG_ENV = 'RELUINIT_DEBUG'

#: number of training samples of the 1-D toy experiments
TRAIN_SAMPLES = 256
#: Adam learning rate of the 1-D toy experiments
LEARNING_RATE = 1e-3
#: mini batch size
BATCH_SIZE = 128
#: epochs without held-out improvement before early stopping
PATIENCE = 5
#: Adam moment decay rates and denominator offset
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8

#: probability level of the weight norm concentration thresholds
NORM_LEVEL = 0.01
#: repetitions of the norm concentration Monte Carlo estimate
NORM_REPETITIONS = 50000
