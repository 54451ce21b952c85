#!/usr/bin/env python
"""
Some examples:

* See the list of available tasks.
    ~# reluinit --list
* Run a task with its defaults, writing the CSV to the given path:
    ~# reluinit states-sweep --out states.csv
* Read the task settings from the [norm-conc] section of an INI file:
    ~# reluinit norm-conc --config experiments.ini --seed 7
* Check the analytic results against their sampling oracles:
    ~# reluinit validate --config validate.ini
"""
from invoke import Collection

from reluinit.do import functions, norms, states, train, validate

namespace = Collection(
    states.states_sweep,
    states.knot_density,
    norms.norm_conc,
    train.train_1d,
    functions.random_functions,
    validate.validate,
)
