#!/usr/bin/env python
from . import (  # noqa
    functions,
    norms,
    states,
    train,
    validate,
)
