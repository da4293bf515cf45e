"""Python front end for the weighted-graph Schroedinger toolkit.

The experiment commands take a config dict (same schema as the CLI) and
return ``(exit_code, result)`` with the JSON result decoded.
"""

import json

from ._core import (
    Error,
    FormatError,
    Metric,
    ParameterError,
    PotentialError,
    PreconditionError,
    alpha_threshold,
    beta_threshold,
    characteristic_roots,
    growing_solution,
    h_constant,
    k_constant,
    select_parameters,
    solve_interval,
)
from . import _core


def _run(command, config):
    code, text = command(json.dumps(config))
    return code, json.loads(text)


def certify(config):
    return _run(_core.certify, config)


def verify(config):
    return _run(_core.verify, config)


def sharpness(config):
    return _run(_core.sharpness, config)


def decay(config):
    return _run(_core.decay, config)


def solve(config):
    return _run(_core.solve, config)


__all__ = [
    "Error",
    "FormatError",
    "Metric",
    "ParameterError",
    "PotentialError",
    "PreconditionError",
    "alpha_threshold",
    "beta_threshold",
    "certify",
    "characteristic_roots",
    "decay",
    "growing_solution",
    "h_constant",
    "k_constant",
    "select_parameters",
    "sharpness",
    "solve",
    "solve_interval",
    "verify",
]
