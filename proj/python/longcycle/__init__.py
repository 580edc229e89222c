"""Long cycles in sparse random digraphs.

Config dicts use the same keys as a sweep file (n, c, seeds, mode, path_reach, gamma, ...).
"""

import json

from ._core import (
    Digraph,
    LongcycleError,
    degree_classes,
    filter_layers,
    generate_digraph,
    maximum_matching_size,
    validate_files,
)
from . import _core

__all__ = [
    "Digraph",
    "LongcycleError",
    "degree_classes",
    "filter_layers",
    "generate_digraph",
    "maximum_matching_size",
    "resolve_params",
    "run_experiment",
    "run_trial",
    "validate_files",
]


def _dump(config):
    return json.dumps(dict(config))


def resolve_params(config):
    return json.loads(_core._resolve_params(_dump(config)))


def run_trial(config, seed):
    return json.loads(_core._run_trial(_dump(config), int(seed)))


def run_experiment(config):
    return json.loads(_core._run_experiment(_dump(config)))
