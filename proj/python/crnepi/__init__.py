"""Reaction network structure, epidemic thresholds and stochastic tools."""

import json

from ._core import (
    CrnError,
    Network,
    cli,
    deficiency,
    escape_action,
    fixture_names,
    hamiltonian,
    is_weakly_reversible,
    load,
    ode_jacobian,
    ode_rhs,
    parse,
    propensity,
    r0,
    replacement_number,
    ssa,
    to_dot,
)
from . import _core


def analyze(network):
    return json.loads(_core.analysis_json(network))


def ngm(network):
    return json.loads(_core.ngm_json(network))


def translations(network, bound=1):
    return json.loads(_core.translations_json(network, bound))


def run(*args):
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return cli([str(a) for a in args])


__all__ = [
    "CrnError", "Network", "analyze", "cli", "deficiency", "escape_action", "fixture_names",
    "hamiltonian", "is_weakly_reversible", "load", "ngm", "ode_jacobian", "ode_rhs", "parse",
    "propensity", "r0", "replacement_number", "run", "ssa", "to_dot", "translations",
]
