"""Criteria and operator-norm estimates for the Volterra-type operators
T_g f = int f g' and S_g f = int f' g between weighted sup-norm and
Bloch-type spaces on the unit disk."""

import json as _json

from ._core import (
    DomainError,
    Symbol,
    Weight,
    apply_sg,
    apply_tg,
    opnorm_lower,
)
from . import _core

__all__ = [
    "DomainError",
    "Symbol",
    "Weight",
    "apply_sg",
    "apply_tg",
    "boundedness_sup",
    "equivalence_matrix",
    "opnorm_lower",
    "run_case",
    "standard_sweep",
    "weight_report",
]


def _config(config):
    return "" if config is None else _json.dumps(config)


def weight_report(spec, radii=(0.5, 0.9), config=None):
    return _json.loads(_core.weight_report_json(spec, list(radii), _config(config)))


def boundedness_sup(kind, g, nu, mu, config=None):
    return _json.loads(_core.boundedness_sup_json(kind, g, nu, mu, _config(config)))


def run_case(case, config=None, with_norm=True):
    return _json.loads(_core.run_case_json(_json.dumps(case), _config(config), with_norm))


def equivalence_matrix(cases, config=None):
    return _json.loads(_core.equivalence_matrix_json(_json.dumps(list(cases)), _config(config)))


def standard_sweep():
    return _json.loads(_core.standard_sweep_json())
