"""JSON interchange for distributions, subordinators, and NIG factor models.

Schemas (numbers are IEEE-754 doubles in decimal):

  distribution:  {"alpha": x, "atoms": [{"direction": [...], "beta": x, "lambda": x}]}
  subordinator:  {"base": <distribution>, "q": x}
  model:         {"marginals": [{"gamma": x, "beta": x, "delta": x}],
                  "a": x, "rho": [[...]], "q": x}

Parsing only checks shape and types; value constraints are the job of each
object's ``violations`` method so a well-formed but invalid file is reported as
a validation failure, not a parse error.
"""

from __future__ import annotations

import json

import numpy as np

from .factor import NigFactorModel, NigMarginal
from .sato import SatoSubordinator
from .tempered import Atom, ExpTemperedStable


class ParseError(ValueError):
    """Malformed input: bad JSON, wrong keys, or non-numeric fields."""


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _number_list(value, where: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a nonempty array of numbers")
    return [_number(v, where) for v in value]


def _mapping(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"{where}: expected an object")
    return value


def _get(d: dict, key: str, where: str):
    if key not in d:
        raise ParseError(f"{where}: missing key {key!r}")
    return d[key]


# -- distribution -----------------------------------------------------------

def distribution_from_dict(data) -> ExpTemperedStable:
    data = _mapping(data, "distribution")
    alpha = _number(_get(data, "alpha", "distribution"), "alpha")
    raw_atoms = _get(data, "atoms", "distribution")
    if not isinstance(raw_atoms, list) or not raw_atoms:
        raise ParseError("distribution: 'atoms' must be a nonempty array")
    atoms = []
    for k, raw in enumerate(raw_atoms):
        raw = _mapping(raw, f"atoms[{k}]")
        direction = _number_list(_get(raw, "direction", f"atoms[{k}]"), f"atoms[{k}].direction")
        beta = _number(_get(raw, "beta", f"atoms[{k}]"), f"atoms[{k}].beta")
        lam = _number(_get(raw, "lambda", f"atoms[{k}]"), f"atoms[{k}].lambda")
        atoms.append(Atom(np.array(direction), beta, lam))
    return ExpTemperedStable(alpha, tuple(atoms))


def distribution_to_dict(dist: ExpTemperedStable) -> dict:
    return {
        "alpha": dist.alpha,
        "atoms": [
            {"direction": list(map(float, a.direction)),
             "beta": a.tempering, "lambda": a.mass}
            for a in dist.atoms
        ],
    }


# -- subordinator -----------------------------------------------------------

def subordinator_from_dict(data) -> SatoSubordinator:
    data = _mapping(data, "subordinator")
    base = distribution_from_dict(_get(data, "base", "subordinator"))
    q = _number(_get(data, "q", "subordinator"), "q")
    return SatoSubordinator(base, q)


def subordinator_to_dict(law: SatoSubordinator) -> dict:
    return {"base": distribution_to_dict(law.base), "q": law.q}


# -- NIG factor model --------------------------------------------------------

def model_from_dict(data) -> NigFactorModel:
    data = _mapping(data, "model")
    raw_marginals = _get(data, "marginals", "model")
    if not isinstance(raw_marginals, list) or not raw_marginals:
        raise ParseError("model: 'marginals' must be a nonempty array")
    marginals = []
    for k, raw in enumerate(raw_marginals):
        raw = _mapping(raw, f"marginals[{k}]")
        marginals.append(NigMarginal(
            gamma=_number(_get(raw, "gamma", f"marginals[{k}]"), f"marginals[{k}].gamma"),
            beta=_number(_get(raw, "beta", f"marginals[{k}]"), f"marginals[{k}].beta"),
            delta=_number(_get(raw, "delta", f"marginals[{k}]"), f"marginals[{k}].delta"),
        ))
    a = _number(_get(data, "a", "model"), "a")
    raw_rho = _get(data, "rho", "model")
    if not isinstance(raw_rho, list) or not raw_rho:
        raise ParseError("model: 'rho' must be a nonempty matrix")
    rho = [ _number_list(row, f"rho[{i}]") for i, row in enumerate(raw_rho) ]
    widths = {len(row) for row in rho}
    if len(widths) != 1:
        raise ParseError("model: 'rho' rows must have equal length")
    q = _number(_get(data, "q", "model"), "q")
    return NigFactorModel(tuple(marginals), a, np.array(rho), q)


def model_to_dict(model: NigFactorModel) -> dict:
    return {
        "marginals": [
            {"gamma": m.gamma, "beta": m.beta, "delta": m.delta} for m in model.marginals
        ],
        "a": model.a,
        "rho": [list(map(float, row)) for row in model.rho],
        "q": model.q,
    }


# -- dispatch ----------------------------------------------------------------

def object_from_dict(data):
    """Detect the object kind from its keys and parse accordingly."""
    data = _mapping(data, "input")
    if "marginals" in data:
        return model_from_dict(data)
    if "base" in data:
        return subordinator_from_dict(data)
    if "atoms" in data:
        return distribution_from_dict(data)
    raise ParseError("input: unrecognized document (expected 'atoms', 'base', or 'marginals')")


def load_path(path: str):
    """Load any supported JSON document; ParseError on IO or format problems."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return object_from_dict(data)
