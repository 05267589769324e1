"""Closed chains of contours with moving clusters.

Velocities are returned as :class:`fractions.Fraction`; states are lists of
leading-particle cells, one per contour.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    BudgetExceeded,
    ChainParams,
    ConstructionFailed,
    ContractViolation,
    InadmissibleState,
    InfeasibleDecomposition,
    is_admissible,
    mirror_state,
    step,
)

__all__ = [
    "BudgetExceeded",
    "ChainParams",
    "ConstructionFailed",
    "ContractViolation",
    "InadmissibleState",
    "InfeasibleDecomposition",
    "candidate_velocities",
    "construct_cycle_state",
    "find_cycle",
    "is_admissible",
    "mirror_state",
    "spectrum",
    "step",
    "verify",
]


def _fraction(pair):
    return Fraction(*pair)


def find_cycle(state, params, budget=None, method="auto"):
    """Follow ``state`` into its limit cycle; returns a dict."""
    out = _core.find_cycle(list(state), params, budget, method)
    out["velocity"] = _fraction(out["velocity"])
    return out


def candidate_velocities(params):
    return [_fraction(v) for v in _core.candidate_velocities(params)]


def spectrum(params, sample=None, seed=0, budget=1_000_000, workers=0):
    """Velocity spectrum document; velocity strings become Fractions."""
    doc = json.loads(_core.spectrum_json(params, sample, seed, budget, workers))
    for entry in doc["spectrum"]:
        entry["velocity"] = Fraction(entry["velocity"])
    doc["candidates"] = [Fraction(v) for v in doc["candidates"]]
    return doc


def construct_cycle_state(params, delays, type="first"):
    return _core.construct_cycle_state(params, list(delays), type)


def verify(grid="", budget=None, workers=0):
    """Claim-verification document for a grid such as ``"N=2..5,m=1..4"``."""
    return json.loads(_core.verify_json(grid, budget, workers))
