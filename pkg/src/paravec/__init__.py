"""Parametric simplex solver for multi-objective linear programs."""
from __future__ import annotations

from .engine import (EngineOptions, InitResult, Solution, init_perturbation, init_via_p0,
                     init_via_weight, run_algorithm1, solve, filter_generators)
from .errors import (ConeNotPointed, ConeNotSolid, InfeasibleProblem, NoSolution,
                     NumericalBreakdown, ParavecError)
from .model import Cone, HalfspaceLambda, ParamMap, Problem, validate_problem
from .tolerances import Tolerances

__all__ = [
    "Cone", "ConeNotPointed", "ConeNotSolid", "EngineOptions", "HalfspaceLambda",
    "InfeasibleProblem", "InitResult", "NoSolution", "NumericalBreakdown", "ParamMap",
    "ParavecError", "Problem", "Solution", "Tolerances", "filter_generators",
    "init_perturbation", "init_via_p0", "init_via_weight", "run_algorithm1", "solve",
    "validate_problem",
]

__version__ = "0.1.0"
