from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the solver.

    ``geom`` is the family of geometric membership tests (pivot positivity,
    reduced-cost optimality, halfspace membership). It is the value the CLI
    ``--tol`` flag and the ``PARAVEC_TOL`` environment variable override.
    """

    geom: float = 1e-9
    feas: float = 1e-7
    defining: float = 1e-7
    interior: float = 1e-7
    image: float = 1e-7

    @property
    def pivot(self) -> float:
        return self.geom

    @property
    def opt(self) -> float:
        return self.geom

    def with_geom(self, tol: float) -> "Tolerances":
        return replace(self, geom=float(tol))


DEFAULT_TOLERANCES = Tolerances()


def default_tolerances() -> Tolerances:
    env = os.environ.get("PARAVEC_TOL")
    if env:
        return DEFAULT_TOLERANCES.with_geom(float(env))
    return DEFAULT_TOLERANCES
