"""Cross-validation of the closed form against both numerical propagators."""

import math
from dataclasses import dataclass
from typing import List, Sequence

from .analytic import analytic_probability
from .model import WalkParams, window_for
from .propagators import OdeSpec, RingSpec, propagate_ode, propagate_spectral

GRID_D = (0.0, 0.3, 0.5, 1.0)
GRID_ALPHA = (0.0, math.pi / 6, math.pi / 4, math.pi / 2)
GRID_T = (1.0, 10.0, 50.0)

SPECTRAL_TOL = 1e-10
ODE_TOL = 1e-8


@dataclass
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance


def oracle_triangle(
    times: Sequence[float] = GRID_T,
    d_values: Sequence[float] = GRID_D,
    alphas: Sequence[float] = GRID_ALPHA,
    gamma: float = 1.0,
) -> List[CheckResult]:
    """Compare site-wise probabilities from the three routes on a grid.

    Exact vs spectral must agree within 1e-10, exact vs RK4 within 1e-8.
    """
    results = []
    for t in times:
        base = WalkParams(gamma=gamma)
        window = window_for(base, t)
        ring = RingSpec.for_run(base, t)
        ode = OdeSpec.default_for(base)
        for d in d_values:
            for alpha in alphas:
                params = WalkParams(gamma=gamma, alpha=alpha, delocalization=d)
                p_exact = analytic_probability(params, window, t)
                p_spec = propagate_spectral(params, ring, t, window).probabilities()
                p_ode = propagate_ode(params, window, ode, t).probabilities()
                tag = f"D={d} alpha={alpha:.4f} gt={gamma * t:g}"
                results.append(
                    CheckResult(
                        f"exact-vs-spectral {tag}",
                        float(abs(p_exact - p_spec).max()),
                        SPECTRAL_TOL,
                    )
                )
                results.append(
                    CheckResult(
                        f"exact-vs-ode {tag}",
                        float(abs(p_exact - p_ode).max()),
                        ODE_TOL,
                    )
                )
    return results
