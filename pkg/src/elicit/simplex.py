"""Derivative-free simplex minimizer used by the fitting routines.

Standard Nelder-Mead with adaptive-free fixed coefficients, plus a restart
pass: after the first convergence the simplex is rebuilt around the best
point and the search is run again, which reliably polishes the shallow
valleys produced by squared-CDF objectives. Deterministic: no randomness,
results depend only on the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    fun: float
    iterations: int
    converged: bool


def _run(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    step: float,
    ftol: float,
    xtol: float,
    max_iter: int,
) -> SimplexResult:
    n = x0.size
    simplex = np.tile(x0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += step if x0[i] == 0.0 else step * max(1.0, abs(x0[i]))
    fvals = np.array([f(p) for p in simplex])

    iterations = 0
    converged = False
    while iterations < max_iter:
        order = np.argsort(fvals, kind="stable")
        simplex = simplex[order]
        fvals = fvals[order]
        if (fvals[-1] - fvals[0]) <= ftol and np.max(np.abs(simplex[1:] - simplex[0])) <= xtol:
            converged = True
            break
        iterations += 1

        centroid = simplex[:-1].mean(axis=0)
        reflected = centroid + (centroid - simplex[-1])
        f_r = f(reflected)
        if fvals[0] <= f_r < fvals[-2]:
            simplex[-1], fvals[-1] = reflected, f_r
        elif f_r < fvals[0]:
            expanded = centroid + 2.0 * (reflected - centroid)
            f_e = f(expanded)
            if f_e < f_r:
                simplex[-1], fvals[-1] = expanded, f_e
            else:
                simplex[-1], fvals[-1] = reflected, f_r
        else:
            contracted = centroid + 0.5 * (simplex[-1] - centroid)
            f_c = f(contracted)
            if f_c < fvals[-1]:
                simplex[-1], fvals[-1] = contracted, f_c
            else:
                simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
                fvals[1:] = [f(p) for p in simplex[1:]]

    best = int(np.argmin(fvals))
    return SimplexResult(simplex[best].copy(), float(fvals[best]), iterations, converged)


def nelder_mead(
    f: Callable[[np.ndarray], float],
    x0: Sequence[float],
    *,
    step: float = 0.25,
    ftol: float = 1e-12,
    xtol: float = 1e-10,
    max_iter: int = 500,
    restarts: int = 1,
) -> SimplexResult:
    """Minimize f from x0; returns the best point even when not converged."""
    x = np.asarray(x0, dtype=float)
    result = _run(f, x, step, ftol, xtol, max_iter)
    total_iter = result.iterations
    for _ in range(restarts):
        again = _run(f, result.x, step * 0.1, ftol, xtol, max_iter)
        total_iter += again.iterations
        if again.fun <= result.fun:
            result = SimplexResult(again.x, again.fun, total_iter, again.converged)
        else:
            result = SimplexResult(result.x, result.fun, total_iter, result.converged)
    return result
