"""Symmetrization of a 2-variable mean by a min/max double sequence."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, NonConvergence
from .iteration import DEFAULT_MAX_ITER, DEFAULT_TOL
from .means import MeanSpec


@dataclass(frozen=True)
class SymTrace:
    pairs: tuple[tuple[float, float], ...]
    limit: float
    iterations: int

    def to_json(self):
        return {"limit": self.limit, "iterations": self.iterations,
                "pairs": [list(p) for p in self.pairs]}


def symmetrize(mean: MeanSpec, a: float, b: float, tol: float = DEFAULT_TOL,
               max_iter: int = DEFAULT_MAX_ITER) -> SymTrace:
    """Iterate ``a' = min(a o b, b o a)``, ``b' = max(a o b, b o a)``.

    Inputs are swapped into ``a <= b`` first, so the result does not depend
    on argument order.  ``pairs`` holds at most the first 64 brackets.

    Raises
    ------
    NonConvergence
        The bracket is still wider than ``tol`` after ``max_iter`` steps.
    """
    if mean.arity != 2:
        raise ArityMismatch("symmetrization needs a 2-variable mean")
    a, b = (float(a), float(b)) if a <= b else (float(b), float(a))
    mean.check_domain((a, b))
    op = mean.family.evaluate
    pairs = [(a, b)]
    k = 0
    while b - a > tol:
        if k >= max_iter:
            raise NonConvergence(f"bracket still {b - a:.3g} wide after {k} steps")
        u, v = op([a, b]), op([b, a])
        new = (min(u, v), max(u, v))
        if new == (a, b):
            raise NonConvergence(f"bracket stuck at width {b - a:.3g}")
        a, b = new
        k += 1
        if len(pairs) < 64:
            pairs.append((a, b))
    return SymTrace(tuple(pairs), (a + b) / 2, k)
