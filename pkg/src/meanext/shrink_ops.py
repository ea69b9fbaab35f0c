"""Direct shrinking operators.

``s1``
    leftmost fixed point of ``x -> K(a, x, ..., x, b)`` on ``(a, b)``;
``s2``
    ``K(a, ..., a, b, ..., b)`` with half of the slots on each endpoint;
``s3``
    ``K(v_1, ..., v_n, v_1, ..., v_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ArityMismatch, DomainViolation, NoSignChange, OddArity
from .means import MeanSpec, eval_mean

DEFAULT_GRID = 1024


@dataclass(frozen=True)
class FixedPointResult:
    x: float
    residual: float
    bracket: tuple[float, float]


def _fixed_point_gap(mean: MeanSpec, a: float, b: float):
    K = mean.family.evaluate
    copies = mean.arity - 2
    return lambda x: K([a] + [x] * copies + [b]) - x


def shrink_s1(mean: MeanSpec, a: float, b: float, tol: float = 1e-12,
              grid: int = DEFAULT_GRID) -> FixedPointResult:
    """Smallest ``x`` in ``(a, b)`` with ``K(a, x, ..., x, b) = x``.

    ``g(x) = K(a, x, ..., x, b) - x`` is scanned on ``grid`` uniform
    subintervals from the left; the first sign change is bisected until
    the bracket is at most ``tol`` wide and ``|g(x)| <= tol * max(1, |x|)``.
    ``a`` occupies the first slot and ``b`` the last, which matters only for
    non-symmetric means.
    """
    if mean.arity < 3:
        raise ArityMismatch("s1 needs a mean of arity >= 3")
    if not a < b:
        raise DomainViolation(f"s1 needs a < b, got ({a}, {b})")
    mean.check_domain((a, b))
    g = _fixed_point_gap(mean, a, b)

    width = (b - a) / grid
    lo, g_lo = a, g(a)
    hi = None
    for i in range(1, grid + 1):
        x = b if i == grid else a + i * width
        gx = g(x)
        if gx == 0.0 and i < grid:
            return FixedPointResult(x, 0.0, (x, x))
        if g_lo > 0 > gx or (g_lo > 0 == gx and i < grid):
            hi = x
            break
        lo, g_lo = x, gx
    if hi is None:
        raise NoSignChange(f"K(a, x, ..., x, b) - x has no sign change on ({a}, {b})")

    while True:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        g_mid = g(mid)
        if g_mid > 0:
            lo = mid
        else:
            hi = mid
        x = (lo + hi) / 2
        if hi - lo <= tol and abs(g(x)) <= tol * max(1.0, abs(x)):
            break
    x = (lo + hi) / 2
    return FixedPointResult(x, abs(g(x)), (lo, hi))


def shrink_s2(mean: MeanSpec, a: float, b: float) -> float:
    """``K(a, ..., a, b, ..., b)`` with ``arity / 2`` copies of each."""
    if mean.arity % 2:
        raise OddArity(f"s2 needs an even arity, got {mean.arity}")
    if a > b:
        raise DomainViolation(f"s2 needs a <= b, got ({a}, {b})")
    half = mean.arity // 2
    return eval_mean(mean, [a] * half + [b] * half)


def shrink_s3(mean: MeanSpec, values: Sequence[float]) -> float:
    """``K(values + values)`` for a mean of arity ``2 * len(values)``."""
    if mean.arity % 2:
        raise OddArity(f"s3 needs an even arity, got {mean.arity}")
    if 2 * len(values) != mean.arity:
        raise ArityMismatch(f"s3 on an arity-{mean.arity} mean takes {mean.arity // 2} values")
    return eval_mean(mean, list(values) * 2)
