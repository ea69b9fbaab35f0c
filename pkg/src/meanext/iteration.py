"""Coupled iteration engine.

Given an ``n``-variable mean ``K`` and an index system ``T`` with ``m``
tuples, the state ``a_k = (a^(1)_k, ..., a^(m)_k)`` evolves by::

    a^(i)_{k+1} = K(a^(j_{i,1})_k, ..., a^(j_{i,n})_k)

For admissible ``T`` every coordinate converges to a common limit, which
defines the extended mean ``K^(T)``.  The same engine runs compounding
(one mean per row) and shrinking (``T`` from :func:`shrink_system`).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Sequence

from .errors import (ArityMismatch, MalformedSystem, MeansNotOrdered, NonConvergence,
                     NotAdmissible)
from .index_system import IndexSystem, check_admissible, shrink_system
from .means import Family, MeanSpec, QuasiArithmetic, register_family

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10**6
TRACE_LIMIT = 64
ORDER_SAMPLES = 64


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS_EXCEEDED = "MaxIterationsExceeded"


@dataclass(frozen=True)
class IterationState:
    values: tuple[float, ...]
    step: int

    @property
    def spread(self) -> float:
        return max(self.values) - min(self.values)

    def to_json(self) -> dict:
        return {"step": self.step, "values": list(self.values)}


@dataclass(frozen=True)
class ConvergenceReport:
    limit: float
    iterations: int
    final_spread: float
    status: Status
    trace: tuple[IterationState, ...] | None = None
    sorted_inputs: bool = True
    warnings: tuple[str, ...] = ()

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def to_json(self) -> dict:
        out = {
            "limit": self.limit,
            "iterations": self.iterations,
            "final_spread": self.final_spread,
            "status": self.status.value,
            "sorted_inputs": self.sorted_inputs,
            "warnings": list(self.warnings),
        }
        if self.trace is not None:
            out["trace"] = [s.to_json() for s in self.trace]
        return out


@dataclass(frozen=True)
class OrderReport:
    holds: bool
    witness: dict | None = None
    max_excess: float = 0.0


# --------------------------------------------------------------------------
# step construction
# --------------------------------------------------------------------------

Step = Callable[[list], list]


def _clamp(x: float, args: list[float]) -> float:
    # a round trip through f and its inverse can leave the hull by an ulp
    lo, hi = min(args), max(args)
    return lo if x < lo else hi if x > hi else x


def _make_step(means: Sequence[MeanSpec], system: IndexSystem) -> Step:
    idx = system.zero_based()
    n = system.n
    families = [m.family for m in means]

    if all(isinstance(fam, QuasiArithmetic) for fam in families) and len(set(families)) == 1:
        # one generator for every row: apply f once per coordinate per step
        gen = families[0].gen
        f, inv = gen.f, gen.inverse

        def step(state):
            fv = [f(x) for x in state]
            out = []
            for t in idx:
                args = [state[j] for j in t]
                out.append(_clamp(inv(sum([fv[j] for j in t]) / n), args))
            return out

        return step

    evals = [fam.evaluate for fam in families]

    def step(state):
        out = []
        for K, t in zip(evals, idx):
            args = [state[j] for j in t]
            out.append(_clamp(K(args), args))
        return out

    return step


def _validate(means: Sequence[MeanSpec], system: IndexSystem, values: Sequence[float]) -> None:
    if len(means) != system.m:
        raise MalformedSystem(f"{len(means)} means for {system.m} tuples")
    for mean in means:
        if mean.arity != system.n:
            raise ArityMismatch(f"mean of arity {mean.arity} cannot consume tuples of length {system.n}")
    if len(values) != system.m:
        raise ArityMismatch(f"system has {system.m} sequences, got {len(values)} start values")
    for mean in means:
        mean.check_domain(values)


def _prepare(means: Sequence[MeanSpec], values: Sequence[float], sort_inputs: bool | None):
    symmetric = all(mean.symmetric for mean in means)
    if sort_inputs is None:
        sort_inputs = symmetric
    state = sorted(float(x) for x in values) if sort_inputs else [float(x) for x in values]
    warnings = () if symmetric or sort_inputs else ("non-symmetric mean: input order preserved",)
    return state, bool(sort_inputs), warnings


def _run(step: Step, state: list, tol: float, max_iter: int, trace: bool) -> tuple:
    states = [IterationState(tuple(state), 0)] if trace else None
    k = 0
    spread = max(state) - min(state)
    status = Status.CONVERGED
    while spread > tol:
        if k >= max_iter:
            status = Status.MAX_ITERATIONS_EXCEEDED
            break
        new = step(state)
        k += 1
        if new == state:
            # exact fixed point of the floating-point map; no further progress possible
            status = Status.MAX_ITERATIONS_EXCEEDED
            break
        state = new
        spread = max(state) - min(state)
        if trace and len(states) < TRACE_LIMIT:
            states.append(IterationState(tuple(state), k))
    limit = (max(state) + min(state)) / 2
    return limit, k, spread, status, states


def _report(run: tuple, sorted_inputs: bool, warnings: tuple, strict: bool) -> ConvergenceReport:
    limit, k, spread, status, states = run
    report = ConvergenceReport(limit, k, spread, status,
                               tuple(states) if states is not None else None,
                               sorted_inputs, warnings)
    if strict and not report.converged:
        raise NonConvergence(f"bracket still {spread:.3g} wide after {k} steps", report)
    return report


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------


def iterate(mean: MeanSpec, system: IndexSystem, values: Sequence[float], k: int,
            sort_inputs: bool | None = None) -> IterationState:
    """Exact ``k``-step image of the recursion.

    Admissibility is not required, so this also runs counterexample
    systems.  ``sort_inputs=None`` sorts only when the mean is symmetric.
    """
    means = [mean] * system.m
    _validate(means, system, values)
    state, _, _ = _prepare(means, values, sort_inputs)
    step = _make_step(means, system)
    for _ in range(k):
        state = step(state)
    return IterationState(tuple(state), k)


def _require_admissible(system: IndexSystem) -> None:
    verdict = check_admissible(system)
    if not verdict.admissible:
        raise NotAdmissible(f"system {system} fails properties {sorted(verdict.failed)}")


def extend(mean: MeanSpec, system: IndexSystem, values: Sequence[float],
           tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, *,
           trace: bool = False, strict: bool = False) -> ConvergenceReport:
    """Run the coupled sequences until ``max - min <= tol``.

    The reported limit is the midpoint of the final bracket.  With
    ``strict=True`` a run that does not converge raises
    :class:`NonConvergence` instead of returning its report.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    _require_admissible(system)
    means = [mean] * system.m
    _validate(means, system, values)
    state, sorted_inputs, warnings = _prepare(means, values, None)
    run = _run(_make_step(means, system), state, tol, max_iter, trace)
    return _report(run, sorted_inputs, warnings, strict)


def _is_identity_rows(system: IndexSystem) -> bool:
    row = tuple(range(1, system.n + 1))
    return system.n == system.m and all(t == row for t in system.tuples)


def check_ordered(means: Sequence[MeanSpec], samples: int = ORDER_SAMPLES, seed: int = 0) -> dict | None:
    """Look for a sampled tuple with ``K_i(v) > K_{i+1}(v)``; return it or None."""
    rng = random.Random(seed)
    domain = means[0].domain
    for mean in means[1:]:
        domain = domain.intersect(mean.domain)
    lo, hi = domain.sample_box()
    arity = means[0].arity
    for _ in range(samples):
        v = sorted(rng.uniform(lo, hi) for _ in range(arity))
        vals = [mean.family.evaluate(v) for mean in means]
        for i in range(len(vals) - 1):
            if vals[i] > vals[i + 1] + 1e-12 * max(1.0, abs(vals[i])):
                return {"values": v, "row": i + 1, "lower": vals[i], "upper": vals[i + 1]}
    return None


def compound(means: Sequence[MeanSpec], system: IndexSystem, values: Sequence[float],
             tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, *,
             seed: int = 0, trace: bool = False, strict: bool = False) -> ConvergenceReport:
    """Coupled iteration with mean ``means[i]`` driving row ``i``.

    The rows must satisfy ``K_1 <= ... <= K_m``; this is checked on 64
    seeded samples.  Besides admissible systems, ``n == m`` with identity
    rows is accepted, which gives classical compounding (Gauss AGM for
    geometric and arithmetic means).
    """
    means = list(means)
    if not _is_identity_rows(system):
        _require_admissible(system)
    _validate(means, system, values)
    witness = check_ordered(means, seed=seed)
    if witness is not None:
        raise MeansNotOrdered(f"K_{witness['row']} > K_{witness['row'] + 1} at {witness['values']}", witness)
    state, sorted_inputs, warnings = _prepare(means, values, None)
    run = _run(_make_step(means, system), state, tol, max_iter, trace)
    return _report(run, sorted_inputs, warnings, strict)


def shrink_general(mean: MeanSpec, n: int, values: Sequence[float],
                   tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, *,
                   trace: bool = False, strict: bool = False) -> ConvergenceReport:
    """Reduce an ``m``-variable mean to ``n`` variables via ``shrink_system(m, n)``."""
    return extend(mean, shrink_system(mean.arity, n), values, tol, max_iter,
                  trace=trace, strict=strict)


def compare_extended(mean_a: MeanSpec, mean_b: MeanSpec, system: IndexSystem,
                     samples: int = 100, seed: int = 0, tol: float = 1e-9) -> OrderReport:
    """Check ``A^(T)(v) <= B^(T)(v) + tol`` on seeded random sorted inputs."""
    rng = random.Random(seed)
    lo, hi = mean_a.domain.intersect(mean_b.domain).sample_box()
    worst = 0.0
    for _ in range(samples):
        v = sorted(rng.uniform(lo, hi) for _ in range(system.m))
        la = extend(mean_a, system, v).limit
        lb = extend(mean_b, system, v).limit
        worst = max(worst, la - lb)
        if la > lb + tol:
            return OrderReport(False, {"values": v, "a": la, "b": lb}, la - lb)
    return OrderReport(True, None, worst)


# --------------------------------------------------------------------------
# extended means as first-class means
# --------------------------------------------------------------------------


@register_family
@dataclass(frozen=True)
class Extended(Family):
    """The limit mean ``K^(T)`` of ``base`` under an admissible ``system``."""

    base: MeanSpec
    system: IndexSystem
    tol: float = DEFAULT_TOL
    key: ClassVar[str] = "extended"

    def __post_init__(self):
        if self.base.arity != self.system.n:
            raise ArityMismatch(f"system tuples have length {self.system.n}, base mean arity {self.base.arity}")
        _require_admissible(self.system)

    @property
    def is_symmetric(self):
        return self.base.symmetric

    @property
    def default_domain(self):
        return self.base.domain

    def check_arity(self, arity):
        if arity != self.system.m:
            raise ArityMismatch(f"extended mean has arity {self.system.m}, not {arity}")

    def evaluate(self, values):
        means = [self.base] * self.system.m
        state, sorted_inputs, warnings = _prepare(means, values, None)
        run = _run(_make_step(means, self.system), state, self.tol, DEFAULT_MAX_ITER, False)
        return _report(run, sorted_inputs, warnings, strict=True).limit

    def params_json(self):
        return {"base": self.base.to_json(), "system": self.system.to_json(), "tol": self.tol}

    @classmethod
    def params_from_json(cls, obj):
        return cls(MeanSpec.from_json(obj["base"]), IndexSystem.from_json(obj["system"]),
                   float(obj.get("tol", DEFAULT_TOL)))


def extended_mean(base: MeanSpec, system: IndexSystem, tol: float = DEFAULT_TOL) -> MeanSpec:
    """``K^(T)`` wrapped as an ``m``-variable :class:`MeanSpec`."""
    return MeanSpec(Extended(base, system, tol), system.m, base.domain)


def shrunk_mean(base: MeanSpec, n: int, tol: float = DEFAULT_TOL) -> MeanSpec:
    """``K^(T_{m,n})`` wrapped as an ``n``-variable :class:`MeanSpec`."""
    return extended_mean(base, shrink_system(base.arity, n), tol)
