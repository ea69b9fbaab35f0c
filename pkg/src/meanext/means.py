"""Catalog of means, generators and sampled axiom checks.

A mean is described declaratively by a :class:`MeanSpec`: a *family*
(which formula), an *arity* and a *domain*.  Families are small frozen
dataclasses exposing ``evaluate(values)``; :func:`eval_mean` is the
validating front door and the family method is the unchecked hot path
used by the iteration engine.

Generators (``Power``, ``Log``, ``Exp``, ``Composed``) are strictly
monotone continuous functions with an exact inverse.  They drive the
quasi-arithmetic family and conjugation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar, Sequence

import numpy as np

from .errors import ArityMismatch, DomainViolation, MeanError

INF = math.inf


# --------------------------------------------------------------------------
# domains
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)``; infinite bounds allowed."""

    lo: float = -INF
    hi: float = INF

    def __contains__(self, x: float) -> bool:
        return self.lo < x < self.hi

    @property
    def empty(self) -> bool:
        return not self.lo < self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def sample_box(self) -> tuple[float, float]:
        """Finite sub-range used for random sampling."""
        lo, hi = self.lo, self.hi
        if math.isinf(lo) and math.isinf(hi):
            return -5.0, 5.0
        if math.isinf(hi):
            return lo + 0.1, lo + 10.0
        if math.isinf(lo):
            return hi - 10.0, hi - 0.1
        pad = (hi - lo) * 0.01
        return lo + pad, hi - pad

    def to_json(self) -> Any:
        for name, dom in _NAMED_DOMAINS.items():
            if dom == self:
                return name
        return [None if math.isinf(self.lo) else self.lo,
                None if math.isinf(self.hi) else self.hi]

    @classmethod
    def from_json(cls, obj: Any) -> "Interval":
        if isinstance(obj, str):
            try:
                return _NAMED_DOMAINS[obj]
            except KeyError:
                raise MeanError(f"unknown domain name {obj!r}") from None
        lo, hi = obj
        return cls(-INF if lo is None else float(lo), INF if hi is None else float(hi))


REAL = Interval()
POSITIVE = Interval(0.0, INF)
_NAMED_DOMAINS = {"real": REAL, "positive": POSITIVE}


def _edge(fn: Callable[[np.float64], np.float64], x: float) -> float:
    # boundary values such as 0**-1 or log(0) go through numpy for inf handling
    with np.errstate(all="ignore"):
        return float(fn(np.float64(x)))


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------


class Generator:
    """Strictly monotone continuous map with an exact inverse."""

    domain: Interval
    increasing: bool

    def f(self, x: float) -> float:
        raise NotImplementedError

    def inverse(self, y: float) -> float:
        raise NotImplementedError

    def _f_edge(self, x: float) -> float:
        raise NotImplementedError

    def _inv_edge(self, y: float) -> float:
        raise NotImplementedError

    def image(self, interval: Interval | None = None) -> Interval:
        iv = self.domain if interval is None else interval.intersect(self.domain)
        a, b = self._f_edge(iv.lo), self._f_edge(iv.hi)
        return Interval(a, b) if self.increasing else Interval(b, a)

    def preimage(self, interval: Interval) -> Interval:
        iv = interval.intersect(self.image())
        a, b = self._inv_edge(iv.lo), self._inv_edge(iv.hi)
        return Interval(a, b) if self.increasing else Interval(b, a)


@dataclass(frozen=True)
class Log(Generator):
    increasing: ClassVar[bool] = True
    domain: ClassVar[Interval] = POSITIVE

    def f(self, x):
        return math.log(x)

    def inverse(self, y):
        return math.exp(y)

    def _f_edge(self, x):
        return _edge(np.log, x)

    def _inv_edge(self, y):
        return _edge(np.exp, y)

    def to_json(self):
        return {"kind": "log"}


@dataclass(frozen=True)
class Power(Generator):
    """``x -> x**p``.  ``Power(0)`` returns a :class:`Log` instance."""

    p: float = 1.0

    def __new__(cls, p: float = 1.0):
        if p == 0:
            return Log()
        return super().__new__(cls)

    @property
    def increasing(self):
        return self.p > 0

    @property
    def domain(self):
        return REAL if self.p == 1 else POSITIVE

    def f(self, x):
        return x if self.p == 1 else x ** self.p

    def inverse(self, y):
        if self.p == 1:
            return y
        if self.p == 2:
            return math.sqrt(y)
        return y ** (1.0 / self.p)

    def _f_edge(self, x):
        return _edge(lambda v: np.power(v, self.p), x)

    def _inv_edge(self, y):
        return _edge(lambda v: np.power(v, 1.0 / self.p), y)

    def to_json(self):
        return {"kind": "power", "p": float(self.p)}


@dataclass(frozen=True)
class Exp(Generator):
    """``x -> exp(t*x)`` with ``t != 0``."""

    t: float = 1.0
    domain: ClassVar[Interval] = REAL

    def __post_init__(self):
        if self.t == 0:
            raise MeanError("Exp generator needs t != 0")

    @property
    def increasing(self):
        return self.t > 0

    def f(self, x):
        return math.exp(self.t * x)

    def inverse(self, y):
        return math.log(y) / self.t

    def _f_edge(self, x):
        return _edge(lambda v: np.exp(self.t * v), x)

    def _inv_edge(self, y):
        return _edge(lambda v: np.log(v) / self.t, y)

    def to_json(self):
        return {"kind": "exp", "t": float(self.t)}


@dataclass(frozen=True)
class Composed(Generator):
    """``x -> outer(inner(x))``."""

    outer: Generator
    inner: Generator

    @property
    def increasing(self):
        return self.outer.increasing == self.inner.increasing

    @property
    def domain(self):
        return self.inner.preimage(self.outer.domain)

    def f(self, x):
        return self.outer.f(self.inner.f(x))

    def inverse(self, y):
        return self.inner.inverse(self.outer.inverse(y))

    def _f_edge(self, x):
        return self.outer._f_edge(self.inner._f_edge(x))

    def _inv_edge(self, y):
        return self.inner._inv_edge(self.outer._inv_edge(y))

    def to_json(self):
        return {"kind": "composed", "outer": self.outer.to_json(),
                "inner": self.inner.to_json()}


def generator_from_json(obj: dict) -> Generator:
    kind = obj.get("kind")
    if kind == "power":
        return Power(float(obj.get("p", 1.0)))
    if kind == "log":
        return Log()
    if kind == "exp":
        return Exp(float(obj.get("t", 1.0)))
    if kind == "composed":
        return Composed(generator_from_json(obj["outer"]), generator_from_json(obj["inner"]))
    raise MeanError(f"unknown generator kind {kind!r}")


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------

_FAMILIES: dict[str, type] = {}


def register_family(cls):
    """Class decorator adding a family to the serialization registry."""
    _FAMILIES[cls.key] = cls
    return cls


class Family:
    key: ClassVar[str]
    symmetric: ClassVar[bool] = True
    arities: ClassVar[tuple[int, ...] | None] = None  # None: any arity >= 2

    @property
    def is_symmetric(self) -> bool:
        return self.symmetric

    @property
    def default_domain(self) -> Interval:
        return POSITIVE

    def fixed_arity(self) -> int | None:
        return self.arities[0] if self.arities and len(self.arities) == 1 else None

    def check_arity(self, arity: int) -> None:
        if self.arities is not None and arity not in self.arities:
            raise ArityMismatch(f"{self.key} mean needs arity in {self.arities}, got {arity}")

    def evaluate(self, values: Sequence[float]) -> float:
        raise NotImplementedError

    def params_json(self) -> dict:
        return {}

    @classmethod
    def params_from_json(cls, obj: dict) -> "Family":
        return cls()


@register_family
@dataclass(frozen=True)
class QuasiArithmetic(Family):
    gen: Generator = field(default_factory=Power)
    key: ClassVar[str] = "qa"

    @property
    def default_domain(self):
        return self.gen.domain

    def evaluate(self, values):
        f = self.gen.f
        return self.gen.inverse(sum(f(x) for x in values) / len(values))

    def params_json(self):
        return {"generator": self.gen.to_json()}

    @classmethod
    def params_from_json(cls, obj):
        return cls(generator_from_json(obj.get("generator", {"kind": "power", "p": 1.0})))


@register_family
@dataclass(frozen=True)
class MidRange(Family):
    key: ClassVar[str] = "midrange"

    @property
    def default_domain(self):
        return REAL

    def evaluate(self, values):
        return (min(values) + max(values)) / 2


@register_family
@dataclass(frozen=True)
class SqrtPairAvg(Family):
    """sqrt of the average pairwise product."""

    key: ClassVar[str] = "sqrtpair"
    arities: ClassVar = (3, 4)

    def evaluate(self, values):
        pairs = list(itertools.combinations(values, 2))
        return math.sqrt(sum(x * y for x, y in pairs) / len(pairs))


@register_family
@dataclass(frozen=True)
class PairwiseSqrtAvg(Family):
    """Average of pairwise geometric means."""

    key: ClassVar[str] = "pairwisesqrt"
    arities: ClassVar = (3, 4)

    def evaluate(self, values):
        pairs = list(itertools.combinations(values, 2))
        return sum(math.sqrt(x * y) for x, y in pairs) / len(pairs)


@register_family
@dataclass(frozen=True)
class NonSymQuad4(Family):
    """``sqrt((ab + ac + bd + cd) / 4)`` on ordered ``(a, b, c, d)``."""

    key: ClassVar[str] = "nonsymquad4"
    symmetric: ClassVar[bool] = False
    arities: ClassVar = (4,)

    def evaluate(self, values):
        a, b, c, d = values
        return math.sqrt((a * b + a * c + b * d + c * d) / 4)


@register_family
@dataclass(frozen=True)
class WeightedTwo(Family):
    """``a o b = w*a + (1-w)*b``."""

    w: float = 0.5
    key: ClassVar[str] = "weighted2"
    arities: ClassVar = (2,)

    def __post_init__(self):
        if not 0 < self.w < 1:
            raise MeanError(f"weight must lie in (0, 1), got {self.w}")

    @property
    def is_symmetric(self):
        return self.w == 0.5

    @property
    def default_domain(self):
        return REAL

    def evaluate(self, values):
        a, b = values
        return self.w * a + (1 - self.w) * b

    def params_json(self):
        return {"w": float(self.w)}

    @classmethod
    def params_from_json(cls, obj):
        return cls(float(obj["w"]))


@register_family
@dataclass(frozen=True)
class Heronian2(Family):
    key: ClassVar[str] = "heronian2"
    arities: ClassVar = (2,)

    def evaluate(self, values):
        a, b = values
        return (a + math.sqrt(a * b) + b) / 3


@register_family
@dataclass(frozen=True)
class Conjugated(Family):
    """``f^-1(K(f(a_1), ..., f(a_n)))`` for a non-quasi-arithmetic base."""

    base: "MeanSpec"
    gen: Generator
    key: ClassVar[str] = "conjugate"

    @property
    def is_symmetric(self):
        return self.base.symmetric

    @property
    def default_domain(self):
        return self.gen.preimage(self.base.domain)

    def check_arity(self, arity):
        if arity != self.base.arity:
            raise ArityMismatch(f"conjugate of an arity-{self.base.arity} mean cannot have arity {arity}")

    def evaluate(self, values):
        f = self.gen.f
        return self.gen.inverse(self.base.family.evaluate([f(x) for x in values]))

    def params_json(self):
        return {"base": self.base.to_json(), "generator": self.gen.to_json()}

    @classmethod
    def params_from_json(cls, obj):
        return cls(MeanSpec.from_json(obj["base"]), generator_from_json(obj["generator"]))


# --------------------------------------------------------------------------
# MeanSpec
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MeanSpec:
    """A family, an arity and a domain.  Calling it evaluates the mean."""

    family: Family
    arity: int
    domain: Interval = None  # type: ignore[assignment]

    def __post_init__(self):
        if not isinstance(self.arity, int) or self.arity < 2:
            raise ArityMismatch(f"arity must be an integer >= 2, got {self.arity!r}")
        self.family.check_arity(self.arity)
        if self.domain is None:
            object.__setattr__(self, "domain", self.family.default_domain)
        if self.domain.empty:
            raise DomainViolation(f"empty domain for {self.family.key} mean")

    @property
    def symmetric(self) -> bool:
        return self.family.is_symmetric

    def __call__(self, *values: float) -> float:
        return eval_mean(self, values)

    def with_arity(self, arity: int) -> "MeanSpec":
        return MeanSpec(self.family, arity, self.domain)

    def check_domain(self, values: Sequence[float]) -> None:
        for x in values:
            if x not in self.domain:
                raise DomainViolation(
                    f"value {x!r} outside domain ({self.domain.lo}, {self.domain.hi}) "
                    f"of {self.family.key} mean")

    def to_json(self) -> dict:
        return {"family": self.family.key, **self.family.params_json(),
                "arity": self.arity, "domain": self.domain.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "MeanSpec":
        try:
            family_cls = _FAMILIES[obj["family"]]
        except KeyError:
            raise MeanError(f"unknown mean family {obj.get('family')!r}") from None
        family = family_cls.params_from_json(obj)
        arity = obj.get("arity", family.fixed_arity())
        if arity is None:
            raise ArityMismatch(f"{family.key} mean needs an explicit arity")
        domain = Interval.from_json(obj["domain"]) if "domain" in obj else None
        return cls(family, int(arity), domain)


def eval_mean(spec: MeanSpec, values: Sequence[float]) -> float:
    """Evaluate ``spec`` at ``values`` after arity and domain validation.

    Raises
    ------
    ArityMismatch
        ``len(values) != spec.arity``.
    DomainViolation
        Some value lies outside ``spec.domain``.
    """
    if len(values) != spec.arity:
        raise ArityMismatch(f"{spec.family.key} mean has arity {spec.arity}, got {len(values)} values")
    spec.check_domain(values)
    return spec.family.evaluate(list(values))


def quasi_arithmetic(gen: Generator, arity: int) -> MeanSpec:
    return MeanSpec(QuasiArithmetic(gen), arity)


def arithmetic(arity: int = 2) -> MeanSpec:
    return quasi_arithmetic(Power(1.0), arity)


def geometric(arity: int = 2) -> MeanSpec:
    return quasi_arithmetic(Log(), arity)


def conjugate(spec: MeanSpec, gen: Generator) -> MeanSpec:
    """Return the mean ``x -> gen^-1(spec(gen(x_1), ..., gen(x_n)))``.

    Quasi-arithmetic means stay quasi-arithmetic with a composed
    generator; other families are wrapped in :class:`Conjugated`.  The
    resulting domain is the set of points that ``gen`` maps into the
    domain of ``spec``.
    """
    target = gen.image().intersect(spec.domain)
    if target.empty:
        raise DomainViolation(f"generator {gen.to_json()} never maps into the domain of the mean")
    domain = gen.preimage(target)
    if isinstance(spec.family, QuasiArithmetic):
        family: Family = QuasiArithmetic(Composed(spec.family.gen, gen))
    else:
        family = Conjugated(spec, gen)
    return MeanSpec(family, spec.arity, domain)


# --------------------------------------------------------------------------
# sampled axiom checks
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    strictly_internal: bool
    monotone: bool
    symmetric: bool
    witnesses: dict = field(default_factory=dict)


def _close(x: float, y: float, rel: float = 1e-12) -> bool:
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


def check_axioms(spec: MeanSpec, sample_count: int = 256, seed: int = 0) -> AxiomReport:
    """Probe strict internality, monotonicity and symmetry on random tuples.

    A flag is only cleared together with a concrete witness stored under
    the flag name in ``witnesses``.  Continuity is not tested.
    """
    if sample_count < 1:
        raise MeanError("sample_count must be >= 1")
    rng = random.Random(seed)
    lo, hi = spec.domain.sample_box()
    K = spec.family.evaluate
    witnesses: dict[str, Any] = {}

    for _ in range(sample_count):
        v = [rng.uniform(lo, hi) for _ in range(spec.arity)]
        k = K(v)
        if "strictly_internal" not in witnesses and not min(v) < k < max(v):
            witnesses["strictly_internal"] = {"values": v, "mean": k}

        i = rng.randrange(spec.arity)
        up = list(v)
        up[i] = min(v[i] + rng.uniform(0.0, 1.0), hi)
        k_up = K(up)
        if "monotone" not in witnesses and k_up < k and not _close(k, k_up):
            witnesses["monotone"] = {"values": v, "raised": up, "mean": k, "mean_raised": k_up}

        perm = list(v)
        rng.shuffle(perm)
        k_perm = K(perm)
        if "symmetric" not in witnesses and not _close(k, k_perm):
            witnesses["symmetric"] = {"values": v, "permuted": perm, "mean": k, "mean_permuted": k_perm}

    return AxiomReport(
        strictly_internal="strictly_internal" not in witnesses,
        monotone="monotone" not in witnesses,
        symmetric="symmetric" not in witnesses,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class RoundReport:
    is_round: bool
    max_residual: float
    worst_pair: tuple[float, float] | None


def round_residual(spec: MeanSpec, a: float, b: float) -> float:
    """``|(a o k) o (k o b) - k|`` with ``k = a o b``."""
    op = spec.family.evaluate
    k = op([a, b])
    return abs(op([op([a, k]), op([k, b])]) - k)


def check_round(spec: MeanSpec, grid: Sequence[tuple[float, float]], tol: float = 1e-9) -> RoundReport:
    if spec.arity != 2:
        raise ArityMismatch("roundness is defined for 2-variable means")
    worst, worst_pair = 0.0, None
    for a, b in grid:
        if not a < b:
            raise MeanError(f"grid pairs need a < b, got ({a}, {b})")
        spec.check_domain((a, b))
        r = round_residual(spec, a, b)
        if worst_pair is None or r > worst:
            worst, worst_pair = r, (a, b)
    return RoundReport(worst <= tol, worst, worst_pair)


def pair_grid(lo: float, hi: float, count: int) -> list[tuple[float, float]]:
    """All pairs ``a < b`` from ``count`` evenly spaced points in ``[lo, hi]``."""
    pts = np.linspace(lo, hi, count).tolist()
    return [(a, b) for a in pts for b in pts if a < b]
