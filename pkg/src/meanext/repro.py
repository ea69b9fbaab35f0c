"""Replay of the worked numeric examples and counterexamples.

Each case records what was expected, what was computed and whether the
two agree at the stated tolerance (or whether the stated inequality
holds).  Failures are data; nothing here raises on a mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .index_system import (IndexSystem, check_admissible, construct_admissible,
                           enumerate_admissible, unique_two_system)
from .iteration import compound, extend, iterate, shrink_general, shrunk_mean
from .markov import check_chain, transition_matrix, uniform_limit_error
from .means import (Heronian2, MeanSpec, MidRange, NonSymQuad4, PairwiseSqrtAvg,
                    SqrtPairAvg, WeightedTwo, arithmetic, geometric, pair_grid, check_round)
from .shrink_ops import shrink_s1, shrink_s2
from .symmetrize import symmetrize


@dataclass(frozen=True)
class ReproCase:
    id: str
    description: str
    expected: float | str
    computed: float | str
    passed: bool
    tolerance: float | None = None

    def to_json(self):
        return {"id": self.id, "description": self.description, "expected": self.expected,
                "computed": self.computed, "pass": self.passed, "tolerance": self.tolerance}


def _eq(cid, desc, expected, computed, tol):
    return ReproCase(cid, desc, expected, computed, abs(computed - expected) <= tol, tol)


def _holds(cid, desc, relation, computed, ok):
    return ReproCase(cid, desc, relation, computed, bool(ok))


NONADMISSIBLE_2_4 = IndexSystem.from_tuples([(1, 2), (1, 3), (1, 4), (3, 4)])
SYSTEM_3_5_A = IndexSystem.from_tuples([(1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5)])
SYSTEM_3_5_B = IndexSystem.from_tuples([(1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5)])


def agm(a: float, b: float, tol: float = 1e-15) -> float:
    """Gauss arithmetic-geometric mean, plain loop."""
    while abs(a - b) > tol * max(1.0, abs(a)):
        a, b = math.sqrt(a * b), (a + b) / 2
    return (a + b) / 2


def _cases_extension() -> list[ReproCase]:
    out = []
    a4 = iterate(arithmetic(2), NONADMISSIBLE_2_4, [0, 1, 1, 1], 4).values[3]
    out.append(_eq("ex-2-4-nonadmissible", "a^(4)_4 for AM on {(1,2),(1,3),(1,4),(3,4)} from (0,1,1,1)",
                   0.6875, a4, 1e-15))
    out.append(_holds("ex-2-4-below-am", "a^(4)_4 < 4-variable AM 0.75", "< 0.75", a4, a4 < 0.75))
    failed = sorted(check_admissible(NONADMISSIBLE_2_4).failed)
    out.append(_holds("ex-2-4-fails-property-2", "the same system fails exactly property (2)",
                      "[2]", str(failed), failed == [2]))
    out.append(_eq("am-extend-2-4", "AM extended by the n=2 system at (0,1,1,1)", 0.75,
                   extend(arithmetic(2), unique_two_system(4), [0, 1, 1, 1]).limit, 1e-12))

    comp56 = construct_admissible(5, 6)
    step1 = iterate(MeanSpec(MidRange(), 5), comp56, [1, 1, 2, 3, 4, 4], 1).values
    out.append(_holds("midrange-5-6-collapse", "mid-range 5-mean, complement system, one step",
                      "all = 2.5", max(abs(v - 2.5) for v in step1), all(v == 2.5 for v in step1)))
    out.append(_eq("midrange-5-6-limit", "extended limit of the same input", 2.5,
                   extend(MeanSpec(MidRange(), 5), comp56, [1, 1, 2, 3, 4, 4]).limit, 1e-15))

    for name, system in (("system-3-5-a", SYSTEM_3_5_A), ("system-3-5-b", SYSTEM_3_5_B)):
        ok = check_admissible(system).admissible
        out.append(_holds(f"{name}-admissible", f"{system} is admissible", "admissible", str(ok), ok))
    found = enumerate_admissible(3, 5)
    both = SYSTEM_3_5_A in found and SYSTEM_3_5_B in found
    out.append(_holds("non-unique-3-5", "enumeration for (3,5) has >= 2 systems incl. both examples",
                      ">= 2, both present", float(len(found)), len(found) >= 2 and both))
    for m in range(3, 7):
        found = enumerate_admissible(2, m)
        out.append(_holds(f"unique-2-{m}", f"exactly one admissible system for (2,{m})", "1",
                          float(len(found)), found == [unique_two_system(m)]))
    found = enumerate_admissible(5, 6)
    out.append(_holds("only-5-6", "complement system is the only one for (5,6)", "1",
                      float(len(found)), found == [comp56]))
    return out


def _cases_shrinking() -> list[ReproCase]:
    out = []
    K4 = MeanSpec(PairwiseSqrtAvg(), 4)
    a, b = 1.0, 4.0
    s1 = shrink_s1(K4, a, b).x
    s1_closed = ((math.sqrt(a) + math.sqrt(b) + math.sqrt(a + b + 7 * math.sqrt(a * b))) / 5) ** 2
    s2 = shrink_s2(K4, a, b)
    out.append(_eq("s1-pairwisesqrt4", "s1 of the pairwise-sqrt 4-mean at (1,4) vs closed form",
                   s1_closed, s1, 1e-9))
    out.append(_eq("s2-pairwisesqrt4", "s2 of the same mean vs (a+b+4sqrt(ab))/6",
                   (a + b + 4 * math.sqrt(a * b)) / 6, s2, 1e-12))
    out.append(_holds("s1-ne-s2", "|s1 - s2| > 1e-4 at (1,4)", "> 1e-4", abs(s1 - s2), abs(s1 - s2) > 1e-4))

    K3 = MeanSpec(SqrtPairAvg(), 3)
    a, b = 0.1, 2.0
    s1 = shrink_s1(K3, a, b).x
    out.append(_eq("s1-sqrtpair3-closed", "s1 of sqrt((ab+ac+bc)/3) vs (a+b+sqrt((a+b)^2+12ab))/6",
                   (a + b + math.sqrt((a + b) ** 2 + 12 * a * b)) / 6, s1, 1e-9))
    gen = shrink_general(K3, 2, [a, b], trace=True)
    b3 = gen.trace[3].values[1]
    ok = 0.7840 <= s1 <= 0.7855 and b3 < 0.781 and gen.limit < 0.781
    out.append(_holds("s1-approx-0784", "s1 in [0.7840, 0.7855]; general shrink b_3 and limit < 0.781",
                      "s1 in [0.7840,0.7855], b_3 < 0.781", s1, ok))

    Q = MeanSpec(NonSymQuad4(), 4)
    s1, s2 = shrink_s1(Q, 1.0, 3.0).x, shrink_s2(Q, 1.0, 3.0)
    out.append(_eq("nonsymquad4-s1", "s1 of sqrt((ab+ac+bd+cd)/4) at (1,3)", 2.0, s1, 1e-9))
    out.append(_eq("nonsymquad4-s2", "s2 of the same mean at (1,3)", 2.0, s2, 1e-12))
    gen = shrink_general(Q, 2, [1.0, 3.0], trace=True)
    b4 = gen.trace[4].values[1]
    out.append(_holds("nonsymquad4-b4", "general shrink at (1,3): b_4 < 2 and limit < 2",
                      "b_4 < 2", b4, b4 < 2 and gen.limit < 2 - 1e-6))

    L = MeanSpec(MidRange(), 3)
    samples = [(0.0, 3.0), (1.0, 2.0), (-1.5, 4.25)]
    flat = all(L(x, x, y) == L(x, y, y) for x, y in samples)
    out.append(_holds("midrange-flat-chain", "L(a,a,b) = L(a,b,b) for the mid-range 3-mean",
                      "equal", str(flat), flat))
    shrunk = shrunk_mean(L, 2)
    back = extend(shrunk, unique_two_system(3), [0.0, 0.0, 3.0]).limit
    out.append(_eq("midrange-reextend", "shrink to 2 variables then extend to 3, at (0,0,3)",
                   1.0, back, 1e-9))
    out.append(_holds("midrange-nonconcordance", "re-extended value differs from L(0,0,3) = 1.5",
                      "!= 1.5", back, abs(back - L(0.0, 0.0, 3.0)) > 0.1))
    return out


def _cases_other() -> list[ReproCase]:
    out = []
    for n, m in ((2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)):
        M = transition_matrix(construct_admissible(n, m))
        v = check_chain(M)
        err = uniform_limit_error(M, 2 ** 10)
        ok = v.doubly_stochastic and v.irreducible and v.aperiodic and err < 1e-10
        out.append(_holds(f"markov-uniform-{n}-{m}", f"chain for ({n},{m}) is doubly stochastic, "
                          "irreducible, aperiodic; M^1024 uniform", "< 1e-10", err, ok))
    bad = check_chain(transition_matrix(NONADMISSIBLE_2_4))
    out.append(_holds("markov-nonadmissible", "property-(2) violator is not doubly stochastic",
                      "False", str(bad.doubly_stochastic), not bad.doubly_stochastic))

    two = IndexSystem.from_tuples([(1, 2), (1, 2)])
    out.append(_eq("agm-compound", "compounding (GM, AM) at (1,9) vs direct AGM loop",
                   agm(1.0, 9.0), compound([geometric(2), arithmetic(2)], two, [1.0, 9.0]).limit, 1e-12))
    out.append(_eq("symmetrize-weighted", "symmetrization of (2a+b)/3 at (0,1)", 0.5,
                   symmetrize(MeanSpec(WeightedTwo(2 / 3), 2), 0.0, 1.0).limit, 1e-9))
    H = check_round(MeanSpec(Heronian2(), 2), [(1.0, 4.0)])
    out.append(_holds("heronian-not-round", "Heronian mean roundness residual at (1,4)", "> 1e-4",
                      H.max_residual, H.max_residual > 1e-4))
    G = check_round(geometric(2), pair_grid(0.5, 10.0, 20))
    out.append(_holds("geometric-round", "geometric mean is round on a 20x20 grid", "<= 1e-9",
                      G.max_residual, G.is_round))
    return out


SECTIONS: tuple[Callable[[], list[ReproCase]], ...] = (_cases_extension, _cases_shrinking, _cases_other)


def repro_suite() -> list[ReproCase]:
    cases: list[ReproCase] = []
    for section in SECTIONS:
        cases.extend(section())
    return cases
