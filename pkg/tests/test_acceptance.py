"""Acceptance criteria, one test per criterion.

The terminal summary prints a PASS/FAIL line for each ``ACn`` marker.
"""

import io
import math
import random
import subprocess
import sys
import time
from pathlib import Path

import mpmath
import numpy as np
import pytest

from meanext import (IndexSystem, Heronian2, Log, MeanSpec, MidRange, NonSymQuad4, PairwiseSqrtAvg,
                     Power, SqrtPairAvg, WeightedTwo, arithmetic, check_chain, check_round,
                     compare_extended, compound, conjugate, construct_admissible, extend, geometric,
                     iterate, matrix_power, quasi_arithmetic, shrink_general, shrink_s1, shrink_s2,
                     shrunk_mean, symmetrize, transition_matrix, uniform_limit_error,
                     unique_two_system)
from meanext.cli import run
from meanext.means import pair_grid

from conftest import QA_GENERATORS

ROOT = Path(__file__).resolve().parent.parent
acceptance = pytest.mark.acceptance


def sorted_sample(rng, m, lo=0.1, hi=10.0):
    return sorted(rng.uniform(lo, hi) for _ in range(m))


@acceptance("AC1", "non-admissible witness a^(4)_4 = 0.6875")
def test_ac1_nonadmissible_witness():
    T = IndexSystem.from_tuples([(1, 2), (1, 3), (1, 4), (3, 4)])
    K = arithmetic(2)
    # exact dyadic arithmetic: 0,1,1,1 -> .5,.5,.5,1 -> .5,.5,.75,.75 -> .5,.625,.625,.75
    assert abs(iterate(K, T, [0, 1, 1, 1], 4).values[3] - 0.6875) <= 1e-15
    timings = []
    for _ in range(50):
        t0 = time.perf_counter()
        iterate(K, T, [0, 1, 1, 1], 4)
        timings.append(time.perf_counter() - t0)
    assert sorted(timings)[25] < 2e-4


@acceptance("AC2", "MidRange (5,6) one-step collapse to 2.5")
def test_ac2_one_step_collapse():
    K, T = MeanSpec(MidRange(), 5), construct_admissible(5, 6)
    v = [1, 1, 2, 3, 4, 4]
    assert iterate(K, T, v, 1).values == (2.5,) * 6
    r = extend(K, T, v)
    assert r.converged and r.limit == 2.5


@acceptance("AC3", "quasi-arithmetic concordance on all systems with m <= 6")
def test_ac3_quasi_arithmetic_concordance():
    systems = [construct_admissible(n, m) for m in range(3, 7) for n in range(2, m)]
    assert len(systems) == 10
    t0 = time.perf_counter()
    worst = 0.0
    for gen in QA_GENERATORS:
        for T in systems:
            rng = random.Random(f"{gen.to_json()}-{T.n}-{T.m}")
            K, direct = quasi_arithmetic(gen, T.n), quasi_arithmetic(gen, T.m)
            for _ in range(100):
                v = sorted_sample(rng, T.m)
                worst = max(worst, abs(extend(K, T, v).limit - direct(*v)))
    assert worst <= 1e-9
    assert time.perf_counter() - t0 < 10.0


@acceptance("AC4", "shrink concordance from m in {3,4,6}")
def test_ac4_shrink_concordance():
    worst = 0.0
    for gen in QA_GENERATORS:
        for m in (3, 4, 6):
            K = quasi_arithmetic(gen, m)
            for n in range(2, m):
                rng = random.Random(f"{gen.to_json()}-{m}-{n}")
                direct = quasi_arithmetic(gen, n)
                for _ in range(100):
                    v = sorted_sample(rng, n)
                    worst = max(worst, abs(shrink_general(K, n, v).limit - direct(*v)))
    assert worst <= 1e-9


def _pairwise_closed_s1(a, b):
    # K(a,x,x,b) = x with y = sqrt(x) is 5y^2 - 2(sqrt a + sqrt b) y - sqrt(ab) = 0
    return ((math.sqrt(a) + math.sqrt(b) + math.sqrt(a + b + 7 * math.sqrt(a * b))) / 5) ** 2


def _pairwise_mp_s1(a, b):
    mpmath.mp.dps = 40

    def gap(x):
        v = [mpmath.mpf(a), x, x, mpmath.mpf(b)]
        return sum(mpmath.sqrt(v[i] * v[j]) for i in range(4) for j in range(i + 1, 4)) / 6 - x

    return float(mpmath.findroot(gap, (mpmath.mpf(a), mpmath.mpf(b)), solver="anderson"))


@acceptance("AC5", "s1/s2 closed forms for the pairwise-sqrt 4-mean")
def test_ac5_closed_forms():
    K = MeanSpec(PairwiseSqrtAvg(), 4)
    axis = np.linspace(0.1, 10.0, 10)
    assert _pairwise_closed_s1(1.0, 4.0) == pytest.approx(_pairwise_mp_s1(1.0, 4.0), abs=1e-12)
    for a in axis:
        for b in axis:
            s2 = shrink_s2(K, min(a, b), max(a, b))
            assert abs(s2 - (a + b + 4 * math.sqrt(a * b)) / 6) <= 1e-12
            if a == b:
                continue
            s1 = shrink_s1(K, min(a, b), max(a, b)).x
            assert abs(s1 - _pairwise_closed_s1(a, b)) <= 1e-9
    assert abs(shrink_s1(K, 1.0, 4.0).x - shrink_s2(K, 1.0, 4.0)) > 1e-4


@acceptance("AC6", "s1 near 0.784 while general shrinking stays below 0.781")
def test_ac6_method_divergence():
    K = MeanSpec(SqrtPairAvg(), 3)
    s1 = shrink_s1(K, 0.1, 2.0).x
    assert 0.7840 <= s1 <= 0.7855
    r = shrink_general(K, 2, [0.1, 2.0], trace=True)
    assert r.trace[3].step == 3
    assert r.trace[3].values[-1] < 0.781
    assert r.limit < 0.781


@acceptance("AC7", "non-symmetric quadratic 4-mean: s1 = s2 = (a+b)/2, general shrink below 2")
def test_ac7_nonsymmetric():
    Q = MeanSpec(NonSymQuad4(), 4)
    axis = np.linspace(0.2, 9.0, 8)
    for a in axis:
        for b in axis:
            if a >= b:
                continue
            assert abs(shrink_s1(Q, a, b).x - (a + b) / 2) <= 1e-9
            assert abs(shrink_s2(Q, a, b) - (a + b) / 2) <= 1e-9
    r = shrink_general(Q, 2, [1.0, 3.0], trace=True)
    assert r.trace[4].step == 4 and r.trace[4].values[-1] < 2
    assert r.limit < 2 - 1e-6


@acceptance("AC8", "Markov chains of constructed systems are doubly stochastic and regular")
def test_ac8_markov():
    for m in range(3, 9):
        for n in range(2, m):
            M = transition_matrix(construct_admissible(n, m))
            assert np.all(np.abs(M.sum(axis=0) - 1) <= 1e-12)
            assert np.all(np.abs(M.sum(axis=1) - 1) <= 1e-12)
            v = check_chain(M)
            assert v.irreducible and v.aperiodic
            assert uniform_limit_error(M, 2 ** 10) < 1e-10
    bad = transition_matrix(IndexSystem.from_tuples([(1, 2), (1, 3), (1, 4), (3, 4)]))
    assert check_chain(bad).doubly_stochastic is False


@acceptance("AC9", "arithmetic iterates equal M^k-weighted sums")
def test_ac9_coefficients():
    rng = random.Random(9)
    for n, m in ((2, 5), (3, 5)):
        T = construct_admissible(n, m)
        M = transition_matrix(T)
        v = np.array(sorted_sample(rng, m))
        for k in range(1, 13):
            got = np.array(iterate(arithmetic(n), T, v, k).values)
            assert np.max(np.abs(got - matrix_power(M, k) @ v)) <= 1e-12


@acceptance("AC10", "GM <= AM <= QM lifts to m = 5")
def test_ac10_inequality_lifting():
    gm, am, qm = geometric(2), arithmetic(2), quasi_arithmetic(Power(2.0), 2)
    for a, b in pair_grid(0.1, 10.0, 30):
        assert gm(a, b) <= am(a, b) <= qm(a, b)
    T = unique_two_system(5)
    for lower, upper in ((gm, am), (am, qm)):
        rep = compare_extended(lower, upper, T, samples=100, seed=10)
        assert rep.holds and rep.witness is None


@acceptance("AC11", "equivalence transport under the log generator")
def test_ac11_equivalence_transport():
    K, conj = arithmetic(2), conjugate(arithmetic(2), Log())
    rng = random.Random(11)
    for m in (3, 5):
        T = unique_two_system(m)
        for _ in range(50):
            v = sorted_sample(rng, m)
            left = extend(conj, T, v).limit
            right = math.exp(extend(K, T, [math.log(x) for x in v]).limit)
            assert abs(left - right) <= 1e-9


@acceptance("AC12", "roundness suite for quasi-arithmetic 2-means; Heronian mean is not round")
def test_ac12_roundness():
    grid = pair_grid(0.5, 10.0, 20)
    T3, T4 = unique_two_system(3), unique_two_system(4)
    for gen in QA_GENERATORS:
        K = quasi_arithmetic(gen, 2)
        assert check_round(K, grid, tol=1e-9).is_round
        for a, b in grid:
            k = K(a, b)
            assert abs(extend(K, T3, [a, k, b]).limit - k) <= 1e-9
            assert abs(extend(K, T4, [a, k, k, b]).limit - k) <= 1e-9
            assert abs(extend(K, T4, [a, a, b, b]).limit - k) <= 1e-9
    rep = check_round(MeanSpec(Heronian2(), 2), [(1.0, 4.0)], tol=1e-9)
    assert not rep.is_round and rep.max_residual > 1e-4


@acceptance("AC13", "MidRange 3-mean is not recovered by re-extension")
def test_ac13_nonconcordance():
    L = MeanSpec(MidRange(), 3)
    rng = random.Random(13)
    for _ in range(200):
        a, b = sorted(rng.uniform(-10, 10) for _ in range(2))
        assert L(a, a, b) == L(a, b, b)
    back = extend(shrunk_mean(L, 2), unique_two_system(3), [0.0, 0.0, 3.0]).limit
    assert abs(back - 1.0) <= 1e-9
    assert L(0.0, 0.0, 3.0) == 1.5


@acceptance("AC14", "compounding reproduces the AGM")
def test_ac14_compounding():
    a, b = 1.0, 9.0
    while abs(a - b) > 1e-15 * b:
        a, b = math.sqrt(a * b), (a + b) / 2
    r = compound([geometric(2), arithmetic(2)], IndexSystem.from_tuples([(1, 2), (1, 2)]), [1.0, 9.0])
    assert abs(r.limit - a) <= 1e-12


@acceptance("AC15", "symmetrization of the 2/3-weighted mean")
def test_ac15_symmetrization():
    K = MeanSpec(WeightedTwo(2 / 3), 2)
    assert abs(symmetrize(K, 0.0, 1.0).limit - 0.5) <= 1e-9
    rng = random.Random(15)
    for _ in range(100):
        a, b = rng.uniform(-10, 10), rng.uniform(-10, 10)
        r = symmetrize(K, a, b)
        assert r == symmetrize(K, b, a)
        for (lo, hi), (lo2, hi2) in zip(r.pairs, r.pairs[1:]):
            assert lo <= lo2 <= hi2 <= hi
        assert min(a, b) <= r.limit <= max(a, b)


@acceptance("AC16", "property suites green, repro exits 0, under 60 s")
def test_ac16_property_suite():
    t0 = time.perf_counter()
    modules = ["tests/test_iteration.py", "tests/test_shrink_ops.py", "tests/test_markov.py",
               "tests/test_symmetrize.py"]
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *modules],
                          cwd=ROOT, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert run(["repro"], io.StringIO(), io.StringIO()) == 0
    assert time.perf_counter() - t0 < 60.0
