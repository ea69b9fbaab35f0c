"""Extending and shrinking means by coupled iteration over index systems."""

from .errors import (ArityMismatch, DomainViolation, InvalidDimensions, MalformedSystem,
                     MeanError, MeansNotOrdered, NoSignChange, NonConvergence, NotAdmissible,
                     OddArity, SearchSpaceTooLarge)
from .index_system import (AdmissibilityVerdict, IndexSystem, check_admissible,
                           construct_admissible, enumerate_admissible, shrink_system,
                           unique_two_system)
from .iteration import (ConvergenceReport, IterationState, OrderReport, Status, compare_extended,
                        compound, extend, extended_mean, iterate, shrink_general, shrunk_mean)
from .markov import ChainVerdict, check_chain, matrix_power, transition_matrix, uniform_limit_error
from .means import (POSITIVE, REAL, AxiomReport, Composed, Conjugated, Exp, Heronian2, Interval,
                    Log, MeanSpec, MidRange, NonSymQuad4, PairwiseSqrtAvg, Power, QuasiArithmetic,
                    RoundReport, SqrtPairAvg, WeightedTwo, arithmetic, check_axioms, check_round,
                    conjugate, eval_mean, geometric, quasi_arithmetic)
from .shrink_ops import FixedPointResult, shrink_s1, shrink_s2, shrink_s3
from .symmetrize import SymTrace, symmetrize

__version__ = "0.1.0"
