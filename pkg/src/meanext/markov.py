"""Transition matrix of an index system and the chain checks behind it.

Row ``i`` of the matrix puts weight ``mult(l, t_i) / len(t_i)`` on column
``l``, so the arithmetic-mean iteration is ``a_{k} = M^k a_0`` and for a
quasi-arithmetic mean the same holds in generator coordinates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import MalformedSystem
from .index_system import IndexSystem

MAX_STATES = 64
STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True)
class ChainVerdict:
    doubly_stochastic: bool
    irreducible: bool
    aperiodic: bool
    period_witness: int | None = None

    def to_json(self):
        return {"doubly_stochastic": self.doubly_stochastic, "irreducible": self.irreducible,
                "aperiodic": self.aperiodic, "period_witness": self.period_witness}


def transition_matrix(system: IndexSystem) -> np.ndarray:
    if system.m > MAX_STATES:
        raise MalformedSystem(f"at most {MAX_STATES} states supported, got {system.m}")
    M = np.zeros((system.m, system.m))
    for i, t in enumerate(system.tuples):
        for l in t:
            M[i, l - 1] += 1.0
    M /= system.n
    M.setflags(write=False)
    return M


def matrix_power(M: np.ndarray, k: int) -> np.ndarray:
    """``M**k`` by repeated squaring."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return np.linalg.matrix_power(np.asarray(M, dtype=float), k)


def _reach(adj: list[list[int]], start: int) -> list[int | None]:
    dist: list[int | None] = [None] * len(adj)
    dist[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def period(M: np.ndarray, state: int = 0) -> int:
    """Period of ``state`` within its communication class.

    Uses breadth-first levels ``d`` from ``state``: the period is the gcd
    of ``d[u] + 1 - d[v]`` over all edges ``u -> v`` inside the class.
    """
    size = M.shape[0]
    fwd = [[v for v in range(size) if M[u, v] > 0] for u in range(size)]
    bwd = [[u for u in range(size) if M[u, v] > 0] for v in range(size)]
    if M[state, state] > 0:
        return 1
    down, up = _reach(fwd, state), _reach(bwd, state)
    cls = {u for u in range(size) if down[u] is not None and up[u] is not None}
    g = 0
    for u in cls:
        for v in fwd[u]:
            if v in cls:
                g = gcd(g, down[u] + 1 - down[v])
    return g


def check_chain(M: np.ndarray) -> ChainVerdict:
    M = np.asarray(M, dtype=float)
    size = M.shape[0]
    doubly = bool(np.all(np.abs(M.sum(axis=0) - 1.0) <= STOCHASTIC_TOL)
                  and np.all(np.abs(M.sum(axis=1) - 1.0) <= STOCHASTIC_TOL))
    fwd = [[v for v in range(size) if M[u, v] > 0] for u in range(size)]
    bwd = [[u for u in range(size) if M[u, v] > 0] for v in range(size)]
    irreducible = all(d is not None for d in _reach(fwd, 0)) and all(d is not None for d in _reach(bwd, 0))
    p = period(M, 0)
    return ChainVerdict(doubly, irreducible, p == 1, None if p == 1 else p)


def uniform_limit_error(M: np.ndarray, k: int) -> float:
    """``max |(M^k)_{i,l} - 1/m|``."""
    P = matrix_power(M, k)
    return float(np.max(np.abs(P - 1.0 / P.shape[0])))
