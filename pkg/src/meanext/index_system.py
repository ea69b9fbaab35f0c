"""Index systems ``T = {t_1, ..., t_m}`` driving the coupled iteration.

An :class:`IndexSystem` holds ``m`` sorted tuples of length ``n`` with
1-based entries in ``1..m``.  For extension systems ``n < m``; the
shrinking system built by :func:`shrink_system` has ``n > m`` (long
tuples with repeated entries over a short index range).

Admissibility is the conjunction of four properties:

1. ``t_1 <= t_2 <= ... <= t_m`` coordinatewise;
2. every index belongs to exactly ``min(n, m)`` tuples (set membership);
3. ``min t_i <= i <= max t_i``, strictly inside for ``2 <= i <= m-1``;
4. every ``i >= 2`` belongs to some earlier tuple ``t_j``, ``j < i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from .errors import InvalidDimensions, MalformedSystem, SearchSpaceTooLarge

PROPERTIES = (1, 2, 3, 4)
ENUMERATION_MAX_M = 6


@dataclass(frozen=True)
class IndexSystem:
    n: int
    m: int
    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tuples = tuple(tuple(sorted(int(j) for j in t)) for t in self.tuples)
        if len(tuples) != self.m:
            raise MalformedSystem(f"expected {self.m} tuples, got {len(tuples)}")
        for i, t in enumerate(tuples, 1):
            if len(t) != self.n:
                raise MalformedSystem(f"t_{i} = {t} has length {len(t)}, expected {self.n}")
            if t and not (1 <= t[0] and t[-1] <= self.m):
                raise MalformedSystem(f"t_{i} = {t} has entries outside 1..{self.m}")
        object.__setattr__(self, "tuples", tuples)

    @classmethod
    def from_tuples(cls, tuples: Sequence[Sequence[int]]) -> "IndexSystem":
        if not tuples:
            raise MalformedSystem("empty system")
        return cls(len(tuples[0]), len(tuples), tuple(tuple(t) for t in tuples))

    @property
    def is_shrink(self) -> bool:
        return self.n > self.m

    def zero_based(self) -> list[list[int]]:
        return [[j - 1 for j in t] for t in self.tuples]

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "tuples": [list(t) for t in self.tuples]}

    @classmethod
    def from_json(cls, obj: dict) -> "IndexSystem":
        try:
            return cls(int(obj["n"]), int(obj["m"]), tuple(tuple(t) for t in obj["tuples"]))
        except (KeyError, TypeError) as exc:
            raise MalformedSystem(f"bad system object: {exc}") from None

    def __str__(self):
        return "{" + ", ".join("(" + ",".join(map(str, t)) + ")" for t in self.tuples) + "}"


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    failed: dict = field(default_factory=dict)

    @property
    def failed_properties(self) -> set[int]:
        return set(self.failed)


def _leq(s: Sequence[int], t: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(s, t))


def _property3_ok(i: int, t: Sequence[int], m: int) -> bool:
    if 2 <= i <= m - 1:
        return t[0] < i < t[-1]
    return t[0] <= i <= t[-1]


def check_admissible(system: IndexSystem) -> AdmissibilityVerdict:
    """Check properties (1)-(4); every failure carries a witness."""
    T, m = system.tuples, system.m
    target = min(system.n, system.m)
    failed: dict[int, object] = {}

    bad = [(i, i + 1) for i in range(1, m) if not _leq(T[i - 1], T[i])]
    if bad:
        failed[1] = {"unordered_pairs": bad}

    counts = {k: sum(1 for t in T if k in t) for k in range(1, m + 1)}
    wrong = {k: c for k, c in counts.items() if c != target}
    if wrong:
        failed[2] = {"expected": target, "counts": wrong}

    bad3 = [i for i, t in enumerate(T, 1) if not _property3_ok(i, t, m)]
    if bad3:
        failed[3] = {"indices": bad3}

    bad4 = [i for i in range(2, m + 1) if not any(i in T[j] for j in range(i - 1))]
    if bad4:
        failed[4] = {"unreached": bad4}

    return AdmissibilityVerdict(not failed, failed)


def _check_dims(n: int, m: int) -> None:
    if n < 2 or m <= n:
        raise InvalidDimensions(f"need 2 <= n < m, got n={n}, m={m}")


def unique_two_system(m: int) -> IndexSystem:
    """The only admissible system for ``n = 2``: ``t_i = (i-1, i+1)`` inside."""
    _check_dims(2, m)
    tuples = [(1, 2)] + [(k - 1, k + 1) for k in range(2, m)] + [(m - 1, m)]
    return IndexSystem(2, m, tuple(tuples))


def construct_admissible(n: int, m: int) -> IndexSystem:
    """Admissible system for ``(n, m)`` built by recursion on ``n``.

    Starts from the ``n = 2`` system on ``m - n + 2`` indices and lifts a
    system for ``(n-1, m-1)`` to ``(n, m)`` by shifting every entry up by
    one and prepending ``1`` (first ``n-1`` tuples) or ``i - (n-1)`` (the
    rest), then appending the top block ``(m-n+1, ..., m)``.
    """
    _check_dims(n, m)
    system = unique_two_system(m - n + 2)
    for nn in range(3, n + 1):
        mm = system.m + 1
        lifted = []
        for i, t in enumerate(system.tuples, 1):
            head = 1 if i <= nn - 1 else i - (nn - 1)
            lifted.append((head,) + tuple(j + 1 for j in t))
        lifted.append(tuple(range(mm - nn + 1, mm + 1)))
        system = IndexSystem(nn, mm, tuple(lifted))
    return system


def shrink_system(m: int, n: int) -> IndexSystem:
    """System reducing an ``m``-variable mean to ``n`` variables.

    ``t_i = (1, ..., i-1, i, ..., i, i+1, ..., n)`` with ``m - n + 1``
    copies of ``i``.  The returned object has tuple length ``m`` over the
    index range ``1..n``.
    """
    _check_dims(n, m)
    reps = m - n + 1
    tuples = [tuple(range(1, i)) + (i,) * reps + tuple(range(i + 1, n + 1))
              for i in range(1, n + 1)]
    return IndexSystem(m, n, tuple(tuples))


def enumerate_admissible(n: int, m: int, limit: int | None = None) -> list[IndexSystem]:
    """All admissible systems for ``(n, m)`` in lexicographic order.

    Exhaustive backtracking over nondecreasing chains of sorted tuples
    (repetitions allowed), pruned on the fly by properties (2)-(4).
    Only ``m <= 6`` is accepted.
    """
    _check_dims(n, m)
    if m > ENUMERATION_MAX_M:
        raise SearchSpaceTooLarge(
            f"enumeration limited to m <= {ENUMERATION_MAX_M}; "
            f"(n={n}, m={m}) has {comb(m + n - 1, n)}^{m} candidate chains")
    return list(itertools.islice(_search(n, m), limit))


def _search(n: int, m: int) -> Iterator[IndexSystem]:
    pool = list(itertools.combinations_with_replacement(range(1, m + 1), n))
    by_position = {i: [t for t in pool if _property3_ok(i, t, m)] for i in range(1, m + 1)}
    counts = [0] * (m + 1)
    chosen: list[tuple[int, ...]] = []
    seen = [False] * (m + 1)  # seen[k]: k occurs in some already placed tuple

    def rec(i: int) -> Iterator[IndexSystem]:
        if i > m:
            if all(counts[k] == n for k in range(1, m + 1)):
                yield IndexSystem(n, m, tuple(chosen))
            return
        if i >= 2 and not seen[i]:
            return
        # tuples i..m are the only remaining source of membership
        remaining = m - i + 1
        if any(counts[k] + remaining < n for k in range(1, m + 1)):
            return
        prev = chosen[-1] if chosen else None
        for t in by_position[i]:
            if prev is not None and not _leq(prev, t):
                continue
            members = set(t)
            if any(counts[k] >= n for k in members):
                continue
            for k in members:
                counts[k] += 1
            newly = [k for k in members if not seen[k]]
            for k in newly:
                seen[k] = True
            chosen.append(t)
            yield from rec(i + 1)
            chosen.pop()
            for k in newly:
                seen[k] = False
            for k in members:
                counts[k] -= 1

    yield from rec(1)
