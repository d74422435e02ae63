"""Budgeted lexicographic enumeration of the valid pairs of an interval pair."""

from __future__ import annotations

from itertools import accumulate
from typing import Callable, Iterator, Sequence

from .core import DegreePair, IntervalPair


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, partial_count: int):
        super().__init__(f"enumeration budget {budget} exhausted after {partial_count} pairs")
        self.budget = budget
        self.partial_count = partial_count


def bounded_vectors(
    lo: Sequence[int], hi: Sequence[int], total_lo: int, total_hi: int, tick: Callable[[], None]
) -> Iterator[tuple[int, ...]]:
    """Integer vectors with lo <= v <= hi slotwise and total in [total_lo, total_hi].

    Lexicographic order. Each search node calls ``tick`` once; pruning keeps
    every node on a path to at least one solution.
    """
    k = len(lo)
    rest_lo = list(accumulate(reversed(lo), initial=0))[::-1]
    rest_hi = list(accumulate(reversed(hi), initial=0))[::-1]
    if rest_lo[0] > total_hi or rest_hi[0] < total_lo or total_lo > total_hi:
        return
    vec = [0] * k
    top = [0] * k
    prefix = [0] * (k + 1)

    def open_slot(i: int) -> None:
        vec[i] = max(lo[i], total_lo - prefix[i] - rest_hi[i + 1])
        top[i] = min(hi[i], total_hi - prefix[i] - rest_lo[i + 1])

    i = 0
    open_slot(0)
    while True:
        tick()
        prefix[i + 1] = prefix[i] + vec[i]
        if i < k - 1:
            i += 1
            open_slot(i)
            continue
        yield tuple(vec)
        while i >= 0 and vec[i] == top[i]:
            i -= 1
        if i < 0:
            return
        vec[i] += 1


def enumerate_pairs(ip: IntervalPair, budget: int) -> Iterator[DegreePair]:
    """Every valid pair once, P-major lexicographic, both sides in input order.

    ``budget`` bounds the number of search states (partial assignments of P
    or Q, pruned or not); exceeding it raises BudgetExceeded.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    states = 0
    yielded = 0

    def tick() -> None:
        nonlocal states
        states += 1
        if states > budget:
            raise BudgetExceeded(budget, yielded)

    a, b, c, d = ip.a, ip.b, ip.c, ip.d
    for P in bounded_vectors(a, b, sum(c), sum(d), tick):
        s = sum(P)
        for Q in bounded_vectors(c, d, s, s, tick):
            yielded += 1
            yield DegreePair(P, Q)
