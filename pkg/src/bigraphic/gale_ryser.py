"""Bigraphic test for a concrete degree pair and greedy construction of a realization."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .core import CheckReport, DegreePair, Violation, dominance_violations, sort_desc_with_perm


class NotBigraphic(ValueError):
    def __init__(self, report: CheckReport):
        super().__init__(f"pair is not bigraphic: {[v.to_json() for v in report.violations]}")
        self.report = report


@dataclass(frozen=True)
class BipartiteRealization:
    m: int
    n: int
    biadjacency: tuple[tuple[int, ...], ...]

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.biadjacency)

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.biadjacency)) if self.m else (0,) * self.n

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.biadjacency) for j, x in enumerate(row) if x]

    @classmethod
    def from_edges(cls, m: int, n: int, edges) -> BipartiteRealization:
        rows = [[0] * n for _ in range(m)]
        for i, j in edges:
            if rows[i][j]:
                raise ValueError(f"duplicate edge {i} {j}")
            rows[i][j] = 1
        return cls(m, n, tuple(map(tuple, rows)))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "biadjacency": [list(r) for r in self.biadjacency]}

    @classmethod
    def from_json(cls, doc: dict) -> BipartiteRealization:
        return cls(doc["m"], doc["n"], tuple(tuple(r) for r in doc["biadjacency"]))


def is_bigraphic(pair: DegreePair) -> CheckReport:
    """Gale-Ryser: equal sums, and for every r the r largest Q entries sum to at
    most sum_min(P, r). Only Q is sorted; indices refer to that order."""
    sorted_q, perm = sort_desc_with_perm(pair.Q)
    violations = []
    sp, sq = sum(pair.P), sum(pair.Q)
    if sp != sq:
        violations.append(Violation("sum-equality", 0, max(sp, sq), min(sp, sq)))
    violations += dominance_violations("(1)", sorted_q, pair.P)
    return CheckReport(tuple(violations), {"Q": tuple(perm)})


def first_failing_r(pair: DegreePair) -> int | None:
    """Smallest r where the dominance inequality fails, or None."""
    for v in is_bigraphic(pair).violations:
        if v.family == "(1)":
            return v.index
    return None


def realize(pair: DegreePair) -> BipartiteRealization:
    """Build a realization by the degree-greedy rule.

    Y-vertices are taken in descending demand; each connects to the X-vertices
    with the largest residual capacity. All ties go to the lower index.
    """
    report = is_bigraphic(pair)
    if not report.holds:
        raise NotBigraphic(report)
    m, n = len(pair.P), len(pair.Q)
    rows = [[0] * n for _ in range(m)]
    heap = [(-p, i) for i, p in enumerate(pair.P)]
    heapq.heapify(heap)
    _, order = sort_desc_with_perm(pair.Q)
    for j in order:
        taken = [heapq.heappop(heap) for _ in range(pair.Q[j])]
        for neg, i in taken:
            # unreachable once the dominance check passed
            assert neg < 0, "greedy ran out of capacity"
            rows[i][j] = 1
            heapq.heappush(heap, (neg + 1, i))
    return BipartiteRealization(m, n, tuple(map(tuple, rows)))
