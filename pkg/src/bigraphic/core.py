"""Shared domain types and the sorting / conjugate-sum helpers every check uses."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Sequence

MAX_VALUE = 10**9
MAX_LENGTH = 10**6

# Name of the prefix index in JSON output, keyed by inequality family.
INDEX_NAMES = {
    "(1)": "r",
    "(2)": "k",
    "(3)": "l",
    "(4)": "k",
    "(5)": "l",
    "T1.2-first": "t",
    "T1.2-second": "s",
    "sum-equality": "index",
}


class ValidationError(ValueError):
    """Raised when a sequence violates the sign, ordering or size caps."""


def _check_values(values: Sequence[int], what: str, max_length: int = MAX_LENGTH) -> None:
    if not values:
        raise ValidationError(f"{what} must be nonempty")
    if len(values) > max_length:
        raise ValidationError(f"{what} has length {len(values)} > {max_length}")
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError(f"{what}[{i}] = {v!r} is not an integer")
        if v < 0:
            raise ValidationError(f"{what}[{i}] = {v} is negative")
        if v > MAX_VALUE:
            raise ValidationError(f"{what}[{i}] = {v} exceeds cap {MAX_VALUE}")


@dataclass(frozen=True)
class IntervalSequence:
    """Per-slot degree ranges ``[lo, hi]`` for one side of the bipartition."""

    items: tuple[tuple[int, int], ...]

    def __post_init__(self):
        items = tuple((lo, hi) for lo, hi in self.items)
        object.__setattr__(self, "items", items)
        if len(items) > MAX_LENGTH:
            raise ValidationError(f"interval sequence has length {len(items)} > {MAX_LENGTH}")
        _check_values([v for it in items for v in it], "interval bounds", 2 * MAX_LENGTH)
        for i, (lo, hi) in enumerate(items):
            if lo > hi:
                raise ValidationError(f"interval {i} has lo={lo} > hi={hi}")

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> IntervalSequence:
        return cls(tuple(tuple(p) for p in pairs))

    @property
    def lo(self) -> tuple[int, ...]:
        return tuple(lo for lo, _ in self.items)

    @property
    def hi(self) -> tuple[int, ...]:
        return tuple(hi for _, hi in self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class IntervalPair:
    """Interval sequences for side X (``L1``, bounds a/b) and side Y (``L2``, bounds c/d).

    Stored in caller order; every check sorts internally.
    """

    L1: IntervalSequence
    L2: IntervalSequence

    @classmethod
    def of(cls, L1: Iterable[Sequence[int]], L2: Iterable[Sequence[int]]) -> IntervalPair:
        return cls(IntervalSequence.of(L1), IntervalSequence.of(L2))

    @property
    def m(self) -> int:
        return len(self.L1)

    @property
    def n(self) -> int:
        return len(self.L2)

    @property
    def a(self) -> tuple[int, ...]:
        return self.L1.lo

    @property
    def b(self) -> tuple[int, ...]:
        return self.L1.hi

    @property
    def c(self) -> tuple[int, ...]:
        return self.L2.lo

    @property
    def d(self) -> tuple[int, ...]:
        return self.L2.hi

    def contains(self, pair: DegreePair) -> bool:
        """True when ``pair`` lies in the intervals slot by slot and has equal sums."""
        if len(pair.P) != self.m or len(pair.Q) != self.n:
            return False
        if sum(pair.P) != sum(pair.Q):
            return False
        return all(lo <= p <= hi for (lo, hi), p in zip(self.L1.items, pair.P)) and all(
            lo <= q <= hi for (lo, hi), q in zip(self.L2.items, pair.Q)
        )

    def to_json(self) -> dict:
        return {"L1": [list(it) for it in self.L1.items], "L2": [list(it) for it in self.L2.items]}


@dataclass(frozen=True)
class DegreePair:
    P: tuple[int, ...]
    Q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(self.P))
        object.__setattr__(self, "Q", tuple(self.Q))
        _check_values(self.P, "P")
        _check_values(self.Q, "Q")

    def swapped(self) -> DegreePair:
        return DegreePair(self.Q, self.P)

    def to_json(self) -> dict:
        return {"P": list(self.P), "Q": list(self.Q)}


@dataclass(frozen=True)
class Violation:
    family: str
    index: int
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {"family": self.family, INDEX_NAMES[self.family]: self.index, "lhs": self.lhs, "rhs": self.rhs}

    @classmethod
    def from_json(cls, doc: dict) -> Violation:
        family = doc["family"]
        return cls(family, doc[INDEX_NAMES[family]], doc["lhs"], doc["rhs"])


@dataclass(frozen=True)
class CheckReport:
    """Verdict plus every violated inequality.

    Violation indices are prefix lengths in the coordinates of the sequence the
    check sorted; ``sort_permutations[name][k]`` is the input position of the
    k-th entry of that sorted sequence.
    """

    violations: tuple[Violation, ...] = ()
    sort_permutations: dict[str, tuple[int, ...]] = field(default_factory=dict)
    degenerate_forced: bool | None = None

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "Holds" if self.holds else "Fails"

    def to_json(self) -> dict:
        doc = {
            "verdict": self.verdict,
            "violations": [v.to_json() for v in self.violations],
            "sort_permutations": {k: list(v) for k, v in self.sort_permutations.items()},
        }
        if self.degenerate_forced is not None:
            doc["degenerate_forced"] = self.degenerate_forced
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> CheckReport:
        report = cls(
            tuple(Violation.from_json(v) for v in doc["violations"]),
            {k: tuple(v) for k, v in doc["sort_permutations"].items()},
            doc.get("degenerate_forced"),
        )
        if report.verdict != doc["verdict"]:
            raise ValueError(f"verdict {doc['verdict']!r} disagrees with violations")
        return report


def sort_desc_with_perm(seq: Sequence[int]) -> tuple[list[int], list[int]]:
    """Stable descending sort; ``perm[k]`` is the original index of ``sorted[k]``."""
    perm = sorted(range(len(seq)), key=lambda i: -seq[i])
    return [seq[i] for i in perm], perm


def sum_min(seq: Iterable[int], r: int) -> int:
    """Sum of ``min(s, r)`` over ``seq``."""
    if r < 1:
        raise ValueError("r must be positive")
    return sum(min(s, r) for s in seq)


def sum_min_table(seq: Sequence[int], n: int) -> list[int]:
    """``[sum_min(seq, r) for r in 1..n]`` in O(len(seq) + n).

    Uses the conjugate form: sum_min(seq, r) = sum_{j<=r} #{i : seq_i >= j}.
    """
    at_least = [0] * (n + 2)
    for s in seq:
        at_least[min(s, n)] += 1
    # suffix sums turn the histogram into counts of entries >= j
    for j in range(n - 1, 0, -1):
        at_least[j] += at_least[j + 1]
    return list(accumulate(at_least[1 : n + 1]))


def prefix_sums_desc(seq: Sequence[int]) -> list[int]:
    return list(accumulate(sorted(seq, reverse=True)))


def dominance_violations(
    family: str, demand_desc: Sequence[int], supply: Sequence[int], slack: int = 0
) -> list[Violation]:
    """Every prefix k with sum(demand_desc[:k]) > sum_min(supply, k) + slack."""
    rhs_table = sum_min_table(supply, len(demand_desc))
    out = []
    for k, (lhs, rhs) in enumerate(zip(accumulate(demand_desc), rhs_table), start=1):
        if lhs > rhs + slack:
            out.append(Violation(family, k, lhs, rhs + slack))
    return out
