"""Interval-level criteria: existence of a realization, the sufficient and the
necessary conditions for being forcibly bigraphic, the exact characterization
under sum hypotheses, and construction of non-bigraphic witness pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    CheckReport,
    DegreePair,
    IntervalPair,
    ValidationError,
    dominance_violations,
    sort_desc_with_perm,
)
from .enumeration import enumerate_pairs
from .gale_ryser import is_bigraphic

DEFAULT_BUDGET = 10**7

CONSTRUCTION_TAGS = ("1.1", "1.2", "1.3-Qj", "2.2", "2.3", "2.4", "brute-force")


class NotApplicable(ValueError):
    """The sum hypotheses of the exact characterization do not hold."""

    def __init__(self, sums: dict[str, int]):
        super().__init__(f"sum hypotheses violated: {sums}")
        self.sums = sums


class PreconditionError(ValueError):
    pass


class NoneFound(RuntimeError):
    """No non-bigraphic valid pair exists although the necessary condition fails."""

    def __init__(self, record: dict):
        super().__init__(f"no witness found: {record}")
        self.record = record


@dataclass(frozen=True)
class Witness:
    pair: DegreePair
    failing_r: int
    construction_tag: str

    def validate(self, ip: IntervalPair) -> None:
        if not ip.contains(self.pair):
            raise AssertionError(f"witness {self.pair} is not a valid pair of {ip}")
        if is_bigraphic(self.pair).holds:
            raise AssertionError(f"witness {self.pair} is bigraphic")

    def to_json(self) -> dict:
        return {**self.pair.to_json(), "failing_r": self.failing_r, "construction_tag": self.construction_tag}

    @classmethod
    def from_json(cls, doc: dict) -> Witness:
        return cls(DegreePair(doc["P"], doc["Q"]), doc["failing_r"], doc["construction_tag"])


def make_witness(pair: DegreePair, tag: str) -> Witness | None:
    """Wrap ``pair`` as a witness if it fails Gale-Ryser, else None."""
    report = is_bigraphic(pair)
    if report.holds:
        return None
    failing = [v.index for v in report.violations if v.family == "(1)"]
    return Witness(pair, failing[0] if failing else 0, tag)


def _family(name: str, values: Sequence[int], supply: Sequence[int], slack: int = 0):
    ordered, perm = sort_desc_with_perm(values)
    return dominance_violations(name, ordered, supply, slack), tuple(perm)


def check_existence(ip: IntervalPair) -> CheckReport:
    """Whether some bipartite graph has degrees inside the intervals."""
    first, perm_c = _family("T1.2-first", ip.c, ip.b)
    second, perm_a = _family("T1.2-second", ip.a, ip.d)
    return CheckReport(tuple(first + second), {"c": perm_c, "a": perm_a})


def check_sufficient(ip: IntervalPair) -> CheckReport:
    """Conditions (2) and (3): upper bounds of each side dominated by the
    lower bounds of the other. Holding implies forcibly bigraphic."""
    two, perm_b = _family("(2)", ip.b, ip.c)
    three, perm_d = _family("(3)", ip.d, ip.a)
    return CheckReport(tuple(two + three), {"b": perm_b, "d": perm_d})


def check_necessary(ip: IntervalPair) -> CheckReport:
    """Conditions (4) and (5): (2)/(3) relaxed by the gap between total upper
    bounds on one side and total lower bounds on the other."""
    four, perm_b = _family("(4)", ip.b, ip.c, abs(sum(ip.b) - sum(ip.c)))
    five, perm_d = _family("(5)", ip.d, ip.a, abs(sum(ip.d) - sum(ip.a)))
    return CheckReport(tuple(four + five), {"b": perm_b, "d": perm_d})


def check_exact(ip: IntervalPair) -> CheckReport:
    """Exact forcibly-bigraphic test, valid when sum(d) == sum(a) and sum(c) == sum(b).

    Those hypotheses force a == b and c == d slotwise, which the report
    records as ``degenerate_forced``.
    """
    sums = {"sum_a": sum(ip.a), "sum_b": sum(ip.b), "sum_c": sum(ip.c), "sum_d": sum(ip.d)}
    if sums["sum_d"] != sums["sum_a"] or sums["sum_c"] != sums["sum_b"]:
        raise NotApplicable(sums)
    base = check_sufficient(ip)
    degenerate = ip.a == ip.b and ip.c == ip.d
    return CheckReport(base.violations, base.sort_permutations, degenerate)


def shave(d_desc: Sequence[int], deficiency: int) -> list[int] | None:
    """Remove ``deficiency`` units from a nonincreasing sequence level by level.

    Each round lowers every positive entry by one; the last partial round
    lowers only the trailing positive entries. The result has the shape
    (d_1-(j-1), ..., d_{x-1}-(j-1), d_x-j, ..., d_y-j, 0, ..., 0).
    Returns None if the sequence holds fewer than ``deficiency`` units.
    """
    if deficiency > sum(d_desc):
        return None
    if deficiency <= 0:
        return list(d_desc)
    # removed(j) = sum_min(d, j) is the amount taken by j full rounds
    low, high = 0, max(d_desc)
    while low < high:
        mid = (low + high + 1) // 2
        if sum(min(v, mid) for v in d_desc) <= deficiency:
            low = mid
        else:
            high = mid - 1
    rounds = low
    q = [max(v - rounds, 0) for v in d_desc]
    left = deficiency - sum(min(v, rounds) for v in d_desc)
    positive = sum(1 for v in q if v > 0)
    for i in range(positive - left, positive):
        q[i] -= 1
    return q


def _proof_candidates(
    lo_own: Sequence[int], hi_other: Sequence[int], r: int
) -> Iterator[tuple[str, list[int], list[int]]]:
    """Candidate pairs from the constructive necessity argument.

    ``lo_own`` are the lower bounds of the side whose conjugate sums appear on
    the right, ``hi_other`` the upper bounds of the side being summed, ``r`` a
    failing prefix. Yields (tag, own_side, other_side) in input coordinates.
    """
    m, n = len(lo_own), len(hi_other)
    a_desc, perm_a = sort_desc_with_perm(lo_own)
    d_desc, perm_d = sort_desc_with_perm(hi_other)
    t = sum(hi_other) - sum(lo_own)
    late = r >= m

    def unsort(values, perm):
        out = [0] * len(values)
        for k, v in zip(perm, values):
            out[k] = v
        return out

    if 0 <= t <= m:
        own = [v + 1 if i < t else v for i, v in enumerate(a_desc)]
        yield "1.1", unsort(own, perm_a), unsort(d_desc, perm_d)
    if m < t <= m + n:
        own = [v + 1 for v in a_desc]
        cut = m + n - t
        other = [v - 1 if i >= cut else v for i, v in enumerate(d_desc)]
        tag = ("2.2" if t <= m + n - r else "2.3") if late else "1.2"
        yield tag, unsort(own, perm_a), unsort(other, perm_d)
    if t > 0:
        other = shave(d_desc, t)
        if other is not None:
            yield ("2.4" if late else "1.3-Qj"), unsort(a_desc, perm_a), unsort(other, perm_d)


def witness_candidates(ip: IntervalPair, report: CheckReport) -> Iterator[tuple[str, DegreePair]]:
    """Proof candidates for each failing family, (5) side first; improper ones included."""
    first_fail = {}
    for v in report.violations:
        first_fail.setdefault(v.family, v.index)
    generated = []
    if "(5)" in first_fail:
        generated += [(tag, p, q) for tag, p, q in _proof_candidates(ip.a, ip.d, first_fail["(5)"])]
    if "(4)" in first_fail:
        generated += [(tag, p, q) for tag, q, p in _proof_candidates(ip.c, ip.b, first_fail["(4)"])]
    for tag, p, q in generated:
        try:
            yield tag, DegreePair(p, q)
        except ValidationError:
            # negative or over-cap entries: certainly outside the intervals
            continue


def necessity_witness(ip: IntervalPair, budget: int = DEFAULT_BUDGET) -> Witness:
    """A valid pair that is not bigraphic, for an instance failing (4) or (5).

    Tries the constructive candidates first, skipping any that leave the
    intervals, then falls back to the lexicographically first non-bigraphic
    valid pair. The returned witness is revalidated against ``ip``.
    """
    report = check_necessary(ip)
    if report.holds:
        raise PreconditionError("necessary condition holds; no witness is implied")
    for tag, pair in witness_candidates(ip, report):
        if not ip.contains(pair):
            continue
        witness = make_witness(pair, tag)
        if witness is not None:
            witness.validate(ip)
            return witness
    examined = 0
    for pair in enumerate_pairs(ip, budget):
        examined += 1
        witness = make_witness(pair, "brute-force")
        if witness is not None:
            witness.validate(ip)
            return witness
    raise NoneFound(
        {
            "finding": "T1.4-contrapositive" if examined else "vacuous-instance",
            "instance": ip.to_json(),
            "pairs_examined": examined,
            "violations": [v.to_json() for v in report.violations],
        }
    )
