"""Exhaustive ground truth and theorem cross-validation.

The oracle enumerates every valid pair of an interval pair, decides the
forcibly-bigraphic property directly, and checks each implication the
interval criteria promise against that ground truth.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import IntervalPair
from .enumeration import BudgetExceeded, enumerate_pairs
from .gale_ryser import is_bigraphic
from .interval_criteria import (
    NotApplicable,
    Witness,
    check_exact,
    check_existence,
    check_necessary,
    check_sufficient,
    make_witness,
)

__all__ = [
    "BudgetExceeded",
    "ForciblyVerdict",
    "ValidationRecord",
    "brute_forcibly",
    "enumerate_pairs",
    "gen_instance",
    "run_campaign",
    "validate",
]

FORCIBLY = "Forcibly"
VACUOUSLY_FORCIBLY = "VacuouslyForcibly"
NOT_FORCIBLY = "NotForcibly"

UNCONSTRAINED = "unconstrained"
EXACT_SUM = "exact-sum"
MODES = (UNCONSTRAINED, EXACT_SUM)


@dataclass(frozen=True)
class ForciblyVerdict:
    kind: str
    witness: Witness | None
    pairs_examined: int

    @property
    def forcibly(self) -> bool:
        return self.kind != NOT_FORCIBLY

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": self.witness.to_json() if self.witness else None,
            "pairs_examined": self.pairs_examined,
        }

    @classmethod
    def from_json(cls, doc: dict) -> ForciblyVerdict:
        w = doc["witness"]
        return cls(doc["kind"], Witness.from_json(w) if w else None, doc["pairs_examined"])


@dataclass
class _Scan:
    witness: Witness | None = None
    witness_position: int = 0
    any_bigraphic: bool = False
    examined: int = 0


def _scan(ip: IntervalPair, budget: int, want_bigraphic: bool) -> _Scan:
    # Stops at the first non-bigraphic pair, or once both kinds are seen when
    # the caller also needs to know whether a bigraphic pair exists.
    scan = _Scan()
    for pair in enumerate_pairs(ip, budget):
        scan.examined += 1
        if scan.witness is None:
            scan.witness = make_witness(pair, "brute-force")
            if scan.witness is not None:
                scan.witness_position = scan.examined
            else:
                scan.any_bigraphic = True
        elif not scan.any_bigraphic:
            scan.any_bigraphic = is_bigraphic(pair).holds
        if scan.witness is not None and (scan.any_bigraphic or not want_bigraphic):
            break
    return scan


def _verdict(scan: _Scan) -> ForciblyVerdict:
    if scan.witness is not None:
        return ForciblyVerdict(NOT_FORCIBLY, scan.witness, scan.witness_position)
    if scan.examined == 0:
        return ForciblyVerdict(VACUOUSLY_FORCIBLY, None, 0)
    return ForciblyVerdict(FORCIBLY, None, scan.examined)


def brute_forcibly(ip: IntervalPair, budget: int) -> ForciblyVerdict:
    """Decide forcibly-bigraphic by checking every valid pair.

    The witness, if any, is the lexicographically first non-bigraphic pair.
    """
    return _verdict(_scan(ip, budget, want_bigraphic=False))


@dataclass
class ValidationRecord:
    instance: IntervalPair
    predictions: dict[str, str] = field(default_factory=dict)
    ground_truth: ForciblyVerdict | None = None
    exists_bigraphic: bool | None = None
    findings: list[dict] = field(default_factory=list)
    partial: bool = False

    @property
    def vacuous(self) -> bool:
        return self.ground_truth is not None and self.ground_truth.kind == VACUOUSLY_FORCIBLY

    @property
    def vacuous_necessity_failure(self) -> bool:
        """Vacuous instance where (4)/(5) fail: excluded from the T1.4 check."""
        return self.vacuous and self.predictions.get("T1.4") == "Fails"

    def to_json(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "predictions": dict(self.predictions),
            "ground_truth": self.ground_truth.to_json() if self.ground_truth else None,
            "exists_bigraphic": self.exists_bigraphic,
            "findings": list(self.findings),
            "partial": self.partial,
        }


def predict(ip: IntervalPair) -> dict[str, str]:
    try:
        exact = check_exact(ip).verdict
    except NotApplicable:
        exact = "NotApplicable"
    return {
        "T1.2": check_existence(ip).verdict,
        "T1.3": check_sufficient(ip).verdict,
        "T1.4": check_necessary(ip).verdict,
        "T1.6": exact,
    }


def validate(ip: IntervalPair, budget: int) -> ValidationRecord:
    """Check every criterion's implication against brute-force ground truth.

    Tested: existence criterion <=> some valid pair is bigraphic; sufficient
    holds => forcibly; forcibly on a non-vacuous instance => necessary holds;
    exact (when applicable) <=> forcibly. The converse of the necessary
    condition is known to be false and is not tested.
    """
    record = ValidationRecord(ip, predict(ip))
    try:
        scan = _scan(ip, budget, want_bigraphic=True)
    except BudgetExceeded:
        record.partial = True
        return record
    truth = _verdict(scan)
    record.ground_truth = truth
    record.exists_bigraphic = scan.any_bigraphic
    p = record.predictions

    def finding(theorem: str, detail: str) -> None:
        record.findings.append({"theorem": theorem, "detail": detail, "instance": ip.to_json()})

    if (p["T1.2"] == "Holds") != scan.any_bigraphic:
        finding("T1.2", f"existence check {p['T1.2']} but bigraphic pair exists={scan.any_bigraphic}")
    if p["T1.3"] == "Holds" and not truth.forcibly:
        finding("T1.3", "sufficient condition holds on a non-forcibly instance")
    if truth.kind == FORCIBLY and p["T1.4"] == "Fails":
        finding("T1.4", "necessary condition fails on a forcibly instance")
    if p["T1.6"] != "NotApplicable" and (p["T1.6"] == "Holds") != truth.forcibly:
        finding("T1.6", f"exact check {p['T1.6']} but ground truth {truth.kind}")
    return record


def gen_instance(seed: int, m_max: int, n_max: int, deg_max: int, mode: str = UNCONSTRAINED) -> IntervalPair:
    """Deterministic random interval pair.

    Each slot draws (lo, hi) uniformly from all pairs 0 <= lo <= hi <= deg_max.
    In exact-sum mode intervals collapse to points whose side totals are
    balanced, the only shape satisfying the exact check's hypotheses.
    """
    if min(m_max, n_max, deg_max) < 1:
        raise ValueError("m_max, n_max and deg_max must be positive")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    m = rng.randint(1, m_max)
    n = rng.randint(1, n_max)
    choices = [(lo, hi) for hi in range(deg_max + 1) for lo in range(hi + 1)]
    L1 = [rng.choice(choices) for _ in range(m)]
    L2 = [rng.choice(choices) for _ in range(n)]
    if mode == EXACT_SUM:
        x = [rng.randint(lo, hi) for lo, hi in L1]
        y = [rng.randint(lo, hi) for lo, hi in L2]
        while sum(x) != sum(y):
            small, large = (x, y) if sum(x) < sum(y) else (y, x)
            room = [i for i, v in enumerate(small) if v < deg_max]
            if room:
                small[rng.choice(room)] += 1
            else:
                large[rng.choice([i for i, v in enumerate(large) if v > 0])] -= 1
        L1 = [(v, v) for v in x]
        L2 = [(v, v) for v in y]
    return IntervalPair.of(L1, L2)


def _campaign_item(args: tuple) -> dict:
    seed, m_max, n_max, deg_max, mode, budget = args
    ip = gen_instance(seed, m_max, n_max, deg_max, mode)
    record = validate(ip, budget)
    truth = record.ground_truth
    return {
        "seed": seed,
        "instance": ip.to_json(),
        "status": "budget-exceeded" if record.partial else "ok",
        "kind": truth.kind if truth else None,
        "pairs_examined": truth.pairs_examined if truth else None,
        "predictions": record.predictions,
        "vacuous_necessity_failure": record.vacuous_necessity_failure,
        "findings": record.findings,
    }


def run_campaign(
    seed: int,
    count: int,
    m_max: int,
    n_max: int,
    deg_max: int,
    mode: str = UNCONSTRAINED,
    budget: int = 10**7,
    workers: int = 1,
) -> Iterator[dict]:
    """Validate ``count`` generated instances with seeds seed, seed+1, ...

    Summaries come back in seed order whatever the worker count.
    """
    jobs = [((seed + i) & 0xFFFFFFFFFFFFFFFF, m_max, n_max, deg_max, mode, budget) for i in range(count)]
    if workers <= 1:
        yield from map(_campaign_item, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_campaign_item, jobs, chunksize=max(1, count // (workers * 8)))


def digest(summaries: Iterable[dict]) -> dict:
    kinds = {FORCIBLY: 0, VACUOUSLY_FORCIBLY: 0, NOT_FORCIBLY: 0}
    out = {"instances": 0, "budget_exceeded": 0, "vacuous_necessity_failures": 0, "kinds": kinds, "findings": []}
    for s in summaries:
        out["instances"] += 1
        if s["status"] != "ok":
            out["budget_exceeded"] += 1
            continue
        kinds[s["kind"]] += 1
        out["vacuous_necessity_failures"] += s["vacuous_necessity_failure"]
        out["findings"] += [{**f, "seed": s["seed"]} for f in s["findings"]]
    return out
