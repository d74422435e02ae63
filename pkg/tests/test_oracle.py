import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bigraphic import (
    BudgetExceeded,
    IntervalPair,
    NotApplicable,
    brute_forcibly,
    check_exact,
    enumerate_pairs,
    gen_instance,
    validate,
)
from bigraphic.oracle import EXACT_SUM, digest, run_campaign
from brute import composition_counts, forcibly_by_matrices, valid_pairs

CX1 = IntervalPair.of([[2, 3], [1, 2]], [[1, 2], [0, 1]])
CX2 = IntervalPair.of([[1, 3], [2, 3]], [[1, 2], [0, 2]])
EMPTY = IntervalPair.of([[0, 0]], [[1, 1]])

intervals = st.tuples(st.integers(0, 3), st.integers(0, 3)).map(sorted)
interval_pairs = st.builds(
    IntervalPair.of, st.lists(intervals, min_size=1, max_size=3), st.lists(intervals, min_size=1, max_size=3)
)


def as_tuples(ip, budget=10**6):
    return [(p.P, p.Q) for p in enumerate_pairs(ip, budget)]


def test_enumerate_examples():
    assert as_tuples(CX1) == [((2, 1), (2, 1))]
    assert as_tuples(CX2) == [((1, 2), (1, 2)), ((1, 2), (2, 1)), ((1, 3), (2, 2)), ((2, 2), (2, 2))]
    assert as_tuples(EMPTY) == []


@settings(max_examples=300)
@given(interval_pairs)
def test_enumeration_matches_cartesian_product(ip):
    got = as_tuples(ip)
    assert got == valid_pairs(ip.L1.items, ip.L2.items)
    assert len(set(got)) == len(got)
    pc, qc = composition_counts(ip.L1.items), composition_counts(ip.L2.items)
    assert len(got) == sum(x * y for x, y in zip(pc, qc))


def test_budget_exceeded():
    ip = IntervalPair.of([[0, 5]] * 4, [[0, 5]] * 4)
    with pytest.raises(BudgetExceeded) as info:
        list(enumerate_pairs(ip, 50))
    assert info.value.budget == 50
    with pytest.raises(ValueError):
        list(enumerate_pairs(ip, 0))


def test_brute_examples():
    v = brute_forcibly(CX1, 10**6)
    assert (v.kind, v.pairs_examined, v.witness) == ("Forcibly", 1, None)
    v = brute_forcibly(CX2, 10**6)
    assert v.kind == "NotForcibly"
    assert (v.witness.pair.P, v.witness.pair.Q, v.witness.failing_r) == ((1, 3), (2, 2), 2)
    v = brute_forcibly(EMPTY, 10**6)
    assert (v.kind, v.pairs_examined) == ("VacuouslyForcibly", 0)


@settings(max_examples=300)
@given(interval_pairs, st.randoms())
def test_brute_matches_matrix_oracle_and_permutations(ip, rnd):
    kind = brute_forcibly(ip, 10**6).kind
    assert kind == forcibly_by_matrices(ip.L1.items, ip.L2.items)
    L1, L2 = list(ip.L1.items), list(ip.L2.items)
    rnd.shuffle(L1)
    rnd.shuffle(L2)
    assert brute_forcibly(IntervalPair.of(L1, L2), 10**6).kind == kind


def test_validate_examples():
    for ip in (CX1, CX2):
        assert validate(ip, 10**6).findings == []
    r = validate(IntervalPair.of([[2, 2], [2, 2]], [[2, 2], [2, 2]]), 10**6)
    assert r.findings == [] and r.predictions["T1.6"] == "Holds" and r.ground_truth.kind == "Forcibly"
    r = validate(CX2, 10**6)
    assert r.predictions["T1.4"] == "Holds" and r.ground_truth.kind == "NotForcibly"


def test_validate_flags_vacuous_necessity_failure():
    r = validate(IntervalPair.of([[2, 2], [2, 2]], [[5, 5]]), 10**6)
    assert r.vacuous and r.vacuous_necessity_failure and r.findings == []


def test_validate_partial_on_budget():
    r = validate(IntervalPair.of([[0, 5]] * 4, [[0, 5]] * 4), 10)
    assert r.partial and r.ground_truth is None and r.findings == []


def test_gen_instance_deterministic():
    assert gen_instance(42, 4, 4, 5) == gen_instance(42, 4, 4, 5)
    assert any(gen_instance(s, 4, 4, 5) != gen_instance(42, 4, 4, 5) for s in range(5))


def test_gen_instance_stream_within_caps():
    for seed in range(10_000):
        ip = gen_instance(seed, 4, 4, 5)
        assert 1 <= ip.m <= 4 and 1 <= ip.n <= 4
        assert all(0 <= lo <= hi <= 5 for lo, hi in ip.L1.items + ip.L2.items)


def test_gen_instance_exact_mode_satisfies_hypotheses():
    for seed in range(500):
        ip = gen_instance(seed, 4, 4, 5, EXACT_SUM)
        check_exact(ip)


def test_gen_instance_unconstrained_sometimes_not_applicable():
    hits = 0
    for seed in range(50):
        try:
            check_exact(gen_instance(seed, 3, 3, 3))
        except NotApplicable:
            hits += 1
    assert hits > 0


def test_campaign_order_independent_of_workers():
    one = list(run_campaign(7, 60, 3, 3, 3, workers=1))
    four = list(run_campaign(7, 60, 3, 3, 3, workers=4))
    assert one == four
    assert [s["seed"] for s in one] == list(range(7, 67))
    d = digest(one)
    assert d["instances"] == 60 and d["findings"] == []


def _grid_chunk(L1s):
    iv = [(lo, hi) for hi in range(4) for lo in range(hi + 1)]
    seqs = [s for k in (1, 2, 3) for s in itertools.product(iv, repeat=k)]
    findings = vacuous_excluded = 0
    for L1 in L1s:
        for L2 in seqs:
            r = validate(IntervalPair.of(L1, L2), 10**7)
            findings += len(r.findings)
            vacuous_excluded += r.vacuous_necessity_failure
    return findings, vacuous_excluded


@pytest.mark.slow
def test_full_grid_three_by_three():
    from concurrent.futures import ProcessPoolExecutor

    iv = [(lo, hi) for hi in range(4) for lo in range(hi + 1)]
    seqs = [s for k in (1, 2, 3) for s in itertools.product(iv, repeat=k)]
    chunks = [seqs[i::64] for i in range(64)]
    with ProcessPoolExecutor() as pool:
        results = list(pool.map(_grid_chunk, chunks))
    assert sum(f for f, _ in results) == 0
