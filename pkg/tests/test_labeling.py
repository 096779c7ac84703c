"""Tests for random and greedy labelings.

Soundness of the greedy search is checked with the brute-force distance
oracle.  The escalation test rests on an exhaustively verified fact:
no GF(4) labeling of the complete-graph base on 5 vertices keeps all
triangles and 4-cycles full rank (all 3^10 ratio classes fail), so a
search starting at degree 2 must succeed only after escalating to
GF(8).
"""

import math

import numpy as np
import pytest

from nbldpc.constructions import complete_graph_base, gallager_sample
from nbldpc.distance import (
    INFINITE_DISTANCE,
    brute_force_min_distance,
    min_distance_q,
    ultimate_distance,
)
from nbldpc.errors import (
    IncompleteCollection,
    LabelingFailure,
    ParameterDomain,
)
from nbldpc.galois import Field
from nbldpc.labeling import (
    LabelSearchConfig,
    expected_failure_probability,
    greedy_labeling,
    random_labeling,
)
from nbldpc.matrices import BaseMatrix, ParityCheckMatrix
from nbldpc.structure import enumerate_stopping_sets


# -- configuration ---------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ParameterDomain):
        LabelSearchConfig(target_distance=1)
    with pytest.raises(ParameterDomain):
        LabelSearchConfig(target_distance=3, max_column_retries=0)
    with pytest.raises(ParameterDomain):
        LabelSearchConfig(target_distance=3, max_restarts=0)


# -- random labeling -------------------------------------------------------------


def test_random_labeling_deterministic(example1_base):
    f = Field(3)
    a = random_labeling(example1_base, f, 99)
    b = random_labeling(example1_base, f, 99)
    c = random_labeling(example1_base, f, 100)
    assert a.entries == b.entries
    assert a.entries != c.entries


def test_random_labeling_binary_is_all_ones(example1_base):
    lab = random_labeling(example1_base, Field(1), 0)
    assert lab.entries == (1,) * example1_base.num_ones()


def test_random_labeling_histogram_uniform():
    B = BaseMatrix.from_dense(np.ones((10, 10), dtype=int))
    f = Field(3)
    rng = np.random.default_rng(8)
    counts = np.zeros(f.q, dtype=int)
    for _ in range(1000):
        lab = random_labeling(B, f, rng)
        for v in lab.entries:
            counts[v] += 1
    total = counts.sum()
    assert total == 100_000
    assert counts[0] == 0
    expected = total / (f.q - 1)
    sigma = math.sqrt(total * (1 / 7) * (6 / 7))
    for v in range(1, f.q):
        assert abs(counts[v] - expected) < 3 * sigma


# -- greedy labeling -------------------------------------------------------------


def k5_setup(target=5):
    B = complete_graph_base(5)
    coll = enumerate_stopping_sets(B, target)
    return B, coll


def test_greedy_rejects_binary_field():
    B, coll = k5_setup()
    with pytest.raises(ParameterDomain):
        greedy_labeling(B, Field(1), coll, LabelSearchConfig(5))


def test_greedy_requires_deep_complete_collection():
    B, coll = k5_setup()
    shallow = enumerate_stopping_sets(B, 2)
    with pytest.raises(IncompleteCollection):
        greedy_labeling(B, Field(3), shallow, LabelSearchConfig(5))
    coll.complete = False
    with pytest.raises(IncompleteCollection):
        greedy_labeling(B, Field(3), coll, LabelSearchConfig(5))


def test_greedy_zero_column_cannot_be_labeled():
    B = BaseMatrix.from_strings(["101", "001"])
    coll = enumerate_stopping_sets(B, 2)
    with pytest.raises(LabelingFailure):
        greedy_labeling(B, Field(3), coll, LabelSearchConfig(2))


def test_greedy_attains_target_on_k5_over_gf8():
    B, coll = k5_setup()
    stats = {}
    lab = greedy_labeling(B, Field(3), coll,
                          LabelSearchConfig(5, master_seed=1), stats)
    H = ParityCheckMatrix(B, lab)
    assert brute_force_min_distance(H, 5) == 5
    assert min_distance_q(H, coll, 5) == 5
    assert stats["restarts"] == 0


def test_greedy_is_deterministic():
    B, coll = k5_setup()
    cfg = LabelSearchConfig(5, master_seed=3)
    a = greedy_labeling(B, Field(3), coll, cfg)
    b = greedy_labeling(B, Field(3), coll, cfg)
    assert a.entries == b.entries


def test_greedy_target_two_needs_no_constraints():
    B, _ = k5_setup()
    coll = enumerate_stopping_sets(B, 1)
    stats = {}
    lab = greedy_labeling(B, Field(2), coll,
                          LabelSearchConfig(2, master_seed=0), stats)
    assert stats["column_attempts"] == B.n
    assert stats["column_accepts"] == B.n
    assert len(lab.entries) == B.num_ones()


def test_greedy_soundness_on_random_samples():
    rng = np.random.default_rng(17)
    for _ in range(6):
        B = gallager_sample(3, 2, 3, rng)
        rep = ultimate_distance(B)
        if rep.d_u == INFINITE_DISTANCE or rep.d_u < 3:
            continue
        target = min(rep.d_u, 4)
        coll = enumerate_stopping_sets(B, target - 1)
        lab = greedy_labeling(B, Field(4), coll,
                              LabelSearchConfig(target, master_seed=5))
        H = ParityCheckMatrix(B, lab)
        assert brute_force_min_distance(H, target - 1) == INFINITE_DISTANCE


def test_greedy_escalates_past_provably_small_alphabet():
    B, coll = k5_setup()
    cfg = LabelSearchConfig(5, master_seed=0, max_restarts=2,
                            max_column_retries=16, max_repair_steps=200,
                            escalate_alphabet=True)
    stats = {}
    lab = greedy_labeling(B, Field(2), coll, cfg, stats)
    assert stats["field_degree"] == 3
    assert lab.field.m == 3
    H = ParityCheckMatrix(B, lab)
    assert min_distance_q(H, coll, 5) == 5


def test_greedy_failure_reports_blocking_column():
    B, coll = k5_setup()
    cfg = LabelSearchConfig(5, master_seed=0, max_restarts=2,
                            max_column_retries=8, max_repair_steps=50)
    with pytest.raises(LabelingFailure) as err:
        greedy_labeling(B, Field(2), coll, cfg)
    assert 0 <= err.value.column < B.n
    assert not err.value.insufficient_alphabet


def test_greedy_acceptance_rate_meets_per_constraint_bound():
    B, coll = k5_setup()
    f = Field(3)
    c_max = max(
        sum(1 for w in (3, 4) for I in coll.sets(w) if I[-1] == t)
        for t in range(B.n))
    p_min = (1 - 1 / (f.q - 1)) ** c_max
    stats = {}
    for seed in range(40):
        greedy_labeling(B, f, coll, LabelSearchConfig(5, master_seed=seed),
                        stats)
    attempts, accepts = stats["column_attempts"], stats["column_accepts"]
    rate = accepts / attempts
    sigma = math.sqrt(p_min * (1 - p_min) / attempts)
    assert rate >= p_min - 3 * sigma


# -- failure-probability formula ---------------------------------------------------


def test_failure_probability_single_subset():
    assert expected_failure_probability(2, 2, 8) == pytest.approx(1 / 7)
    assert expected_failure_probability(1, 1, 5) == pytest.approx(1 / 4)


def test_failure_probability_vanishes_for_large_alphabet():
    assert expected_failure_probability(20, 4, 10**9) < 1e-5


def test_failure_probability_exponential_regime():
    # With N subsets and q - 1 = 2N, the failure probability approaches
    # 1 - exp(-1/2).
    n_subsets = 10_000
    p = expected_failure_probability(n_subsets + 1, 2, 2 * n_subsets + 1)
    assert abs(p - (1 - math.exp(-0.5))) < 1e-3


def test_failure_probability_monotone_in_column():
    vals = [expected_failure_probability(t, 3, 16) for t in range(3, 30)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_failure_probability_domain_errors():
    with pytest.raises(ParameterDomain):
        expected_failure_probability(5, 3, 2)
    with pytest.raises(ParameterDomain):
        expected_failure_probability(3, 5, 8)
