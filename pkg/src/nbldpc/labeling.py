"""Random and greedy labelings of a base matrix.

A labeling assigns a nonzero field element to every one of the base
matrix.  The greedy search labels columns left to right and accepts a
column's random draw only if every stopping set ending at that column
and smaller than the target distance keeps full column rank.  Success
certifies that the labeled code has minimum distance at least the
target; with the target set to the ultimate distance, the ceiling is
attained.

Pure column redraws are not always enough.  When the alphabet is tight,
a late column can face more constraints than there are label classes
(in a complete-graph base, the last edge closes every short cycle
through it), so every class is forbidden no matter how often it is
redrawn.  Each search pass therefore finishes with a bounded
min-conflicts repair: violated stopping sets are picked one at a time
and one of their columns is relabeled with the class that leaves the
fewest violations, with an occasional random kick to escape plateaus.
Restarts under derived seeds and optional escalation to the next field
degree sit on top, as before.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, expm1, log1p

import numpy as np

from .errors import IncompleteCollection, LabelingFailure, ParameterDomain
from .galois import Field
from .matrices import BaseMatrix, Labeling, rank_gfq
from .structure import StoppingSetCollection

__all__ = [
    "LabelSearchConfig",
    "random_labeling",
    "greedy_labeling",
    "expected_failure_probability",
]

MAX_FIELD_DEGREE = 16

#: Chance that a repair step takes a random class instead of the best one.
_WALK_PROBABILITY = 0.12

#: Candidate classes examined per repair step when the class space is larger.
_REPAIR_CANDIDATES = 48


@dataclass(frozen=True)
class LabelSearchConfig:
    """Knobs for the greedy search.

    ``target_distance`` is the rank requirement (usually d_u); columns
    get ``max_column_retries`` redraws during the greedy pass, the
    repair phase gets ``max_repair_steps`` relabelings, and the whole
    search restarts under the next seed derived from ``master_seed`` up
    to ``max_restarts`` times per field.  With ``escalate_alphabet``
    set, exhausted restarts move on to the next field degree instead of
    failing outright.
    """

    target_distance: int
    max_column_retries: int = 64
    master_seed: int = 0
    max_restarts: int = 32
    max_repair_steps: int = 5000
    escalate_alphabet: bool = False

    def __post_init__(self):
        if self.target_distance < 2:
            raise ParameterDomain(
                f"target distance must be >= 2, got {self.target_distance}")
        if self.max_column_retries < 1 or self.max_restarts < 1:
            raise ParameterDomain("retry and restart caps must be >= 1")
        if self.max_repair_steps < 0:
            raise ParameterDomain("repair step cap must be >= 0")


def random_labeling(B: BaseMatrix, f: Field, seed) -> Labeling:
    """Independent uniform nonzero labels for every one of B."""
    rng = seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)
    if f.q == 2:
        entries = (1,) * B.num_ones()
    else:
        entries = tuple(int(v) for v in rng.integers(1, f.q, B.num_ones()))
    return Labeling(f, entries)


def _labeling_from_columns(B: BaseMatrix, f: Field,
                           col_vals: list[list[int]]) -> Labeling:
    """Assemble the row-major entry tuple from per-column value lists."""
    entries = []
    for i in range(B.r):
        for j in B.row_support(i):
            entries.append(col_vals[j][B.col_support(j).index(i)])
    return Labeling(f, tuple(entries))


def greedy_labeling(B: BaseMatrix, f: Field, J: StoppingSetCollection,
                    cfg: LabelSearchConfig,
                    stats: dict | None = None) -> Labeling:
    """Column-by-column labeling keeping small stopping sets full rank.

    ``J`` must completely cover stopping-set weights up to
    ``cfg.target_distance - 1``.  Returns a Labeling whose code has
    minimum distance >= the target (over the escalated field when that
    mode kicked in); raises LabelingFailure with a blocking column
    otherwise.  ``stats``, when given, receives attempt counters and the
    successful restart's identification.
    """
    if f.q < 3:
        raise ParameterDomain("greedy labeling needs q >= 3")
    if J.w_max < cfg.target_distance - 1:
        raise IncompleteCollection(
            f"collection covers weights <= {J.w_max}, "
            f"need {cfg.target_distance - 1}")
    if not J.complete:
        raise IncompleteCollection("collection was cut short by a budget")
    if J.sets(1):
        raise LabelingFailure(J.sets(1)[0][0], 0, 0)

    constraints = [I for w in range(2, cfg.target_distance)
                   for I in J.sets(w)]
    if stats is not None:
        stats.setdefault("column_attempts", 0)
        stats.setdefault("column_accepts", 0)
        stats.setdefault("repair_steps", 0)

    degrees = range(f.m, MAX_FIELD_DEGREE + 1) if cfg.escalate_alphabet \
        else (f.m,)
    last_blocked = 0
    for m in degrees:
        field = f if m == f.m else Field(m)
        searcher = _Searcher(B, field, constraints, cfg, stats)
        for restart in range(cfg.max_restarts):
            rng = np.random.default_rng(
                np.random.SeedSequence(cfg.master_seed, spawn_key=(m, restart)))
            result = searcher.attempt(rng)
            if isinstance(result, int):
                last_blocked = result
                continue
            if stats is not None:
                stats["field_degree"] = m
                stats["restarts"] = restart
            return result
    raise LabelingFailure(last_blocked, cfg.max_column_retries,
                          cfg.max_restarts,
                          insufficient_alphabet=cfg.escalate_alphabet)


class _Searcher:
    """One field's worth of labeling attempts over a fixed constraint set."""

    def __init__(self, B: BaseMatrix, f: Field,
                 constraints: list[tuple[int, ...]],
                 cfg: LabelSearchConfig, stats: dict | None):
        self.B = B
        self.f = f
        self.cfg = cfg
        self.stats = stats
        self.constraints = constraints
        self.col_sup = [B.col_support(j) for j in range(B.n)]
        self.by_last: list[list[int]] = [[] for _ in range(B.n)]
        self.by_col: list[list[int]] = [[] for _ in range(B.n)]
        for k, I in enumerate(constraints):
            self.by_last[I[-1]].append(k)
            for j in I:
                self.by_col[j].append(k)
        self.col_vals: list[list[int]] = [[] for _ in range(B.n)]

    def _satisfied(self, k: int) -> bool:
        I = self.constraints[k]
        mat = []
        for i in range(self.B.r):
            row = []
            for j in I:
                sup = self.col_sup[j]
                row.append(self.col_vals[j][sup.index(i)] if i in sup else 0)
            mat.append(row)
        return rank_gfq(self.f, mat) == len(I)

    def attempt(self, rng: np.random.Generator) -> Labeling | int:
        """Greedy pass plus repair; a blocking column index on failure."""
        B, f, cfg = self.B, self.f, self.cfg
        for t in range(B.n):
            weight = len(self.col_sup[t])
            for _ in range(cfg.max_column_retries):
                self.col_vals[t] = [int(v)
                                    for v in rng.integers(1, f.q, weight)]
                if self.stats is not None:
                    self.stats["column_attempts"] += 1
                if all(self._satisfied(k) for k in self.by_last[t]):
                    if self.stats is not None:
                        self.stats["column_accepts"] += 1
                    break
            # An exhausted column keeps its last draw; repair handles it.
        bad = {k for k in range(len(self.constraints))
               if not self._satisfied(k)}
        if self._repair(bad, rng):
            return _labeling_from_columns(B, f, self.col_vals)
        worst = sorted(bad)[0]
        return self.constraints[worst][-1]

    def _candidate_classes(self, weight: int,
                           rng: np.random.Generator) -> list[list[int]]:
        """Label classes to try for a column, last entry pinned to 1.

        Scaling a column never changes a rank, so classes with a unit
        last entry cover all distinct behaviors.  Small spaces are
        swept exhaustively, large ones sampled.
        """
        q = self.f.q
        total = (q - 1) ** (weight - 1)
        if total <= _REPAIR_CANDIDATES:
            return [list(head) + [1] for head in
                    itertools.product(range(1, q), repeat=weight - 1)]
        picks = rng.integers(1, q, size=(_REPAIR_CANDIDATES, weight - 1))
        return [[int(v) for v in row] + [1] for row in picks]

    def _repair(self, bad: set[int], rng: np.random.Generator) -> bool:
        """Min-conflicts relabeling; True when all constraints hold."""
        cfg = self.cfg
        for _ in range(cfg.max_repair_steps):
            if not bad:
                return True
            if self.stats is not None:
                self.stats["repair_steps"] += 1
            k = sorted(bad)[rng.integers(len(bad))]
            I = self.constraints[k]
            j = I[rng.integers(len(I))]
            weight = len(self.col_sup[j])
            classes = self._candidate_classes(weight, rng)
            if rng.random() < _WALK_PROBABILITY:
                self.col_vals[j] = classes[rng.integers(len(classes))]
            else:
                best: list[list[int]] = []
                best_cnt = None
                for cand in classes:
                    self.col_vals[j] = cand
                    cnt = sum(1 for k2 in self.by_col[j]
                              if not self._satisfied(k2))
                    if best_cnt is None or cnt < best_cnt:
                        best, best_cnt = [cand], cnt
                    elif cnt == best_cnt:
                        best.append(cand)
                self.col_vals[j] = best[rng.integers(len(best))]
            for k2 in self.by_col[j]:
                if self._satisfied(k2):
                    bad.discard(k2)
                else:
                    bad.add(k2)
        return not bad


def expected_failure_probability(t: int, s: int, q: int) -> float:
    """Chance that a fresh random column t breaks some size-s constraint.

    Evaluates 1 - (1 - 1/(q-1))^N with N = C(t-1, s-1) subsets of the
    earlier columns, computed via expm1/log1p so tiny probabilities
    survive.  ``t`` counts columns from 1.
    """
    if q < 3:
        raise ParameterDomain(f"alphabet must satisfy q >= 3, got {q}")
    if not 1 <= s <= t:
        raise ParameterDomain(f"need 1 <= s <= t, got s={s}, t={t}")
    n_subsets = comb(t - 1, s - 1)
    return -expm1(n_subsets * log1p(-1.0 / (q - 1)))
