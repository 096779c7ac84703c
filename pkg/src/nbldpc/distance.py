"""Distance computation for labeled and unlabeled base matrices.

Two quantities are computed exactly:

* the ultimate distance d_u of a base matrix, the smallest size of a
  stopping set with fewer active rows than columns.  No labeling over
  any field can give the q-ary code a larger minimum distance, and some
  labeling attains it once the alphabet is large enough.
* the q-ary minimum distance d_q of a labeled matrix, the smallest
  weight of a dependent column set.  Supports of minimal dependent sets
  are stopping sets, so only stopping sets need rank checks.

A brute-force oracle over all column subsets and a fast GF(2) distance
for the base code itself round out the module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import BudgetExceeded, IncompleteCollection
from .matrices import BaseMatrix, ParityCheckMatrix, rank_gfq
from .structure import (
    DEFAULT_NODE_BUDGET,
    QCSymmetry,
    StoppingSetCollection,
    scan_stopping_sets,
)

__all__ = [
    "INFINITE_DISTANCE",
    "DistanceReport",
    "ultimate_distance",
    "min_distance_q",
    "brute_force_min_distance",
    "binary_min_distance",
]

#: Marker for "no dependent column set exists", comparable with integers.
INFINITE_DISTANCE = math.inf


@dataclass
class DistanceReport:
    """Distance summary for one base matrix or labeled code.

    ``witness`` is a stopping set of size d_u with d_u - 1 active rows,
    lexicographically smallest among those of minimum size.  The
    optional fields are filled in by callers that also know a labeling
    (d_q), the binary base-code distance (d_b), or the Tanner girth.
    """

    d_u: int | float
    witness: tuple[int, ...] | None
    d_q: int | None = None
    d_b: int | float | None = None
    g_b: int | None = None


class _WitnessFound(Exception):
    def __init__(self, cols: tuple[int, ...]):
        self.cols = cols


def _deficient_at(B: BaseMatrix, s: int, symmetry: QCSymmetry | None,
                  budget: int) -> tuple[int, ...] | None:
    """Lexicographically smallest deficient stopping set of size exactly s."""
    if symmetry is None:
        # Depth-first search emits sets in lexicographic order, so the
        # first deficient hit is the smallest; abort the scan there.
        def visit(cols: tuple[int, ...], mask: int) -> None:
            if len(cols) == s and mask.bit_count() < s:
                raise _WitnessFound(cols)

        try:
            scan_stopping_sets(B, s, visit, budget=budget)
        except _WitnessFound as hit:
            return hit.cols
        return None

    reps: set[tuple[int, ...]] = set()

    def visit(cols: tuple[int, ...], mask: int) -> None:
        if len(cols) == s and mask.bit_count() < s:
            reps.add(symmetry.canonical(cols))

    scan_stopping_sets(B, s, visit, symmetry=symmetry, budget=budget)
    if not reps:
        return None
    return min(min(symmetry.orbit(rep)) for rep in reps)


def ultimate_distance(B: BaseMatrix, *,
                      symmetry: QCSymmetry | None = None,
                      budget: int = DEFAULT_NODE_BUDGET,
                      s_max: int | None = None) -> DistanceReport:
    """Smallest stopping-set size with fewer active rows than columns.

    Searches by iterative deepening on the set size s, so each level
    pays a full scan but the first witness found settles d_u exactly.
    ``budget`` caps the search nodes of a single level.  With ``s_max``
    set, an unsuccessful search stops there and reports the lower bound
    d_u > s_max by raising BudgetExceeded with ``s_reached = s_max``.

    A matrix whose stopping sets all have enough active rows (the
    identity, for instance) supports only the zero code, reported as
    INFINITE_DISTANCE with no witness.
    """
    for j in range(B.n):
        if B.col_masks[j] == 0:
            return DistanceReport(1, (j,))
    top = B.n if s_max is None else min(s_max, B.n)
    for s in range(2, top + 1):
        try:
            witness = _deficient_at(B, s, symmetry, budget)
        except BudgetExceeded as exc:
            exc.s_reached = s - 1
            raise
        if witness is not None:
            return DistanceReport(s, witness)
    if top < B.n:
        raise BudgetExceeded(
            f"no deficient stopping set of size <= {top}; d_u > {top}",
            s_reached=top)
    return DistanceReport(INFINITE_DISTANCE, None)


def min_distance_q(H: ParityCheckMatrix, J: StoppingSetCollection,
                   d_u: int) -> int:
    """Minimum distance of the labeled code, given its stopping sets.

    Checks rank(H_I) for stored stopping sets I in order of increasing
    weight and returns the first weight where the rank falls short; if
    every stopping set up to d_u has full column rank, the ceiling d_u
    itself is the distance.
    """
    if J.w_max < d_u:
        raise IncompleteCollection(
            f"collection covers weights <= {J.w_max}, need {d_u}")
    if not J.complete:
        raise IncompleteCollection("collection was cut short by a budget")
    f = H.field
    for w in range(1, d_u + 1):
        for I in J.sets(w):
            if rank_gfq(f, H.columns(I)) < w:
                return w
    return d_u


def brute_force_min_distance(H: ParityCheckMatrix, w_cap: int,
                             budget: int = DEFAULT_NODE_BUDGET
                             ) -> int | float:
    """Smallest w <= w_cap with a dependent w-subset of columns of H.

    Plain rank checks over every column subset in lexicographic order;
    the independent cross-check for min_distance_q.  Returns
    INFINITE_DISTANCE when every subset up to w_cap is independent.
    """
    f = H.field
    checked = 0
    for w in range(1, min(w_cap, H.n) + 1):
        for I in itertools.combinations(range(H.n), w):
            checked += 1
            if checked > budget:
                raise BudgetExceeded(
                    f"subset budget {budget} exhausted at weight {w}",
                    s_reached=w - 1)
            if rank_gfq(f, H.columns(I)) < w:
                return w
    return INFINITE_DISTANCE


def binary_min_distance(B: BaseMatrix, w_cap: int | None = None
                        ) -> int | float:
    """Minimum distance of the binary code with parity-check matrix B.

    Exhaustive over column subsets, organized so the common small cases
    are cheap: duplicate column masks give weight 2, a pairwise XOR
    matching a third column gives weight 3, and colliding XORs of
    disjoint pairs give weight 4.  Larger weights fall back to direct
    subset sums.  Returns INFINITE_DISTANCE when nothing dependent is
    found up to w_cap.
    """
    n = B.n
    cap = n if w_cap is None else min(w_cap, n)
    masks = list(B.col_masks)
    if cap >= 1 and any(m == 0 for m in masks):
        return 1
    if cap >= 2 and len(set(masks)) < n:
        return 2
    if cap >= 3:
        mask_set = set(masks)
        for i, j in itertools.combinations(range(n), 2):
            if masks[i] ^ masks[j] in mask_set:
                return 3
    if cap >= 4:
        seen: set[int] = set()
        for i, j in itertools.combinations(range(n), 2):
            x = masks[i] ^ masks[j]
            if x in seen:
                return 4
            seen.add(x)
    for w in range(5, cap + 1):
        for I in itertools.combinations(range(n), w):
            x = 0
            for c in I:
                x ^= masks[c]
            if x == 0:
                return w
    return INFINITE_DISTANCE
