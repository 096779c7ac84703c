"""Combinatorial structure of base matrices.

Proper/weakly-proper tests reduce to bipartite matching; stopping sets
(column sets whose restricted submatrix has no weight-1 rows, exactly
the sets on which peeling stalls) are tested directly and enumerated by
a pruned depth-first search over column subsets in lexicographic order.

For quasi-cyclic bases a simultaneous cyclic shift of the rows and of
the column positions inside each circulant block maps stopping sets to
stopping sets.  The enumerator can exploit this: every orbit contains a
set whose smallest column sits at local position 0 of its block, so the
first chosen column is restricted to block starts and each orbit is
recovered from one representative.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import BadShape, BudgetExceeded, DimensionMismatch, NotSquare
from .matrices import BaseMatrix

DEFAULT_NODE_BUDGET = 10**9


# -- bipartite matching ---------------------------------------------------------


def _as_base(A) -> BaseMatrix:
    if isinstance(A, BaseMatrix):
        return A
    if isinstance(A, Sequence) and A and all(isinstance(row, str) for row in A):
        return BaseMatrix.from_strings(A)
    return BaseMatrix.from_dense(A)


def _max_column_matching(B: BaseMatrix) -> tuple[list[int], list[int]]:
    """Kuhn's augmenting-path matching of columns to rows.

    Returns (col_match, row_match) with -1 for unmatched vertices.  Sizes
    here are tiny (at most ~100), so the simple O(V*E) version is fine.
    """
    col_match = [-1] * B.n
    row_match = [-1] * B.r

    def try_augment(j: int, seen: list[bool]) -> bool:
        for i in B.col_support(j):
            if not seen[i]:
                seen[i] = True
                if row_match[i] < 0 or try_augment(row_match[i], seen):
                    row_match[i] = j
                    col_match[j] = i
                    return True
        return False

    for j in range(B.n):
        try_augment(j, [False] * B.r)
    return col_match, row_match


def is_proper_square(A) -> bool:
    """True iff the square binary matrix has an all-ones diagonal under
    some row permutation (equivalently, a perfect matching exists)."""
    B = _as_base(A)
    if B.r != B.n:
        raise NotSquare(f"matrix is {B.r}x{B.n}")
    col_match, _ = _max_column_matching(B)
    return all(m >= 0 for m in col_match)


def is_weakly_proper(A) -> bool:
    """True iff some order-s row-submatrix of the r x s input is proper,
    i.e. a matching saturates all s columns (needs r >= s)."""
    B = _as_base(A)
    if B.r < B.n:
        raise BadShape(f"matrix is {B.r}x{B.n}, needs r >= s")
    col_match, _ = _max_column_matching(B)
    return all(m >= 0 for m in col_match)


def hall_witness(A) -> tuple[int, ...] | None:
    """A column set V with fewer neighbouring rows than |V|, if one exists.

    Returns None when every column can be matched (no Hall violation).
    The witness comes from the alternating forest of an unmatched column,
    so it always verifies |Gamma(V)| = |V| - 1.
    """
    B = _as_base(A)
    col_match, row_match = _max_column_matching(B)
    try:
        start = col_match.index(-1)
    except ValueError:
        return None
    cols = {start}
    rows: set[int] = set()
    frontier = [start]
    while frontier:
        j = frontier.pop()
        for i in B.col_support(j):
            if i not in rows:
                rows.add(i)
                partner = row_match[i]
                if partner >= 0 and partner not in cols:
                    cols.add(partner)
                    frontier.append(partner)
    assert len(rows) < len(cols)
    return tuple(sorted(cols))


# -- stopping sets ---------------------------------------------------------------


def is_stopping_set(B: BaseMatrix, I: Iterable[int]) -> bool:
    """True iff every row of B_I has weight 0 or >= 2."""
    cols = B._check_columns(I)
    if not cols:
        raise ValueError("stopping sets are nonempty by definition")
    once = 0
    more = 0
    for j in cols:
        m = B.col_masks[j]
        more |= once & m
        once = (once & ~m) | (m & ~once & ~more)
    return once == 0


@dataclass(frozen=True)
class QCSymmetry:
    """Quasi-cyclic descriptor: circulant order and number of blocks.

    Applies to bases made of a single strip of circulants, so the row
    count equals ``block_size``.
    """

    block_size: int
    blocks: int

    def shift(self, cols: Sequence[int], sigma: int) -> tuple[int, ...]:
        """Image of a column set under the simultaneous shift by sigma."""
        R = self.block_size
        return tuple(sorted((j // R) * R + (j % R + sigma) % R for j in cols))

    def orbit(self, cols: Sequence[int]) -> list[tuple[int, ...]]:
        """All distinct shifts of a column set."""
        return sorted({self.shift(cols, s) for s in range(self.block_size)})

    def canonical(self, cols: Sequence[int]) -> tuple[int, ...]:
        """Lexicographically smallest member of the orbit."""
        return min(self.shift(cols, s) for s in range(self.block_size))

    def validate(self, B: BaseMatrix) -> None:
        R = self.block_size
        if B.r != R or B.n != R * self.blocks:
            raise DimensionMismatch(
                f"descriptor ({R}, {self.blocks}) does not fit a "
                f"{B.r}x{B.n} matrix")
        for i in range(B.r):
            for b in range(self.blocks):
                for l in range(R):
                    if (B.entry(i, b * R + l)
                            != B.entry((i + 1) % R, b * R + (l + 1) % R)):
                        raise DimensionMismatch(
                            "matrix is not invariant under the cyclic shift")


def scan_stopping_sets(B: BaseMatrix, w_max: int,
                       visit: Callable[[tuple[int, ...], int], None],
                       symmetry: QCSymmetry | None = None,
                       budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Depth-first search over column subsets, calling ``visit`` on each
    stopping set of size <= w_max.

    ``visit`` receives the column tuple (ascending) and the bitmask of
    active rows.  With a QC descriptor, only sets whose smallest column
    has local position 0 are generated; each orbit is seen at least once
    (callers canonicalize).  Returns the number of visited partial sets;
    raises BudgetExceeded beyond ``budget``.
    """
    if w_max < 1 or w_max > B.n:
        raise ValueError(f"w_max {w_max} outside 1..{B.n}")
    if symmetry is not None:
        symmetry.validate(B)
        first_cols: Sequence[int] = [b * symmetry.block_size
                                     for b in range(symmetry.blocks)]
    else:
        first_cols = range(B.n)

    n = B.n
    col_masks = B.col_masks
    full = (1 << n) - 1
    cmax = max((m.bit_count() for m in col_masks), default=1) or 1
    row_col_mask = [0] * B.r
    for j, m in enumerate(col_masks):
        mm = m
        while mm:
            low = mm & -mm
            row_col_mask[low.bit_length() - 1] |= 1 << j
            mm ^= low
    visited = 0
    cols: list[int] = []

    def rec(once: int, more: int, last: int) -> None:
        nonlocal visited
        depth = len(cols)
        if once == 0:
            visit(tuple(cols), more)
        if depth == w_max:
            return
        rem = w_max - depth
        gt = full & ~((1 << (last + 1)) - 1)
        if once:
            if once.bit_count() > cmax * rem:
                return
            cand = gt
            m = once
            while m:
                low = m & -m
                sup = row_col_mask[low.bit_length() - 1] & gt
                if not sup:
                    return
                if rem == 1:
                    cand &= sup
                m ^= low
        else:
            cand = gt
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            visited += 1
            if visited > budget:
                raise BudgetExceeded(
                    f"node budget {budget} exhausted at depth {depth + 1}")
            cm = col_masks[j]
            cols.append(j)
            rec((once & ~cm) | (cm & ~once & ~more), more | (once & cm), j)
            cols.pop()

    for j0 in first_cols:
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"node budget {budget} exhausted at depth 1")
        cm = col_masks[j0]
        cols.append(j0)
        rec(cm, 0, j0)
        cols.pop()
    return visited


class StoppingSetCollection:
    """Stopping sets of a base matrix grouped by weight.

    ``sets(w)`` lists the sets of weight w sorted lexicographically;
    ``active`` maps each set to its number of active rows, from which
    the deficiency flag a(J) < |J| follows.  ``complete`` is False when
    a node budget cut the enumeration short.
    """

    def __init__(self, w_max: int, complete: bool = True):
        self.w_max = w_max
        self.complete = complete
        self._by_weight: dict[int, list[tuple[int, ...]]] = {}
        self.active: dict[tuple[int, ...], int] = {}

    def add(self, cols: tuple[int, ...], active: int) -> None:
        self._by_weight.setdefault(len(cols), []).append(cols)
        self.active[cols] = active

    def finalize(self) -> None:
        for sets in self._by_weight.values():
            sets.sort()

    def weights(self) -> list[int]:
        return sorted(self._by_weight)

    def sets(self, w: int) -> list[tuple[int, ...]]:
        return self._by_weight.get(w, [])

    def all_sets(self):
        for w in self.weights():
            yield from self._by_weight[w]

    def is_deficient(self, cols: tuple[int, ...]) -> bool:
        return self.active[cols] < len(cols)

    def deficient_sets(self, w: int) -> list[tuple[int, ...]]:
        return [J for J in self.sets(w) if self.is_deficient(J)]

    def counts(self) -> dict[int, int]:
        return {w: len(self._by_weight[w]) for w in self.weights()}

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_weight.values())


def enumerate_stopping_sets(B: BaseMatrix, w_max: int,
                            symmetry: QCSymmetry | None = None,
                            budget: int = DEFAULT_NODE_BUDGET
                            ) -> StoppingSetCollection:
    """All stopping sets of B of size <= w_max.

    With a QC descriptor the search runs over orbit representatives and
    the orbits are expanded afterwards, so the result is identical to
    the plain enumeration.  On budget exhaustion the partial collection
    is attached to the raised BudgetExceeded and flagged incomplete.
    """
    coll = StoppingSetCollection(w_max)
    if symmetry is None:
        try:
            scan_stopping_sets(
                B, w_max,
                lambda cols, mask: coll.add(cols, mask.bit_count()),
                budget=budget)
        except BudgetExceeded as exc:
            coll.complete = False
            coll.finalize()
            exc.partial = coll
            raise
        coll.finalize()
        return coll

    reps: dict[tuple[int, ...], int] = {}

    def record(cols: tuple[int, ...], active_mask: int) -> None:
        reps[symmetry.canonical(cols)] = active_mask.bit_count()

    try:
        scan_stopping_sets(B, w_max, record, symmetry=symmetry, budget=budget)
    except BudgetExceeded as exc:
        coll.complete = False
        _expand_orbits(coll, reps, symmetry)
        exc.partial = coll
        raise
    _expand_orbits(coll, reps, symmetry)
    return coll


def _expand_orbits(coll: StoppingSetCollection,
                   reps: dict[tuple[int, ...], int],
                   symmetry: QCSymmetry) -> None:
    for rep, active in reps.items():
        for member in symmetry.orbit(rep):
            coll.add(member, active)
    coll.finalize()


# -- .ss dump format ----------------------------------------------------------------


def write_ss(path, coll: StoppingSetCollection) -> None:
    """One line per set: 'w a j1 ... jw' with 1-based column indices."""
    with open(path, "w") as fh:
        for w in coll.weights():
            for cols in coll.sets(w):
                a = coll.active[cols]
                fh.write(f"{w} {a} " + " ".join(str(j + 1) for j in cols) + "\n")


def read_ss(path) -> StoppingSetCollection:
    w_max = 0
    rows: list[tuple[tuple[int, ...], int]] = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            w, a = int(parts[0]), int(parts[1])
            cols = tuple(int(t) - 1 for t in parts[2:])
            if len(cols) != w:
                raise DimensionMismatch(f"{path}: weight field mismatch")
            rows.append((cols, a))
            w_max = max(w_max, w)
    coll = StoppingSetCollection(w_max)
    for cols, a in rows:
        coll.add(cols, a)
    coll.finalize()
    return coll
