"""Base matrices, labelings, and exact linear algebra over GF(q).

A binary base matrix B marks the nonzero positions of the q-ary
parity-check matrix H; a labeling assigns a nonzero field element to
every one of B, giving H = {mu_ij * b_ij}.  Rows and columns of B are
stored as bitmasks, which the combinatorial search code relies on.

Column indices are 0-based throughout the Python API.  The text formats
(.bmat/.lab) and all CLI-facing reports use 1-based indices.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .galois import Field


class OpCounter:
    """Tally of field operations performed by a solve or decode call."""

    __slots__ = ("additions", "multiplications", "inversions")

    def __init__(self, additions: int = 0, multiplications: int = 0,
                 inversions: int = 0):
        self.additions = additions
        self.multiplications = multiplications
        self.inversions = inversions

    @property
    def total(self) -> int:
        return self.additions + self.multiplications + self.inversions

    def merge(self, other: "OpCounter") -> None:
        self.additions += other.additions
        self.multiplications += other.multiplications
        self.inversions += other.inversions

    def as_dict(self) -> dict[str, int]:
        return {
            "additions": self.additions,
            "multiplications": self.multiplications,
            "inversions": self.inversions,
            "total": self.total,
        }

    def copy(self) -> "OpCounter":
        return OpCounter(self.additions, self.multiplications, self.inversions)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OpCounter)
            and self.additions == other.additions
            and self.multiplications == other.multiplications
            and self.inversions == other.inversions
        )

    def __repr__(self) -> str:
        return (f"OpCounter(additions={self.additions}, "
                f"multiplications={self.multiplications}, "
                f"inversions={self.inversions})")


class BaseMatrix:
    """Immutable binary r x n matrix stored as row bitmasks.

    Bit j of ``rows[i]`` is entry (i, j).  Column masks (bit i of
    ``col_masks[j]`` is entry (i, j)) are precomputed because the
    stopping-set search works on columns.
    """

    __slots__ = ("r", "n", "rows", "col_masks")

    def __init__(self, rows: Sequence[int], n: int):
        rows = tuple(int(m) for m in rows)
        if n < 0:
            raise DimensionMismatch("negative column count")
        for mask in rows:
            if mask < 0 or mask >> n:
                raise DimensionMismatch("row mask wider than n")
        self.r = len(rows)
        self.n = n
        self.rows = rows
        cols = []
        for j in range(n):
            mask = 0
            for i, row in enumerate(rows):
                if row >> j & 1:
                    mask |= 1 << i
            cols.append(mask)
        self.col_masks = tuple(cols)

    @classmethod
    def from_dense(cls, array) -> "BaseMatrix":
        """Build from any 2-D array-like of 0/1 entries."""
        arr = np.asarray(array, dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionMismatch("expected a 2-D array")
        if not np.isin(arr, (0, 1)).all():
            raise DimensionMismatch("entries must be 0 or 1")
        rows = [int(sum(1 << j for j in np.flatnonzero(row))) for row in arr]
        return cls(rows, arr.shape[1])

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BaseMatrix":
        """Build from strings like '1000110010' (one per row)."""
        dense = [[int(ch) for ch in line] for line in lines]
        return cls.from_dense(dense)

    # -- accessors ----------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def row_support(self, i: int) -> tuple[int, ...]:
        return _bits(self.rows[i])

    def col_support(self, j: int) -> tuple[int, ...]:
        return _bits(self.col_masks[j])

    def row_weights(self) -> list[int]:
        return [m.bit_count() for m in self.rows]

    def column_weights(self) -> list[int]:
        return [m.bit_count() for m in self.col_masks]

    def nonzeros(self) -> Iterator[tuple[int, int]]:
        """Positions of ones in row-major order."""
        for i in range(self.r):
            for j in _bits(self.rows[i]):
                yield i, j

    def num_ones(self) -> int:
        return sum(m.bit_count() for m in self.rows)

    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.r, self.n), dtype=np.uint8)
        for i, j in self.nonzeros():
            arr[i, j] = 1
        return arr

    def regularity(self) -> tuple[int, int] | None:
        """(J, K) when all column weights equal J and row weights equal K."""
        cw = set(self.column_weights())
        rw = set(self.row_weights())
        if len(cw) == 1 and len(rw) == 1:
            return cw.pop(), rw.pop()
        return None

    # -- column-subset views --------------------------------------------------

    def _check_columns(self, I: Iterable[int]) -> tuple[int, ...]:
        cols = tuple(I)
        for j in cols:
            if not 0 <= j < self.n:
                raise IndexOutOfRange(f"column {j} outside 0..{self.n - 1}")
        if len(set(cols)) != len(cols):
            raise IndexOutOfRange("duplicate column index")
        return cols

    def submatrix(self, I: Iterable[int]) -> "BaseMatrix":
        """Columns of B in the order listed by I (row count unchanged)."""
        cols = self._check_columns(I)
        rows = []
        for row in self.rows:
            mask = 0
            for t, j in enumerate(cols):
                if row >> j & 1:
                    mask |= 1 << t
            rows.append(mask)
        return BaseMatrix(rows, len(cols))

    def active_rows(self, I: Iterable[int]) -> int:
        """Number of nonzero rows of the column-restricted submatrix B_I."""
        cols = self._check_columns(I)
        mask = 0
        for j in cols:
            mask |= self.col_masks[j]
        return mask.bit_count()

    def __eq__(self, other) -> bool:
        return (isinstance(other, BaseMatrix)
                and self.n == other.n and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"BaseMatrix(r={self.r}, n={self.n})"


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Labeling:
    """Nonzero field values for the ones of a base matrix, row-major."""

    field: Field
    entries: tuple[int, ...]

    def __post_init__(self):
        for v in self.entries:
            if not 0 < v < self.field.q:
                raise DimensionMismatch(f"label {v} outside 1..{self.field.q - 1}")


class ParityCheckMatrix:
    """q-ary parity-check matrix H = {mu_ij * b_ij} over GF(q)."""

    __slots__ = ("base", "labeling", "field", "row_cols", "row_vals",
                 "col_rows", "col_vals", "_dense")

    def __init__(self, base: BaseMatrix, labeling: Labeling):
        if len(labeling.entries) != base.num_ones():
            raise DimensionMismatch(
                f"labeling has {len(labeling.entries)} entries, "
                f"base has {base.num_ones()} ones"
            )
        self.base = base
        self.labeling = labeling
        self.field = labeling.field

        row_cols: list[tuple[int, ...]] = []
        row_vals: list[tuple[int, ...]] = []
        col_rows: list[list[int]] = [[] for _ in range(base.n)]
        col_vals: list[list[int]] = [[] for _ in range(base.n)]
        it = iter(labeling.entries)
        for i in range(base.r):
            cols = base.row_support(i)
            vals = tuple(next(it) for _ in cols)
            row_cols.append(cols)
            row_vals.append(vals)
            for j, v in zip(cols, vals):
                col_rows[j].append(i)
                col_vals[j].append(v)
        self.row_cols = tuple(row_cols)
        self.row_vals = tuple(row_vals)
        self.col_rows = tuple(tuple(x) for x in col_rows)
        self.col_vals = tuple(tuple(x) for x in col_vals)
        self._dense = None

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def n(self) -> int:
        return self.base.n

    def entry(self, i: int, j: int) -> int:
        try:
            t = self.row_cols[i].index(j)
        except ValueError:
            return 0
        return self.row_vals[i][t]

    def dense(self) -> list[list[int]]:
        """Dense copy as nested lists (cached master copy, do not mutate)."""
        if self._dense is None:
            rows = [[0] * self.n for _ in range(self.r)]
            for i in range(self.r):
                for j, v in zip(self.row_cols[i], self.row_vals[i]):
                    rows[i][j] = v
            self._dense = rows
        return self._dense

    def columns(self, I: Iterable[int]) -> list[list[int]]:
        """Dense r x |I| submatrix H_I with columns in the order of I."""
        cols = self.base._check_columns(I)
        dense = self.dense()
        return [[dense[i][j] for j in cols] for i in range(self.r)]

    def to_array(self) -> np.ndarray:
        return np.array(self.dense(), dtype=np.int32)

    def __repr__(self) -> str:
        return f"ParityCheckMatrix(r={self.r}, n={self.n}, q={self.field.q})"


# -- exact linear algebra -----------------------------------------------------


def row_reduce(f: Field, mat: list[list[int]], counter: OpCounter | None = None,
               limit_cols: int | None = None) -> tuple[int, list[int]]:
    """In-place forward elimination with first-nonzero pivoting.

    Proceeds column-by-column left to right (over the first ``limit_cols``
    columns when given), normalizing each pivot row.  Returns the rank and
    the pivot column list.  Field operations are tallied per performed
    add/mul/inv when a counter is supplied.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    span = ncols if limit_cols is None else limit_cols
    mul = f.mul
    add = f.add
    rank = 0
    pivot_cols: list[int] = []
    for col in range(span):
        pivot = -1
        for i in range(rank, nrows):
            if mat[i][col]:
                pivot = i
                break
        if pivot < 0:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        pval = prow[col]
        if pval != 1:
            pinv = f.inv(pval)
            for j in range(col, ncols):
                prow[j] = mul(pinv, prow[j])
            if counter is not None:
                counter.inversions += 1
                counter.multiplications += ncols - col
        for i in range(rank + 1, nrows):
            row = mat[i]
            factor = row[col]
            if factor:
                for j in range(col, ncols):
                    row[j] = add(row[j], mul(factor, prow[j]))
                if counter is not None:
                    counter.multiplications += ncols - col
                    counter.additions += ncols - col
        pivot_cols.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, pivot_cols


def rank_gfq(f: Field, mat, counter: OpCounter | None = None) -> int:
    """Rank over GF(q) of a dense matrix (any nested-sequence layout)."""
    work = [list(row) for row in mat]
    if not work or not work[0]:
        return 0
    rank, _ = row_reduce(f, work, counter)
    return rank


class SolveStatus(enum.Enum):
    UNIQUE = "unique"
    AMBIGUOUS = "ambiguous"
    INCONSISTENT = "inconsistent"


@dataclass
class SolveResult:
    status: SolveStatus
    values: tuple[int, ...] | None = None


def solve_erasures(f: Field, H: ParityCheckMatrix, I: Sequence[int],
                   syndrome: Sequence[int],
                   counter: OpCounter | None = None) -> SolveResult:
    """Solve H_I * c_I^T = syndrome for the erased symbols c_I.

    Returns the unique solution when rank(H_I) = |I|, reports ambiguity
    when the system is consistent but rank deficient, and inconsistency
    otherwise (possible only for externally supplied syndromes).
    """
    if len(syndrome) != H.r:
        raise DimensionMismatch(
            f"syndrome length {len(syndrome)} != r = {H.r}")
    cols = H.base._check_columns(I)
    nu = len(cols)
    aug = H.columns(cols)
    for i in range(H.r):
        aug[i] = aug[i] + [syndrome[i]]
    rank, pivot_cols = row_reduce(f, aug, counter, limit_cols=nu)
    for i in range(rank, H.r):
        if aug[i][nu]:
            return SolveResult(SolveStatus.INCONSISTENT)
    if rank < nu:
        return SolveResult(SolveStatus.AMBIGUOUS)
    # Back-substitution on the echelon form (pivots are normalized to 1).
    values = [0] * nu
    mul = f.mul
    add = f.add
    for i in range(rank - 1, -1, -1):
        col = pivot_cols[i]
        acc = aug[i][nu]
        row = aug[i]
        for j in range(col + 1, nu):
            if row[j]:
                acc = add(acc, mul(row[j], values[j]))
                if counter is not None:
                    counter.additions += 1
                    counter.multiplications += 1
        values[col] = acc
    return SolveResult(SolveStatus.UNIQUE, tuple(values))


# -- text formats -------------------------------------------------------------


def write_bmat(path, B: BaseMatrix) -> None:
    """Write the '.bmat' format: 'r n' then r lines of space-separated 0/1."""
    with open(path, "w") as fh:
        fh.write(f"{B.r} {B.n}\n")
        for i in range(B.r):
            fh.write(" ".join(str(B.entry(i, j)) for j in range(B.n)) + "\n")


def read_bmat(path) -> BaseMatrix:
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise DimensionMismatch(f"{path}: truncated .bmat header")
    r, n = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != r * n:
        raise DimensionMismatch(
            f"{path}: expected {r * n} entries, found {len(body)}")
    rows = []
    for i in range(r):
        mask = 0
        for j in range(n):
            v = body[i * n + j]
            if v == "1":
                mask |= 1 << j
            elif v != "0":
                raise DimensionMismatch(f"{path}: non-binary entry {v!r}")
        rows.append(mask)
    return BaseMatrix(rows, n)


def write_lab(path, B: BaseMatrix, labeling: Labeling) -> None:
    """Write the '.lab' format.

    Line 1 is 'm <modulus-hex>'; then one line 'i j value' per nonzero of
    B in row-major order, with 1-based i and j and decimal values.
    """
    f = labeling.field
    with open(path, "w") as fh:
        fh.write(f"{f.m} {f.modulus:x}\n")
        for (i, j), v in zip(B.nonzeros(), labeling.entries):
            fh.write(f"{i + 1} {j + 1} {v}\n")


def read_lab(path, B: BaseMatrix) -> Labeling:
    """Read a '.lab' file, validating positions against B."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DimensionMismatch(f"{path}: malformed .lab header")
        m, modulus = int(header[0]), int(header[1], 16)
        f = Field(m, modulus)
        entries = []
        positions = list(B.nonzeros())
        for lineno, line in enumerate(fh):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 3:
                raise DimensionMismatch(f"{path}: malformed line {lineno + 2}")
            i, j, v = int(parts[0]) - 1, int(parts[1]) - 1, int(parts[2])
            if len(entries) >= len(positions) or positions[len(entries)] != (i, j):
                raise DimensionMismatch(
                    f"{path}: line {lineno + 2} does not match the base "
                    f"matrix nonzeros in row-major order")
            entries.append(v)
    if len(entries) != len(positions):
        raise DimensionMismatch(f"{path}: expected {len(positions)} labels")
    return Labeling(f, tuple(entries))
