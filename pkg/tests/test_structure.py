"""Tests for matching-based properness and stopping-set machinery."""
from __future__ import annotations

import itertools
import random

import pytest

from nbldpc.errors import BadShape, BudgetExceeded, DimensionMismatch, NotSquare
from nbldpc.matrices import BaseMatrix
from nbldpc.structure import (
    QCSymmetry,
    enumerate_stopping_sets,
    hall_witness,
    is_proper_square,
    is_stopping_set,
    is_weakly_proper,
    read_ss,
    scan_stopping_sets,
    write_ss,
)

# The square matrix shown improper in the properness discussion.
IMPROPER_4X4 = ["0110", "0110", "1011", "0110"]

# K_5 incidence matrix written in block-circulant column order; a row and
# column permutation of the worked example's B.  Its first five columns
# leave row 5 empty, which kills weak properness of the 5x5 block.
B1_ROWS = [
    "1001010100",
    "1100100001",
    "0111000010",
    "0010111000",
    "0000001111",
]


def permanent_positive(rows: list[str] | BaseMatrix) -> bool:
    """Permutation-sum oracle, independent of the matching code."""
    if isinstance(rows, BaseMatrix):
        mat = rows.to_array()
    else:
        mat = [[int(ch) for ch in line] for line in rows]
    s = len(mat)
    return any(
        all(mat[p[t]][t] for t in range(s))
        for p in itertools.permutations(range(s))
    )


def random_square(rng: random.Random, s: int, density: float) -> BaseMatrix:
    dense = [[1 if rng.random() < density else 0 for _ in range(s)]
             for _ in range(s)]
    return BaseMatrix.from_dense(dense)


# -- proper / weakly proper ------------------------------------------------------


@pytest.mark.parametrize("s", [1, 2, 4, 7])
def test_identity_is_proper(s):
    eye = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
    assert is_proper_square(eye)


def test_paper_improper_example():
    assert not is_proper_square(IMPROPER_4X4)
    assert permanent_positive(IMPROPER_4X4) is False


def test_all_ones_2x2_is_proper():
    assert is_proper_square(["11", "11"])


def test_not_square_rejected():
    with pytest.raises(NotSquare):
        is_proper_square([[1, 0, 1], [0, 1, 0]])


@pytest.mark.parametrize("density", [0.2, 0.4, 0.7])
def test_proper_matches_permanent_oracle(density):
    rng = random.Random(int(density * 100))
    for _ in range(60):
        s = rng.randint(1, 5)
        A = random_square(rng, s, density)
        assert is_proper_square(A) == permanent_positive(A)


def test_hall_witness_none_when_proper():
    assert hall_witness(["10", "01"]) is None


def test_hall_witness_verified():
    rng = random.Random(404)
    found = 0
    for _ in range(200):
        s = rng.randint(2, 7)
        A = random_square(rng, s, 0.3)
        if is_proper_square(A):
            continue
        V = hall_witness(A)
        found += 1
        neighbours = set()
        for j in V:
            neighbours.update(A.col_support(j))
        assert len(neighbours) < len(V)
    assert found > 20


def test_weakly_proper_identity_rows():
    A = [[1, 0], [0, 1], [1, 1]]
    assert is_weakly_proper(A)


def test_weakly_proper_zero_column():
    assert not is_weakly_proper([[1, 0], [1, 0], [1, 0]])


def test_weakly_proper_bad_shape():
    with pytest.raises(BadShape):
        is_weakly_proper([[1, 0, 1], [0, 1, 0]])


def test_b1_left_block_not_weakly_proper():
    B1 = BaseMatrix.from_strings(B1_ROWS)
    block = B1.submatrix(range(5))
    assert not is_weakly_proper(block)
    assert not permanent_positive(block)
    # The blocking structure is the zero row: only 4 active rows serve 5 columns.
    assert B1.active_rows(range(5)) == 4
    witness = hall_witness(block)
    assert witness is not None


def test_b1_is_complete_graph_incidence():
    B1 = BaseMatrix.from_strings(B1_ROWS)
    pairs = {B1.col_support(j) for j in range(10)}
    assert pairs == set(itertools.combinations(range(5), 2))


def test_weakly_proper_matches_row_subset_oracle():
    rng = random.Random(77)
    for _ in range(40):
        s = rng.randint(1, 4)
        r = rng.randint(s, 6)
        dense = [[1 if rng.random() < 0.45 else 0 for _ in range(s)]
                 for _ in range(r)]
        A = BaseMatrix.from_dense(dense)
        oracle = any(
            permanent_positive(BaseMatrix([A.rows[i] for i in rows_subset], s))
            for rows_subset in itertools.combinations(range(r), s)
        )
        assert is_weakly_proper(A) == oracle


# -- stopping sets ----------------------------------------------------------------


def test_is_stopping_set_examples(example1_base):
    B = example1_base
    assert not is_stopping_set(B, [0, 1])
    assert is_stopping_set(B, [0, 1, 5])
    with pytest.raises(ValueError):
        is_stopping_set(B, [])


def test_codeword_supports_are_stopping_sets(example1_base):
    B = example1_base
    # Enumerate the binary kernel of B by brute force.
    found = 0
    for word in range(1, 1 << B.n):
        if all((B.rows[i] & word).bit_count() % 2 == 0 for i in range(B.r)):
            support = [j for j in range(B.n) if word >> j & 1]
            assert is_stopping_set(B, support)
            found += 1
    assert found > 0


def test_enumerate_identity_like_is_empty():
    B = BaseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    coll = enumerate_stopping_sets(B, 3)
    assert len(coll) == 0


def test_enumerate_example1_small_weights(example1_base):
    coll = enumerate_stopping_sets(example1_base, 3)
    assert (0, 1, 5) in coll.sets(3)
    assert coll.sets(2) == []


def test_enumerate_matches_exhaustive_scan(example1_base):
    B = example1_base
    coll = enumerate_stopping_sets(B, 5)
    for w in range(2, 6):
        brute = [I for I in itertools.combinations(range(B.n), w)
                 if is_stopping_set(B, I)]
        assert coll.sets(w) == brute
        for I in brute:
            assert coll.active[I] == B.active_rows(I)


def test_enumerate_finds_deficient_witness(example1_base):
    coll = enumerate_stopping_sets(example1_base, 5)
    deficient = coll.deficient_sets(5)
    assert deficient
    assert all(coll.active[J] == 4 for J in deficient)
    assert not any(coll.deficient_sets(w) for w in (2, 3, 4))


def test_minimality_property(example1_base):
    B = example1_base
    coll = enumerate_stopping_sets(B, 5)
    for J in coll.all_sets():
        has_smaller = any(
            set(sub) < set(J) for w in range(2, len(J)) for sub in coll.sets(w)
        )
        if not has_smaller:
            # J is minimal: no proper nonempty subset is a stopping set.
            assert not any(
                is_stopping_set(B, sub)
                for size in range(1, len(J))
                for sub in itertools.combinations(J, size)
            )


# -- QC symmetry --------------------------------------------------------------------


def test_qc_descriptor_validates(example1_base):
    sym = QCSymmetry(block_size=5, blocks=2)
    sym.validate(example1_base)  # K_5 in circulant order is QC
    with pytest.raises(DimensionMismatch):
        QCSymmetry(block_size=2, blocks=5).validate(example1_base)


def test_qc_shift_maps_stopping_sets(example1_base):
    B = example1_base
    sym = QCSymmetry(5, 2)
    coll = enumerate_stopping_sets(B, 4)
    for J in coll.all_sets():
        for sigma in range(5):
            assert is_stopping_set(B, sym.shift(J, sigma))


def test_qc_enumeration_matches_plain(example1_base):
    B = example1_base
    sym = QCSymmetry(5, 2)
    plain = enumerate_stopping_sets(B, 5)
    qc = enumerate_stopping_sets(B, 5, symmetry=sym)
    assert plain.counts() == qc.counts()
    for w in plain.weights():
        assert plain.sets(w) == qc.sets(w)
        for J in plain.sets(w):
            assert plain.active[J] == qc.active[J]


def test_qc_orbit_and_canonical():
    sym = QCSymmetry(5, 2)
    orbit = sym.orbit((0, 6))
    assert len(orbit) == 5
    assert all(sym.canonical(member) == sym.canonical((0, 6))
               for member in orbit)


# -- budget and formats ----------------------------------------------------------------


def test_budget_exceeded(example1_base):
    with pytest.raises(BudgetExceeded) as info:
        enumerate_stopping_sets(example1_base, 5, budget=7)
    partial = info.value.partial
    assert partial is not None
    assert partial.complete is False


def test_scan_returns_visit_count(example1_base):
    # K_5 has no repeated column pairs, so at w_max = 2 the one-slot-left
    # candidate intersection empties out and only the 10 roots are visited.
    count = scan_stopping_sets(example1_base, 2, lambda cols, mask: None)
    assert count == 10


def test_ss_round_trip(tmp_path, example1_base):
    coll = enumerate_stopping_sets(example1_base, 4)
    path = tmp_path / "sets.ss"
    write_ss(path, coll)
    first = path.read_text().splitlines()[0].split()
    assert first[0] == "3"  # smallest stopping sets have weight 3
    assert first[2:] == ["1", "2", "6"]  # 1-based in the file
    back = read_ss(path)
    assert back.counts() == coll.counts()
    for w in coll.weights():
        assert back.sets(w) == coll.sets(w)
        for J in coll.sets(w):
            assert back.active[J] == coll.active[J]
