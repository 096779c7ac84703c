"""Shared fixtures: the worked 5x10 example and its GF(8) labeling."""
from __future__ import annotations

import pytest

from nbldpc.galois import Field
from nbldpc.matrices import BaseMatrix, Labeling, ParityCheckMatrix

# 5x10 base matrix of the worked example (biadjacency matrix of K_5).
EXAMPLE1_B_ROWS = [
    "1000110010",
    "1100001001",
    "0110010100",
    "0011001010",
    "0001100101",
]

# The GF(8) labeling printed next to it (modulus x^3 + x + 1).
EXAMPLE1_H_DENSE = [
    [1, 0, 0, 0, 5, 1, 0, 0, 1, 0],
    [5, 1, 0, 0, 0, 0, 1, 0, 0, 1],
    [0, 5, 1, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 5, 1, 0, 0, 2, 0, 3, 0],
    [0, 0, 0, 5, 1, 0, 0, 1, 0, 7],
]


@pytest.fixture(scope="session")
def gf8() -> Field:
    return Field(3)


@pytest.fixture(scope="session")
def example1_base() -> BaseMatrix:
    return BaseMatrix.from_strings(EXAMPLE1_B_ROWS)


@pytest.fixture(scope="session")
def example1_code(example1_base, gf8) -> ParityCheckMatrix:
    entries = tuple(
        EXAMPLE1_H_DENSE[i][j] for i, j in example1_base.nonzeros()
    )
    return ParityCheckMatrix(example1_base, Labeling(gf8, entries))
