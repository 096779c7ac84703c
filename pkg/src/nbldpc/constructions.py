"""Base-matrix generators.

Four families are provided:

* quasi-cyclic stacks of circulants described by generator tuples,
* incidence matrices of complete graphs ``K_r`` (odd ``r``), which are a
  special case of the circulant form with weight-2 generators,
* complete-bipartite bases built from identity and cyclic-shift blocks,
* random samples from the regular ensemble built out of ``J`` strips,
  the first strip a row of ``K`` identities and the rest independent
  column permutations of it.

A Tanner-graph girth computation is included as shared plumbing: the
bipartite graph has one vertex per row and per column, an edge per
nonzero entry, and its girth is found by breadth-first search from
every vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import BadPosition, EvenR, OddR, ParameterDomain
from .matrices import BaseMatrix

__all__ = [
    "QCSpec",
    "RATE34_QC_SPECS",
    "qc_from_generators",
    "complete_graph_base",
    "complete_bipartite_base",
    "gallager_sample",
    "tanner_girth",
]


@dataclass(frozen=True)
class QCSpec:
    """Description of a row of circulants: block order and generators.

    Each generator tuple lists the 1-based positions of the ones in the
    first row of one circulant block.  Row t of a block is its first row
    cyclically shifted right by t - 1.
    """

    r: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 1:
            raise ParameterDomain(f"block order must be positive, got {self.r}")
        if not self.generators:
            raise BadPosition("at least one generator tuple is required")
        object.__setattr__(
            self, "generators",
            tuple(tuple(g) for g in self.generators))
        for gen in self.generators:
            if not gen:
                raise BadPosition("generator tuples must be nonempty")
            for p in gen:
                if not 1 <= p <= self.r:
                    raise BadPosition(
                        f"generator position {p} outside [1, {self.r}]")
            if len(set(gen)) != len(gen):
                raise BadPosition(f"repeated position in generator {gen}")

    @classmethod
    def parse(cls, text: str) -> "QCSpec":
        """Parse ``"r=9;(1,2,4),(1,2,5)"`` into a spec."""
        head, sep, tail = text.partition(";")
        if not sep or not head.strip().startswith("r="):
            raise BadPosition(f"expected 'r=<int>;(...),(...)', got {text!r}")
        r = int(head.strip()[2:])
        gens = []
        for part in tail.replace("(", " ").split(")"):
            part = part.strip().strip(",").strip()
            if part:
                gens.append(tuple(int(p) for p in part.split(",")))
        return cls(r, tuple(gens))


#: Generator catalog for the rate-3/4 quasi-cyclic family shipped with the
#: package, keyed by base-code length and column weight.
RATE34_QC_SPECS: dict[str, QCSpec] = {
    "n36j2": QCSpec(9, ((1, 2), (1, 3), (1, 4), (1, 5))),
    "n36j3": QCSpec(9, ((1, 2, 4), (1, 2, 5), (1, 2, 7), (1, 3, 6))),
    "n52j3": QCSpec(13, ((1, 2, 4), (1, 2, 6), (1, 3, 8), (1, 4, 8))),
    "n76j3": QCSpec(19, ((1, 2, 5), (1, 3, 10), (1, 6, 12), (1, 2, 4))),
}


def qc_from_generators(spec: QCSpec) -> BaseMatrix:
    """Stack the circulants of ``spec`` side by side.

    Generator position p of block i contributes a one at column
    i*r + ((p - 1 + t) mod r) of row t (0-based).
    """
    r = spec.r
    rows = []
    for t in range(r):
        mask = 0
        for i, gen in enumerate(spec.generators):
            base = i * r
            for p in gen:
                mask |= 1 << (base + (p - 1 + t) % r)
        rows.append(mask)
    return BaseMatrix(rows, r * len(spec.generators))


def complete_graph_base(r: int) -> BaseMatrix:
    """Incidence matrix of the complete graph ``K_r`` in circulant form.

    Columns have weight 2 and every unordered pair of rows supports
    exactly one column.  The circulant presentation uses (r-1)/2 blocks
    whose first rows have ones at positions 1 and i + 1.
    """
    if r % 2 == 0:
        raise EvenR(f"complete-graph base needs odd r, got {r}")
    if r < 3:
        raise ParameterDomain(f"complete-graph base needs r >= 3, got {r}")
    spec = QCSpec(r, tuple((1, i + 1) for i in range(1, (r - 1) // 2 + 1)))
    B = qc_from_generators(spec)
    assert B.n == comb(r, 2)
    return B


def complete_bipartite_base(r: int) -> BaseMatrix:
    """Incidence matrix of ``K_{r/2,r/2}`` as identity and shift blocks.

    With s = r/2, the top strip repeats the order-s identity s times and
    the bottom strip's block j is the j-th power of the cyclic shift, so
    each column pairs one top row with one bottom row and every such
    pair occurs exactly once.
    """
    if r % 2 == 1:
        raise OddR(f"complete-bipartite base needs even r, got {r}")
    if r < 4:
        raise ParameterDomain(f"complete-bipartite base needs r >= 4, got {r}")
    s = r // 2
    rows = []
    for t in range(s):
        mask = 0
        for j in range(s):
            mask |= 1 << (j * s + t)
        rows.append(mask)
    for t in range(s):
        mask = 0
        for j in range(s):
            mask |= 1 << (j * s + (t + j) % s)
        rows.append(mask)
    return BaseMatrix(rows, s * s)


def gallager_sample(M: int, J: int, K: int, seed) -> BaseMatrix:
    """Draw one matrix from the (J, K)-regular strip ensemble.

    The first strip is K identity matrices of order M side by side;
    strips 2..J apply independent uniform column permutations to it.
    ``seed`` may be an integer or a ``numpy.random.Generator``.
    """
    if M < 1:
        raise ParameterDomain(f"strip size must be >= 1, got {M}")
    if J < 2:
        raise ParameterDomain(f"column weight must be >= 2, got {J}")
    if K < 2:
        raise ParameterDomain(f"row weight must be >= 2, got {K}")
    rng = seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)
    n = M * K
    strip1 = [sum(1 << (j * M + t) for j in range(K)) for t in range(M)]
    rows = list(strip1)
    for _ in range(J - 1):
        perm = rng.permutation(n)
        for t in range(M):
            mask = 0
            for j in range(K):
                mask |= 1 << int(perm[j * M + t])
            rows.append(mask)
    return BaseMatrix(rows, n)


def tanner_girth(B: BaseMatrix) -> int | None:
    """Girth of the bipartite row/column graph, or None if acyclic.

    Breadth-first search from every vertex; a non-tree edge (a, b) seen
    from root v closes a cycle of length dist(a) + dist(b) + 1, and the
    minimum over all roots is exact because a search rooted on a
    shortest cycle discovers it at its true length.
    """
    nv = B.r + B.n
    adj: list[list[int]] = [[] for _ in range(nv)]
    for t in range(B.r):
        for c in B.row_support(t):
            adj[t].append(B.r + c)
            adj[B.r + c].append(t)
    best: int | None = None
    for root in range(nv):
        dist = [-1] * nv
        parent = [-1] * nv
        dist[root] = 0
        queue = deque([root])
        while queue:
            a = queue.popleft()
            if best is not None and 2 * dist[a] >= best:
                break
            for b in adj[a]:
                if dist[b] == -1:
                    dist[b] = dist[a] + 1
                    parent[b] = a
                    queue.append(b)
                elif parent[a] != b:
                    cyc = dist[a] + dist[b] + 1
                    if best is None or cyc < best:
                        best = cyc
        if best == 4:
            break
    return best
