"""The Cayley random walk ``W = (1/|Gamma|) sum_gamma sum_g |gamma g><g|``."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .groups import DEFAULT_CAP, GeneratorSet, GroupElement, GroupError, GroupSpec, enumerate_group
from .spectral import deflate, dense_lambda2, operator_norm

WALK_DENSE_CAP = 2000


@dataclass(frozen=True)
class WalkOperator:
    """Column-stochastic sparse transition matrix over canonically ordered elements."""

    matrix: sp.csr_matrix
    elements: tuple[GroupElement, ...]
    degree: int
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g.payload: i for i, g in enumerate(self.elements)})

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def index(self, g: GroupElement) -> int:
        return self._index[g.payload]

    def column(self, j: int) -> list[tuple[int, float]]:
        col = self.matrix[:, j].tocoo()
        return sorted(zip(col.row.tolist(), col.data.tolist()))


def uniform_state(dim: int) -> np.ndarray:
    return np.full(dim, 1.0 / np.sqrt(dim))


def build_walk(group: GroupSpec, gens: GeneratorSet, cap: int = DEFAULT_CAP) -> WalkOperator:
    if gens.group != group:
        raise GroupError(f"generators live in {gens.group}, not {group}")
    if len(gens) == 0:
        raise GroupError("generator set is empty")
    elements = enumerate_group(group, cap)
    index = {g.payload: i for i, g in enumerate(elements)}
    n = len(elements)
    degree = len(gens)
    rows = np.empty(n * degree, dtype=np.int64)
    cols = np.empty(n * degree, dtype=np.int64)
    k = 0
    for j, g in enumerate(elements):
        for gamma in gens:
            rows[k] = index[group._mul(gamma.payload, g.payload)]
            cols[k] = j
            k += 1
    data = np.full(n * degree, 1.0 / degree)
    # duplicate generators accumulate in the coo -> csr conversion
    mat = sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
    mat.sum_duplicates()
    mat.sort_indices()
    return WalkOperator(mat, tuple(elements), degree)


def classical_lambda2(
    walk: WalkOperator,
    dense_cap: int = WALK_DENSE_CAP,
    tol: float = 1e-12,
    max_iter: int = 10_000,
    seeds: int = 3,
    seed: int = 0,
) -> float:
    """Second singular value ``|| W - |u><u| ||_inf``.

    Full SVD up to ``dense_cap`` elements, restarted power iteration beyond.
    """
    u = uniform_state(walk.dim)
    if walk.dim <= dense_cap:
        return dense_lambda2(walk.matrix, u, cap=dense_cap)
    return operator_norm(deflate(walk.matrix, u), tol, max_iter, seeds, seed).value


def stationarity_residual(walk: WalkOperator) -> float:
    u = uniform_state(walk.dim)
    return float(np.linalg.norm(walk.matrix @ u - u))


def is_connected(walk: WalkOperator) -> bool:
    """Strong connectivity of the Cayley digraph (equivalently, Gamma generates G)."""
    n, _ = connected_components(walk.matrix, directed=True, connection="strong")
    return n == 1


def is_bipartite(walk: WalkOperator) -> bool:
    """Whether the underlying undirected Cayley graph admits a proper 2-colouring."""
    adj = (walk.matrix + walk.matrix.T).tocsr()
    colour = np.full(walk.dim, -1)
    for start in range(walk.dim):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj.indices[adj.indptr[x] : adj.indptr[x + 1]]:
                if colour[y] < 0:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True
