"""Largest singular values of explicit matrices and matrix-free linear maps.

Linear maps are carried as :class:`scipy.sparse.linalg.LinearOperator`
objects, which supply ``matvec`` and the adjoint ``rmatvec``.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, aslinearoperator

DENSE_CAP = 4096
POWER_TOL = 1e-12
MAX_ITER = 10_000
SEEDS = 3


class NormEstimate(NamedTuple):
    value: float
    converged: bool
    iterations: int


def linear_map(
    dim: int,
    matvec: Callable[[np.ndarray], np.ndarray],
    rmatvec: Callable[[np.ndarray], np.ndarray] | None = None,
    dtype=complex,
) -> LinearOperator:
    return LinearOperator((dim, dim), matvec=matvec, rmatvec=rmatvec, dtype=np.dtype(dtype))


def _check_unit(fixed: np.ndarray) -> np.ndarray:
    fixed = np.asarray(fixed).ravel()
    norm = np.linalg.norm(fixed)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"fixed vector must have unit norm, got {norm}")
    return fixed


def deflate(m, fixed: np.ndarray) -> LinearOperator:
    """The map ``v -> M v - <fixed|v> fixed``, with its adjoint."""
    fixed = _check_unit(fixed)
    op = aslinearoperator(m)
    dtype = np.result_type(op.dtype, fixed.dtype)

    def matvec(v):
        v = np.ravel(v)
        return op.matvec(v) - np.vdot(fixed, v) * fixed

    def rmatvec(v):
        v = np.ravel(v)
        return op.rmatvec(v) - np.vdot(fixed, v) * fixed

    return LinearOperator(op.shape, matvec=matvec, rmatvec=rmatvec, dtype=dtype)


def power_iteration(
    m: LinearOperator,
    tol: float = POWER_TOL,
    max_iter: int = MAX_ITER,
    seeds: int = SEEDS,
    seed: int = 0,
) -> NormEstimate:
    """Largest singular value by power iteration on ``M^dag M``.

    Each restart stops once the Rayleigh quotient ``|M v|^2`` changes by
    less than ``tol`` relative to its value. The returned value is the
    maximum over restarts; ``converged`` requires every restart to converge.
    Start vectors come from one generator stream, so the first k restarts
    are identical for any ``seeds >= k``.
    """
    rng = np.random.default_rng(seed)
    n = m.shape[1]
    is_complex = np.iscomplexobj(np.empty(0, dtype=m.dtype))
    best = 0.0
    all_converged = True
    total = 0
    for _ in range(max(1, seeds)):
        v = rng.standard_normal(n)
        if is_complex:
            v = v + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        rq_prev = None
        rq = 0.0
        converged = False
        for _ in range(max_iter):
            total += 1
            w = m.matvec(v)
            rq = float(np.vdot(w, w).real)
            if rq == 0.0:
                converged = True
                break
            if rq_prev is not None and abs(rq - rq_prev) <= tol * rq:
                converged = True
                break
            rq_prev = rq
            x = m.rmatvec(w)
            nx = np.linalg.norm(x)
            if nx == 0.0:
                converged = True
                break
            v = x / nx
        best = max(best, rq)
        all_converged &= converged
    return NormEstimate(float(np.sqrt(best)), all_converged, total)


def operator_norm(
    m,
    tol: float = POWER_TOL,
    max_iter: int = MAX_ITER,
    seeds: int = SEEDS,
    seed: int = 0,
) -> NormEstimate:
    """Largest singular value: dense SVD for arrays, power iteration otherwise."""
    if isinstance(m, np.ndarray):
        return NormEstimate(float(np.linalg.norm(m, 2)) if m.size else 0.0, True, 0)
    return power_iteration(aslinearoperator(m), tol, max_iter, seeds, seed)


def dense_lambda2(matrix, fixed: np.ndarray, cap: int = DENSE_CAP) -> float:
    """Largest singular value of ``matrix - |fixed><fixed|`` by full SVD."""
    fixed = _check_unit(fixed)
    if matrix.shape[0] > cap:
        raise ValueError(f"dense SVD limited to dimension {cap}, got {matrix.shape[0]}")
    dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    deflated = dense - np.outer(fixed, fixed.conj())
    return float(np.linalg.svd(deflated, compute_uv=False)[0])
