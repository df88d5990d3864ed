"""Expanders of any dimension N from the (N,1) irrep of S_{N+1}.

The irrep sits inside the defining permutation representation on
``C^{N+1}`` as the complement of the uniform vector. A Householder
reflection ``H`` swaps ``e_{N+1}`` with the uniform vector, so
``r(pi) = T H P_pi H T^T`` restricted to the first N coordinates is the
irrep, where ``T`` truncates the last coordinate. Neither ``H`` nor any
permutation matrix is ever formed; applying ``r(pi)`` costs O(N).
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .channel import SpectralReport, channel_from_unitaries, deflated_channel_map
from .groups import DEFAULT_CAP, GeneratorSet, Symmetric
from .spectral import MAX_ITER, NormEstimate, SEEDS, power_iteration
from .walk import build_walk, classical_lambda2

LEAK_TOL = 1e-8
STANDARD_N_CAP = 2048


class OracleError(ArithmeticError):
    """The embedded subspace leaked: some generator is not a bijection."""


class PermutationOracle:
    """Generators ``pi_j`` of S_{N+1} given pointwise by ``rule(j, x)``.

    Points are 1-based, ``x in 1..N+1``. Each generator is tabulated once on
    first use, after which applying it costs one gather.
    """

    def __init__(self, N: int, degree: int, rule: Callable[[int, int], int]):
        if N < 1:
            raise ValueError(f"N must be positive, got {N}")
        self.N = N
        self.degree = degree
        self.rule = rule
        self._tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def __call__(self, j: int, x: int) -> int:
        return self.rule(j, x)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]]) -> "PermutationOracle":
        """From one-line permutations of ``1..N+1``."""
        arrays = [np.asarray(p, dtype=np.int64) for p in perms]
        if not arrays:
            raise ValueError("need at least one generator")
        size = len(arrays[0])
        if any(len(a) != size for a in arrays):
            raise ValueError("generators act on different point sets")
        oracle = cls(size - 1, len(arrays), lambda j, x: int(arrays[j][x - 1]))
        for j, a in enumerate(arrays):
            oracle._store(j, a - 1)
        return oracle

    @classmethod
    def from_generator_set(cls, gens: GeneratorSet) -> "PermutationOracle":
        if not isinstance(gens.group, Symmetric):
            raise ValueError(f"need generators in a symmetric group, got {gens.group}")
        return cls.from_permutations([g.payload for g in gens])

    @classmethod
    def random(cls, N: int, degree: int, seed: int) -> "PermutationOracle":
        rng = np.random.default_rng(seed)
        return cls.from_permutations([rng.permutation(N + 1) + 1 for _ in range(degree)])

    def _store(self, j, forward):
        inv = np.empty_like(forward)
        inv[forward] = np.arange(len(forward))
        self._tables[j] = (forward, inv)

    def _table(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        if not 0 <= j < self.degree:
            raise IndexError(f"generator index {j} out of range 0..{self.degree - 1}")
        if j not in self._tables:
            forward = np.fromiter(
                (self.rule(j, x) - 1 for x in range(1, self.N + 2)), dtype=np.int64, count=self.N + 1
            )
            in_range = forward.min() >= 0 and forward.max() <= self.N
            if not in_range or np.bincount(forward, minlength=self.N + 1).max() != 1:
                raise OracleError(f"generator {j} is not a bijection of 1..{self.N + 1}")
            inv = np.empty_like(forward)
            inv[forward] = np.arange(self.N + 1)
            self._tables[j] = (forward, inv)
        return self._tables[j]

    def permutation(self, j: int) -> np.ndarray:
        """Zero-based array ``p`` with ``p[x] = pi_j(x + 1) - 1``."""
        return self._table(j)[0]

    def generator_set(self) -> GeneratorSet:
        group = Symmetric(self.N + 1)
        return GeneratorSet(
            group, tuple(group.element(self.permutation(j) + 1) for j in range(self.degree))
        )


def defining_action(oracle: PermutationOracle, j: int, v: np.ndarray) -> np.ndarray:
    """``r_def(pi_j) |x> = |pi_j(x)>`` along axis 0."""
    v = np.asarray(v)
    p = oracle.permutation(j)
    if v.shape[0] != len(p):
        raise ValueError(f"vector has length {v.shape[0]}, expected {len(p)}")
    w = np.zeros_like(v)
    w[p] = v
    return w


def _householder_vector(N: int) -> tuple[np.ndarray, float]:
    w = np.full(N + 1, -1.0 / math.sqrt(N + 1))
    w[N] += 1.0
    return w, float(w @ w)


def embedding_unitary_apply(N: int, v: np.ndarray) -> np.ndarray:
    """Householder map sending ``e_{N+1}`` to the uniform vector, along axis 0."""
    v = np.asarray(v)
    w, ww = _householder_vector(N)
    coeff = np.tensordot(w, v, axes=(0, 0)) * (2.0 / ww)
    return v - np.multiply.outer(w, coeff)


def _check_leak(last: np.ndarray, scale: float = 1.0):
    leak = float(np.max(np.abs(last), initial=0.0))
    if leak > LEAK_TOL * max(scale, 1.0):
        raise OracleError(
            f"embedded subspace leaked by {leak:.3g}; a generator is probably not a bijection"
        )
    return leak


def standard_rep_apply(
    oracle: PermutationOracle, j: int, u: np.ndarray, transpose: bool = False
) -> np.ndarray:
    """``r_{(N,1)}(pi_j) u`` (or its transpose) along axis 0 in O(N) per column."""
    u = np.asarray(u)
    N = oracle.N
    if u.shape[0] != N:
        raise ValueError(f"vector has length {u.shape[0]}, expected {N}")
    padded = np.concatenate([u, np.zeros((1,) + u.shape[1:], dtype=u.dtype)])
    x = embedding_unitary_apply(N, padded)
    forward, inv = oracle._table(j)
    x = x[forward] if transpose else x[inv]
    x = embedding_unitary_apply(N, x)
    _check_leak(x[N], float(np.max(np.abs(u), initial=0.0)))
    return x[:N]


def standard_rep_matrix(oracle: PermutationOracle, j: int) -> np.ndarray:
    return standard_rep_apply(oracle, j, np.eye(oracle.N))


class _BatchedConjugation:
    """``X -> mean_j R_j X R_j^T`` over all generators.

    ``H`` is shared, so ``mean_j H P_j Z P_j^T H = H (mean_j P_j Z P_j^T) H``
    with ``Z = H X_pad H``: one two-sided reflection per side and a double
    gather per generator.
    """

    def __init__(self, oracle: PermutationOracle, gens: Sequence[int]):
        self.N = oracle.N
        tables = [oracle._table(j) for j in gens]
        self.forward = [t[0] for t in tables]
        self.inverse = [t[1] for t in tables]
        self.w, ww = _householder_vector(self.N)
        self.scale = 2.0 / ww

    def _reflect(self, z):
        z = z - np.outer(self.w, (self.w @ z) * self.scale)
        return z - np.outer((z @ self.w) * self.scale, self.w)

    def conjugate(self, x: np.ndarray, adjoint: bool = False) -> np.ndarray:
        # P_j Z P_j^T gathers rows and columns with the inverse table; P_j^T Z P_j with forward
        N = self.N
        z = np.zeros((N + 1, N + 1), dtype=x.dtype)
        z[:N, :N] = x
        z = self._reflect(z)
        acc = np.zeros_like(z)
        for p in self.forward if adjoint else self.inverse:
            acc += z[np.ix_(p, p)]
        acc = self._reflect(acc / len(self.forward))
        scale = float(np.max(np.abs(x), initial=0.0))
        _check_leak(acc[N], scale)
        _check_leak(acc[:, N], scale)
        return acc[:N, :N]


def standard_channel_apply(
    oracle: PermutationOracle, rho: np.ndarray, gens: Sequence[int] | None = None
) -> np.ndarray:
    gens = range(oracle.degree) if gens is None else gens
    return _BatchedConjugation(oracle, list(gens)).conjugate(np.asarray(rho))


def standard_channel_lambda2(
    oracle: PermutationOracle,
    gens: Sequence[int] | None = None,
    tol: float = 1e-12,
    max_iter: int = MAX_ITER,
    seeds: int = SEEDS,
    seed: int = 0,
    n_cap: int = STANDARD_N_CAP,
) -> NormEstimate:
    """Second singular value of the standard-rep channel, matrix-free.

    The iterate is a dense real N x N matrix; each step costs O(D N^2).
    """
    if oracle.N < 2:
        raise ValueError("the standard-representation construction needs N >= 2")
    if oracle.N > n_cap:
        raise ValueError(f"N = {oracle.N} exceeds the iterate cap {n_cap}")
    gens = list(range(oracle.degree)) if gens is None else list(gens)
    batch = _BatchedConjugation(oracle, gens)
    op = deflated_channel_map(
        oracle.N,
        lambda x: batch.conjugate(x),
        lambda x: batch.conjugate(x, adjoint=True),
        dtype=float,
    )
    return power_iteration(op, tol, max_iter, seeds, seed)


def standard_channel_dense(oracle: PermutationOracle, gens: Sequence[int] | None = None):
    """The same channel with explicit Kraus matrices, for small-N cross-checks."""
    gens = range(oracle.degree) if gens is None else gens
    return channel_from_unitaries([standard_rep_matrix(oracle, j) for j in gens])


def standard_gap_report(
    oracle: PermutationOracle,
    tol: float = 1e-6,
    gap_tol: float = 1e-6,
    max_iter: int = MAX_ITER,
    seeds: int = SEEDS,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
) -> SpectralReport:
    est = standard_channel_lambda2(oracle, tol=tol, max_iter=max_iter, seeds=seeds, seed=seed)
    order = math.factorial(oracle.N + 1)
    instance = {
        "group": {"family": "symmetric", "n": oracle.N + 1},
        "irrep": f"({oracle.N},1)",
        "dimension": oracle.N,
        "degree": oracle.degree,
    }
    notes = [] if est.converged else ["power iteration did not converge"]
    if order <= cap:
        gens = oracle.generator_set()
        instance["generators"] = gens.labels()
        cl = classical_lambda2(build_walk(gens.group, gens, cap), seed=seed)
        holds = bool(est.value <= cl + gap_tol)
    else:
        cl, holds = None, None
        notes.append(f"classical side omitted: group not enumerable ({oracle.N + 1}! > cap {cap})")
    return SpectralReport(
        classical_lambda2=cl,
        quantum_lambda2=est.value,
        inequality_holds=holds,
        method="iterative",
        tolerance=gap_tol,
        iterations=est.iterations,
        converged=est.converged,
        instance=instance,
        notes=notes,
    )
