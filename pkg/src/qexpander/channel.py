"""Expander channels ``E(rho) = (1/|Gamma|) sum_g r(g) rho r(g)^dag`` and their gaps.

Vectorization stacks columns: ``vec(A X B) = (B^T kron A) vec(X)``. Under
this convention the superoperator is ``mean_g conj(r(g)) kron r(g)``, which
is the Kronecker form ``mean_g r(g) kron conj(r(g))`` with the two tensor
factors swapped. The swap is a permutation matrix that fixes the
maximally-entangled vector, so both forms have the same singular values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fourier import tensor_multiplicities
from .groups import GeneratorSet, GroupError, GroupSpec, closure
from .irreps import IrrepHandle, average_matrix, list_irreps
from .spectral import (
    MAX_ITER,
    NormEstimate,
    POWER_TOL,
    SEEDS,
    dense_lambda2,
    linear_map,
    power_iteration,
)
from .walk import build_walk, classical_lambda2

log = logging.getLogger(__name__)

SUPEROP_CAP = 64
GAP_TOL = 1e-8
SCHEMA_VERSION = 1


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class ExpanderChannel:
    """Uniform mixture of unitary conjugations.

    ``kraus`` holds the unitaries ``r(gamma)`` stacked as ``(D, d, d)``; the
    Kraus operators proper are ``r(gamma) / sqrt(D)``.
    """

    kraus: np.ndarray
    group: GroupSpec | None = None
    generators: GeneratorSet | None = None
    irrep: IrrepHandle | None = None

    @property
    def dim(self) -> int:
        return self.kraus.shape[1]

    @property
    def degree(self) -> int:
        return self.kraus.shape[0]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return apply(self, rho)


def build_channel(gens: GeneratorSet, h: IrrepHandle) -> ExpanderChannel:
    if h.group != gens.group:
        raise GroupError(f"irrep of {h.group} cannot act on generators from {gens.group}")
    if h.is_trivial:
        raise ChannelError(
            f"irrep {h.label_text} is trivial; choose a non-trivial irrep for an expander"
        )
    kraus = np.stack([h.matrix(g) for g in gens])
    kraus.setflags(write=False)
    return ExpanderChannel(kraus, gens.group, gens, h)


def channel_from_unitaries(unitaries) -> ExpanderChannel:
    kraus = np.stack([np.asarray(u) for u in unitaries])
    if kraus.ndim != 3 or kraus.shape[1] != kraus.shape[2]:
        raise ChannelError(f"expected a stack of square matrices, got shape {kraus.shape}")
    return ExpanderChannel(kraus)


def apply(ch: ExpanderChannel, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise ChannelError(f"state has shape {rho.shape}, channel acts on dimension {ch.dim}")
    k = ch.kraus
    return (k @ rho @ k.conj().transpose(0, 2, 1)).mean(axis=0)


def apply_adjoint(ch: ExpanderChannel, x: np.ndarray) -> np.ndarray:
    """Hilbert-Schmidt adjoint, ``(1/D) sum K^dag X K``."""
    k = ch.kraus
    return (k.conj().transpose(0, 2, 1) @ x @ k).mean(axis=0)


def trace_preservation_residual(ch: ExpanderChannel) -> float:
    k = ch.kraus
    s = (k.conj().transpose(0, 2, 1) @ k).mean(axis=0)
    return float(np.linalg.norm(s - np.eye(ch.dim)))


def unitality_residual(ch: ExpanderChannel) -> float:
    k = ch.kraus
    s = (k @ k.conj().transpose(0, 2, 1)).mean(axis=0)
    return float(np.linalg.norm(s - np.eye(ch.dim)))


def vec(x: np.ndarray) -> np.ndarray:
    return np.asarray(x).reshape(-1, order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


def tau_hat(d: int) -> np.ndarray:
    """Normalized maximally entangled vector, ``vec(I) / sqrt(d)``."""
    return vec(np.eye(d)) / np.sqrt(d)


def superoperator(ch: ExpanderChannel, cap: int = SUPEROP_CAP) -> np.ndarray:
    if ch.dim > cap:
        raise ChannelError(
            f"superoperator of dimension {ch.dim}^2 exceeds dense cap (d <= {cap}); "
            "use the iterative method"
        )
    k = ch.kraus
    return sum(np.kron(u.conj(), u) for u in k) / ch.degree


def quantum_lambda2_dense(ch: ExpanderChannel, cap: int = SUPEROP_CAP) -> float:
    """``|| E_hat - |tau_hat><tau_hat| ||_inf`` by full SVD.

    A one-dimensional channel has nothing left after deflation and gives 0.
    """
    if ch.dim == 1:
        return 0.0
    return dense_lambda2(superoperator(ch, cap), tau_hat(ch.dim), cap=cap * cap)


def deflated_channel_map(
    d: int,
    forward: Callable[[np.ndarray], np.ndarray],
    adjoint: Callable[[np.ndarray], np.ndarray],
    dtype=complex,
):
    """``X -> E(X) - (tr X / d) I`` on flattened d x d matrices, with adjoint.

    The subtracted term is the Hilbert-Schmidt projection onto ``I / sqrt(d)``.
    """

    def wrap(fn):
        def mv(v):
            x = np.reshape(v, (d, d))
            y = fn(x)
            y = y - (np.trace(x) / d) * np.eye(d)
            return y.ravel()

        return mv

    return linear_map(d * d, wrap(forward), wrap(adjoint), dtype=dtype)


def quantum_lambda2_iterative(
    ch: ExpanderChannel,
    tol: float = POWER_TOL,
    max_iter: int = MAX_ITER,
    seeds: int = SEEDS,
    seed: int = 0,
) -> NormEstimate:
    """Matrix-free second singular value by restarted power iteration."""
    if ch.dim == 1:
        return NormEstimate(0.0, True, 0)
    dtype = ch.kraus.dtype if np.isrealobj(ch.kraus) else complex
    op = deflated_channel_map(
        ch.dim, lambda x: apply(ch, x), lambda x: apply_adjoint(ch, x), dtype=dtype
    )
    return power_iteration(op, tol, max_iter, seeds, seed)


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed mixed state of the given rank (full rank by default)."""
    r = d if rank is None else rank
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def check_density_matrix(rho: np.ndarray, tol: float = 1e-10) -> None:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.linalg.norm(rho - rho.conj().T) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho)}")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")


def entropy(rho: np.ndarray, base: float = 2) -> float:
    """Von Neumann entropy, ``0 log 0 = 0``."""
    p = np.linalg.eigvalsh(rho)
    p = p[p > 1e-15]
    return float(-np.sum(p * np.log(p)) / np.log(base))


def irrep_block_norms(group: GroupSpec, gens: GeneratorSet) -> dict:
    """``|| mean_gamma r_nu(gamma) ||_inf`` for every irrep label nu."""
    return {
        h.label: float(np.linalg.norm(average_matrix(h, gens), 2)) for h in list_irreps(group)
    }


def irrep_max_crosscheck(group: GroupSpec, gens: GeneratorSet) -> float:
    """Largest irrep-block norm over non-trivial irreps; equals the walk's second singular value."""
    norms = irrep_block_norms(group, gens)
    vals = [norms[h.label] for h in list_irreps(group) if not h.is_trivial]
    return max(vals, default=0.0)


def quantum_irrep_max(gens: GeneratorSet, h: IrrepHandle) -> float:
    """Largest irrep-block norm over non-trivial nu occurring in ``V_h (x) V_h^*``."""
    mult = tensor_multiplicities(h)
    norms = irrep_block_norms(h.group, gens)
    vals = [
        norms[nu.label]
        for nu in list_irreps(h.group)
        if not nu.is_trivial and mult[nu.label] > 0
    ]
    return max(vals, default=0.0)


@dataclass
class SpectralReport:
    classical_lambda2: float | None
    quantum_lambda2: float
    inequality_holds: bool | None
    method: str
    tolerance: float
    iterations: int = 0
    converged: bool = True
    instance: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "classical_lambda2": self.classical_lambda2,
            "quantum_lambda2": self.quantum_lambda2,
            "inequality_holds": self.inequality_holds,
            "method": self.method,
            "tolerance": self.tolerance,
            "iterations": self.iterations,
            "converged": self.converged,
            "instance": self.instance,
            "notes": self.notes,
        }


def instance_metadata(group: GroupSpec, gens: GeneratorSet, h: IrrepHandle | None) -> dict:
    meta = {"group": group.to_json(), "generators": gens.labels()}
    if h is not None:
        meta["irrep"] = h.label_text
        meta["dimension"] = h.dim
    return meta


def verify_gap_inequality(
    group: GroupSpec,
    gens: GeneratorSet,
    h: IrrepHandle,
    method: str = "auto",
    tol: float = GAP_TOL,
    seed: int = 0,
    power_tol: float = POWER_TOL,
    max_iter: int = MAX_ITER,
    seeds: int = SEEDS,
    superop_cap: int = SUPEROP_CAP,
) -> SpectralReport:
    """Compute both second singular values and compare them."""
    ch = build_channel(gens, h)
    walk = build_walk(group, gens)
    cl = classical_lambda2(walk, seed=seed)
    if method == "auto":
        method = "dense" if ch.dim <= superop_cap else "iterative"
    notes = []
    if ch.dim == 1:
        notes.append("one-dimensional irrep: deflated superoperator is zero")
    if method == "dense":
        q, iters, conv = quantum_lambda2_dense(ch, superop_cap), 0, True
    elif method in ("iterative", "iter"):
        method = "iterative"
        q, conv, iters = quantum_lambda2_iterative(ch, power_tol, max_iter, seeds, seed)
        if not conv:
            notes.append("power iteration did not converge")
            log.warning("power iteration did not converge for %s", h.label_text)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not closure(gens).generates_full_group:
        notes.append("generators do not generate the group")
    return SpectralReport(
        classical_lambda2=cl,
        quantum_lambda2=q,
        inequality_holds=bool(q <= cl + tol),
        method=method,
        tolerance=tol,
        iterations=iters,
        converged=conv,
        instance=instance_metadata(group, gens, h),
        notes=notes,
    )
