"""Group Fourier transform, characters and tensor-square multiplicities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .groups import GroupElement, GroupSpec, GroupTooLarge, enumerate_group
from .irreps import IrrepHandle, list_irreps

QFT_CAP = 2000
MULTIPLICITY_TOL = 1e-8


class ConsistencyError(ArithmeticError):
    """A computed quantity that must be an integer was not."""


@dataclass(frozen=True)
class QftMatrix:
    """Dense Fourier transform on C[G].

    Row ``r`` is the basis vector ``|lambda, i, j>`` given by ``rows[r]``,
    with irreps in ``list_irreps`` order and ``(i, j)`` row-major inside each
    block. Column ``c`` is the group element ``elements[c]``.
    """

    matrix: np.ndarray
    rows: list[tuple[str, int, int]]
    elements: list[GroupElement]
    irreps: list[IrrepHandle]


def qft_matrix(group: GroupSpec, cap: int = QFT_CAP) -> QftMatrix:
    if group.order > cap:
        raise GroupTooLarge(f"dense QFT needs |G| <= {cap}, got {group.order}")
    elements = enumerate_group(group, cap)
    irreps = list_irreps(group)
    order = group.order
    blocks = []
    rows = []
    for h in irreps:
        d = h.dim
        # (d, d, |G|) -> (d*d, |G|), row-major in (i, j)
        stack = np.stack([h.matrix(g) for g in elements], axis=-1)
        blocks.append(np.sqrt(d / order) * stack.reshape(d * d, order))
        rows.extend((h.label_text, i, j) for i in range(d) for j in range(d))
    u = np.vstack(blocks).astype(complex)
    return QftMatrix(u, rows, elements, irreps)


def left_multiplication(elements: list[GroupElement], x: GroupElement) -> np.ndarray:
    """Permutation matrix of ``L_x = sum_g |xg><g|`` in the given element order."""
    index = {g.payload: i for i, g in enumerate(elements)}
    n = len(elements)
    m = np.zeros((n, n))
    for col, g in enumerate(elements):
        m[index[(x * g).payload], col] = 1.0
    return m


def block_left_action(irreps: list[IrrepHandle], x: GroupElement) -> np.ndarray:
    """``sum_lambda |lambda><lambda| (x) r_lambda(x) (x) I``, block diagonal."""
    return block_diag(*[np.kron(h.matrix(x), np.eye(h.dim)) for h in irreps])


def verify_left_translation_blocks(
    group: GroupSpec, x: GroupElement, cap: int = QFT_CAP, qft: QftMatrix | None = None
) -> float:
    """Frobenius residual of ``U L_x U^dag`` against its block-diagonal form."""
    if qft is None:
        qft = qft_matrix(group, cap)
    u = qft.matrix
    lhs = u @ left_multiplication(qft.elements, x) @ u.conj().T
    return float(np.linalg.norm(lhs - block_left_action(qft.irreps, x)))


def unitarity_residual(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[1])))


def character_table(
    group: GroupSpec, irreps: list[IrrepHandle] | None = None, cap: int = QFT_CAP
) -> tuple[np.ndarray, list[GroupElement]]:
    """Characters as an array ``(len(irreps), |G|)`` with elements in canonical order."""
    elements = enumerate_group(group, cap)
    if irreps is None:
        irreps = list_irreps(group)
    table = np.array([[h.character(g) for g in elements] for h in irreps])
    return table, elements


def tensor_multiplicities(h: IrrepHandle, cap: int = QFT_CAP) -> dict:
    """Multiplicity of each irrep label inside ``V_lambda (x) V_lambda^*``.

    Computed from characters, ``m_nu = <chi_nu, |chi_lambda|^2>``. Every
    label of the group appears, zeros included.
    """
    irreps = list_irreps(h.group)
    table, elements = character_table(h.group, irreps, cap)
    chi = np.array([h.character(g) for g in elements])
    square = np.abs(chi) ** 2
    raw = table.conj() @ square / len(elements)
    out = {}
    for nu, m in zip(irreps, raw):
        k = round(m.real)
        if abs(m - k) > MULTIPLICITY_TOL or k < 0:
            raise ConsistencyError(f"multiplicity of {nu.label_text} in {h.label_text} is {m}")
        out[nu.label] = k
    total = sum(out[nu.label] * nu.dim for nu in irreps)
    if total != h.dim**2:
        raise ConsistencyError(f"multiplicities sum to dimension {total}, expected {h.dim**2}")
    return out


def irrep_completeness_check(
    group: GroupSpec, cap: int = QFT_CAP, irreps: list[IrrepHandle] | None = None
) -> bool:
    """True iff the squared dimensions of the irrep list sum to |G|."""
    if group.order > cap:
        raise GroupTooLarge(f"|{group}| = {group.order} exceeds cap {cap}")
    if irreps is None:
        irreps = list_irreps(group)
    return sum(h.dim**2 for h in irreps) == group.order
