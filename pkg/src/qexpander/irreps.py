"""Unitary irreducible representations of the supported group families.

S_n irreps are realized in Young's orthogonal form on standard tableaux in
last-letter order, so every matrix is real orthogonal. Cyclic irreps are the
characters ``g -> exp(2 pi i k g / n)``. Dihedral irreps are written down
directly (sign characters and rotation blocks), and product-group irreps are
Kronecker products of factor irreps.
"""

from __future__ import annotations

import itertools
import math
import threading
from functools import cached_property

import numpy as np

from .groups import (
    Cyclic,
    Dihedral,
    GroupElement,
    GroupError,
    GroupSpec,
    GroupTooLarge,
    Product,
    Symmetric,
)
from .partitions import (
    Partition,
    PartitionError,
    check_partition,
    contents,
    format_partition,
    irrep_dimension,
    parse_partition,
    partitions,
    standard_tableaux,
)


class IrrepHandle:
    """A labelled irrep of ``group`` with a deterministic realization."""

    group: GroupSpec
    label: object

    def __init__(self, group: GroupSpec, label):
        self.group = group
        self.label = label
        self._cache: dict = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.group}, {self.label_text})"

    def __eq__(self, other):
        return (
            isinstance(other, IrrepHandle)
            and self.group == other.group
            and self.label == other.label
        )

    def __hash__(self):
        return hash((self.group, self.label))

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def label_text(self) -> str:
        return str(self.label)

    @property
    def is_trivial(self) -> bool:
        raise NotImplementedError

    @property
    def is_real(self) -> bool:
        return False

    def matrix(self, g: GroupElement) -> np.ndarray:
        if g.group != self.group:
            raise GroupError(f"element of {g.group} passed to irrep of {self.group}")
        m = self._cache.get(g.payload)
        if m is None:
            m = self._realize(g.payload)
            m.setflags(write=False)
            self._cache[g.payload] = m
        return m

    def character(self, g: GroupElement) -> complex:
        return complex(np.trace(self.matrix(g)))

    def _realize(self, payload) -> np.ndarray:
        raise NotImplementedError


class SymmetricIrrep(IrrepHandle):
    """Young's orthogonal form for the partition ``label``."""

    def __init__(self, group: Symmetric, label: Partition):
        label = check_partition(label, group.n)
        super().__init__(group, label)

    @cached_property
    def dim(self):
        return irrep_dimension(self.label)

    @property
    def label_text(self):
        return format_partition(self.label)

    @property
    def is_trivial(self):
        return len(self.label) == 1

    @property
    def is_real(self):
        return True

    @cached_property
    def tableaux(self):
        return standard_tableaux(self.label)

    @cached_property
    def adjacent(self) -> list[np.ndarray]:
        """``adjacent[i-1]`` represents the transposition (i, i+1)."""
        tabs = self.tableaux
        index = {t: a for a, t in enumerate(tabs)}
        d = len(tabs)
        mats = []
        for i in range(1, self.group.n):
            m = np.zeros((d, d))
            for a, t in enumerate(tabs):
                c = contents(t)
                r = c[i + 1] - c[i]
                m[a, a] = 1.0 / r
                if abs(r) > 1:
                    swapped = tuple(
                        tuple(i + 1 if x == i else i if x == i + 1 else x for x in row)
                        for row in t
                    )
                    m[index[swapped], a] = math.sqrt(1.0 - 1.0 / r**2)
            mats.append(m)
        return mats

    def _realize(self, payload):
        # bubble sort: p s_{j1} ... s_{jk} = e, hence p = s_{jk} ... s_{j1}
        arr = list(payload)
        m = np.eye(self.dim)
        n = len(arr)
        for end in range(n - 1, 0, -1):
            for j in range(end):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    m = self.adjacent[j] @ m
        return m


class CyclicIrrep(IrrepHandle):
    def __init__(self, group: Cyclic, label: int):
        label = int(label)
        if not 0 <= label < group.n:
            raise GroupError(f"character index {label} outside [0, {group.n})")
        super().__init__(group, label)

    @property
    def dim(self):
        return 1

    @property
    def is_trivial(self):
        return self.label == 0

    @property
    def is_real(self):
        return (2 * self.label) % self.group.n == 0

    def _realize(self, payload):
        n = self.group.n
        # exact values at quarter turns keep small cases clean
        num = (self.label * payload) % n
        if (4 * num) % n == 0:
            return np.array([[(1, 1j, -1, -1j)[4 * num // n]]], dtype=complex)
        return np.array([[np.exp(2j * np.pi * num / n)]])


class DihedralIrrep(IrrepHandle):
    """Labels: A1 (trivial), A2, B1, B2 (n even only) and E1..Em."""

    _ONE_DIM = {"A1": (1, 1), "A2": (1, -1), "B1": (-1, 1), "B2": (-1, -1)}

    def __init__(self, group: Dihedral, label: str):
        label = str(label).strip().upper()
        if label in self._ONE_DIM:
            if label[0] == "B" and group.n % 2:
                raise GroupError(f"{label} exists only for even n, got D_{group.n}")
        elif label.startswith("E") and label[1:].isdigit():
            j = int(label[1:])
            if not 1 <= j <= (group.n - 1) // 2:
                raise GroupError(f"{label} out of range for D_{group.n}")
        else:
            raise GroupError(f"unknown dihedral irrep {label!r}")
        super().__init__(group, label)

    @property
    def dim(self):
        return 1 if self.label in self._ONE_DIM else 2

    @property
    def is_trivial(self):
        return self.label == "A1"

    @property
    def is_real(self):
        return True

    def _realize(self, payload):
        k, f = payload
        if self.label in self._ONE_DIM:
            rot, refl = self._ONE_DIM[self.label]
            return np.array([[float(rot**k * refl**f)]])
        j = int(self.label[1:])
        theta = 2 * np.pi * j * k / self.group.n
        c, s = np.cos(theta), np.sin(theta)
        m = np.array([[c, -s], [s, c]])
        if f:
            m = np.diag([1.0, -1.0]) @ m
        return m


class ProductIrrep(IrrepHandle):
    def __init__(self, group: Product, factors: tuple[IrrepHandle, ...]):
        self.factors = tuple(factors)
        super().__init__(group, tuple(h.label for h in self.factors))

    @property
    def dim(self):
        return math.prod(h.dim for h in self.factors)

    @property
    def label_text(self):
        return ";".join(h.label_text for h in self.factors)

    @property
    def is_trivial(self):
        return all(h.is_trivial for h in self.factors)

    @property
    def is_real(self):
        return all(h.is_real for h in self.factors)

    def _realize(self, payload):
        m = np.eye(1)
        for h, fg, p in zip(self.factors, self.group.factors, payload):
            m = np.kron(m, h.matrix(GroupElement(fg, p)))
        return m


_INTERNED: dict = {}
_INTERN_LOCK = threading.Lock()


def _intern(h: IrrepHandle) -> IrrepHandle:
    # one handle per (group, label) so realized matrices are computed once
    with _INTERN_LOCK:
        return _INTERNED.setdefault((type(h), h.group, h.label), h)


def list_irreps(group: GroupSpec, cap: int | None = None) -> list[IrrepHandle]:
    """A complete set of inequivalent irreps, trivial first."""
    if cap is not None and group.order > cap:
        raise GroupTooLarge(f"|{group}| = {group.order} exceeds cap {cap}")
    return [_intern(h) for h in _construct_irreps(group)]


def _construct_irreps(group: GroupSpec) -> list[IrrepHandle]:
    if isinstance(group, Symmetric):
        return [SymmetricIrrep(group, p) for p in partitions(group.n)]
    if isinstance(group, Cyclic):
        return [CyclicIrrep(group, k) for k in range(group.n)]
    if isinstance(group, Dihedral):
        labels = ["A1", "A2"]
        if group.n % 2 == 0:
            labels += ["B1", "B2"]
        labels += [f"E{j}" for j in range(1, (group.n - 1) // 2 + 1)]
        return [DihedralIrrep(group, lab) for lab in labels]
    if isinstance(group, Product):
        per_factor = [list_irreps(f) for f in group.factors]
        return [ProductIrrep(group, combo) for combo in itertools.product(*per_factor)]
    raise GroupError(f"unsupported group family {type(group).__name__}")


def trivial_irrep(group: GroupSpec) -> IrrepHandle:
    return list_irreps(group)[0]


def parse_irrep(group: GroupSpec, text) -> IrrepHandle:
    """Irrep from its label text: ``"(3,1)"``, ``"2"``, ``"E1"``, ``"(2,1);1"``."""
    return _intern(_parse_irrep(group, text))


def _parse_irrep(group: GroupSpec, text) -> IrrepHandle:
    if isinstance(group, Symmetric):
        try:
            return SymmetricIrrep(group, parse_partition(str(text)))
        except PartitionError as exc:
            raise GroupError(str(exc)) from None
    if isinstance(group, Cyclic):
        t = str(text).strip()
        if t.startswith("k="):
            t = t[2:]
        try:
            k = int(t)
        except ValueError:
            raise GroupError(f"malformed character index {text!r}") from None
        return CyclicIrrep(group, k % group.n)
    if isinstance(group, Dihedral):
        return DihedralIrrep(group, text)
    if isinstance(group, Product):
        parts = str(text).split(";")
        if len(parts) != len(group.factors):
            raise GroupError(f"irrep label {text!r} needs {len(group.factors)} ';'-parts")
        return ProductIrrep(group, tuple(_parse_irrep(f, p) for f, p in zip(group.factors, parts)))
    raise GroupError(f"unsupported group family {type(group).__name__}")


def irrep_matrix(h: IrrepHandle, g: GroupElement) -> np.ndarray:
    return h.matrix(g)


def character(h: IrrepHandle, g: GroupElement) -> complex:
    return h.character(g)


def average_matrix(h: IrrepHandle, gens) -> np.ndarray:
    """``(1/|gens|) sum_g r(g)``, the irrep block of the walk operator."""
    return sum(h.matrix(g) for g in gens) / len(gens)
