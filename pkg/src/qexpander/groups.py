"""Concrete finite groups: symmetric, cyclic, dihedral and direct products.

Elements are immutable values carrying their group. Permutations compose
right-to-left, ``(a * b)(x) == a(b(x))``, everywhere in the package.

Payloads:

* symmetric(n): one-line tuple ``(g(1), ..., g(n))`` over ``1..n``
* cyclic(n): residue ``k`` in ``[0, n)``
* dihedral(n): pair ``(k, f)`` meaning ``s^f r^k`` with ``s r s = r^-1``
* product: tuple of factor payloads
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

import numpy as np

DEFAULT_CAP = 10**5


class GroupError(ValueError):
    pass


class GroupTooLarge(GroupError):
    pass


class GroupSpec:
    """Base class; concrete families are frozen dataclasses below."""

    family: str

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, self._identity())

    def element(self, payload) -> "GroupElement":
        payload = self._normalize(payload)
        return GroupElement(self, payload)

    def elements(self, cap: int = DEFAULT_CAP) -> list["GroupElement"]:
        return enumerate_group(self, cap)

    def random_element(self, rng: np.random.Generator) -> "GroupElement":
        return GroupElement(self, self._random(rng))

    def parse(self, text: str) -> "GroupElement":
        return parse_element(self, text)

    # family hooks
    def _identity(self): ...
    def _normalize(self, payload): ...
    def _mul(self, a, b): ...
    def _inv(self, a): ...
    def _iter_payloads(self): ...
    def _random(self, rng): ...
    def _format(self, payload) -> str: ...
    def _parse(self, text: str): ...

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    n: int
    family = "symmetric"

    def __post_init__(self):
        if self.n < 1:
            raise GroupError(f"symmetric group needs n >= 1, got {self.n}")

    def __str__(self):
        return f"S_{self.n}"

    @property
    def order(self) -> int:
        return math.factorial(self.n)

    def _identity(self):
        return tuple(range(1, self.n + 1))

    def _normalize(self, payload):
        p = tuple(int(x) for x in payload)
        if sorted(p) != list(range(1, self.n + 1)):
            raise GroupError(f"{list(p)} is not a permutation of 1..{self.n}")
        return p

    def _mul(self, a, b):
        return tuple(a[x - 1] for x in b)

    def _inv(self, a):
        out = [0] * self.n
        for i, x in enumerate(a, start=1):
            out[x - 1] = i
        return tuple(out)

    def _iter_payloads(self):
        return itertools.permutations(range(1, self.n + 1))

    def _random(self, rng):
        return tuple(int(x) + 1 for x in rng.permutation(self.n))

    def _format(self, payload):
        return format_cycles(payload)

    def _parse(self, text):
        text = text.strip()
        if text.startswith("["):
            try:
                values = [int(t) for t in text.strip("[]").replace(",", " ").split()]
            except ValueError:
                raise GroupError(f"malformed one-line permutation {text!r}") from None
            if len(values) != self.n:
                raise GroupError(f"{text!r} has {len(values)} entries, expected {self.n}")
            return self._normalize(values)
        return _parse_cycles(text, self.n)

    def to_json(self):
        return {"family": "symmetric", "n": self.n}


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int
    family = "cyclic"

    def __post_init__(self):
        if self.n < 1:
            raise GroupError(f"cyclic group needs n >= 1, got {self.n}")

    def __str__(self):
        return f"Z_{self.n}"

    @property
    def order(self) -> int:
        return self.n

    def _identity(self):
        return 0

    def _normalize(self, payload):
        k = int(payload)
        if not 0 <= k < self.n:
            raise GroupError(f"residue {k} outside [0, {self.n})")
        return k

    def _mul(self, a, b):
        return (a + b) % self.n

    def _inv(self, a):
        return (-a) % self.n

    def _iter_payloads(self):
        return iter(range(self.n))

    def _random(self, rng):
        return int(rng.integers(self.n))

    def _format(self, payload):
        return str(payload)

    def _parse(self, text):
        # Any integer is accepted and reduced, so "-1" names n-1.
        try:
            return int(text.strip()) % self.n
        except ValueError:
            raise GroupError(f"malformed residue {text!r}") from None

    def to_json(self):
        return {"family": "cyclic", "n": self.n}


_DIHEDRAL_RE = re.compile(r"^(?:(s)\s*[·*.]?\s*)?(?:r(?:\^(-?\d+))?)?$")


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Symmetries of the regular n-gon, order 2n."""

    n: int
    family = "dihedral"

    def __post_init__(self):
        if self.n < 3:
            raise GroupError(f"dihedral group needs n >= 3, got {self.n}")

    def __str__(self):
        return f"D_{self.n}"

    @property
    def order(self) -> int:
        return 2 * self.n

    def _identity(self):
        return (0, 0)

    def _normalize(self, payload):
        k, f = (int(x) for x in payload)
        if not (0 <= k < self.n and f in (0, 1)):
            raise GroupError(f"invalid dihedral payload {(k, f)} for n={self.n}")
        return (k, f)

    def _mul(self, a, b):
        # s^a r^k s^b r^m = s^(a+b) r^((-1)^b k + m)
        k, fa = a
        m, fb = b
        sign = -1 if fb else 1
        return ((sign * k + m) % self.n, fa ^ fb)

    def _inv(self, a):
        k, f = a
        return a if f else ((-k) % self.n, 0)

    def _iter_payloads(self):
        return itertools.product(range(self.n), (0, 1))

    def _random(self, rng):
        return (int(rng.integers(self.n)), int(rng.integers(2)))

    def _format(self, payload):
        k, f = payload
        return f"s·r^{k}" if f else f"r^{k}"

    def _parse(self, text):
        t = text.strip().replace(" ", "")
        if t in ("e", "1"):
            return (0, 0)
        m = _DIHEDRAL_RE.match(t)
        if not t or m is None:
            raise GroupError(f"malformed dihedral element {text!r}")
        refl = 1 if m.group(1) else 0
        has_r = "r" in t
        k = int(m.group(2)) if m.group(2) is not None else (1 if has_r else 0)
        return (k % self.n, refl)

    def to_json(self):
        return {"family": "dihedral", "n": self.n}


@dataclass(frozen=True)
class Product(GroupSpec):
    """Direct product; element text joins factor texts with ``;``."""

    factors: tuple[GroupSpec, ...]
    family = "product"

    def __post_init__(self):
        if not self.factors:
            raise GroupError("product group needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)

    @property
    def order(self) -> int:
        return math.prod(f.order for f in self.factors)

    def _identity(self):
        return tuple(f._identity() for f in self.factors)

    def _normalize(self, payload):
        if len(payload) != len(self.factors):
            raise GroupError("product payload has the wrong number of factors")
        return tuple(f._normalize(p) for f, p in zip(self.factors, payload))

    def _mul(self, a, b):
        return tuple(f._mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _inv(self, a):
        return tuple(f._inv(x) for f, x in zip(self.factors, a))

    def _iter_payloads(self):
        return itertools.product(*(f._iter_payloads() for f in self.factors))

    def _random(self, rng):
        return tuple(f._random(rng) for f in self.factors)

    def _format(self, payload):
        return ";".join(f._format(p) for f, p in zip(self.factors, payload))

    def _parse(self, text):
        parts = text.split(";")
        if len(parts) != len(self.factors):
            raise GroupError(
                f"{text!r} has {len(parts)} ';'-separated parts, expected {len(self.factors)}"
            )
        return tuple(f._parse(p) for f, p in zip(self.factors, parts))

    def to_json(self):
        return {"family": "product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    payload: Any

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return inverse(self)

    @property
    def is_identity(self) -> bool:
        return self.payload == self.group._identity()

    def __str__(self):
        return self.group._format(self.payload)


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered multiset of generators; duplicates weight the walk."""

    group: GroupSpec
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise GroupError("generator set is empty")
        for g in self.elements:
            if g.group != self.group:
                raise GroupError(f"generator {g} is not in {self.group}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def degree(self) -> int:
        return len(self.elements)

    def labels(self) -> list[str]:
        return [str(g) for g in self.elements]

    @classmethod
    def parse(cls, group: GroupSpec, texts: Sequence[str]) -> "GeneratorSet":
        return cls(group, tuple(parse_element(group, t) for t in texts))

    @classmethod
    def random(cls, group: GroupSpec, size: int, rng: np.random.Generator) -> "GeneratorSet":
        return cls(group, tuple(group.random_element(rng) for _ in range(size)))


def _check_same(a: GroupElement, b: GroupElement):
    if a.group != b.group:
        raise GroupError(f"cannot combine elements of {a.group} and {b.group}")


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    _check_same(a, b)
    return GroupElement(a.group, a.group._mul(a.payload, b.payload))


def inverse(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, a.group._inv(a.payload))


def enumerate_group(group: GroupSpec, cap: int = DEFAULT_CAP) -> list[GroupElement]:
    """All elements, lexicographic on payload."""
    if group.order > cap:
        raise GroupTooLarge(
            f"group too large for dense path: |{group}| = {group.order} > cap {cap}"
        )
    return [GroupElement(group, p) for p in sorted(group._iter_payloads())]


class Closure(NamedTuple):
    elements: list[GroupElement]
    generates_full_group: bool


def closure(gens: GeneratorSet, cap: int = DEFAULT_CAP) -> Closure:
    """Breadth-first closure of the generators under left multiplication."""
    group = gens.group
    start = group._identity()
    seen = {start}
    order = [start]
    queue = deque([start])
    gen_payloads = [g.payload for g in gens]
    while queue:
        x = queue.popleft()
        for g in gen_payloads:
            y = group._mul(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(seen) > cap:
                    raise GroupTooLarge(f"closure exceeded cap {cap}")
                queue.append(y)
    # finite group: the monoid generated is already a group
    elements = [GroupElement(group, p) for p in sorted(order)]
    return Closure(elements, len(elements) == group.order)


def symmetrize(gens: GeneratorSet) -> GeneratorSet:
    """Distinct elements of gens together with their inverses, in first-seen order."""
    out: dict = {}
    for g in gens:
        out.setdefault(g.payload, g)
    for g in gens:
        gi = inverse(g)
        out.setdefault(gi.payload, gi)
    return GeneratorSet(gens.group, tuple(out.values()))


def format_element(g: GroupElement) -> str:
    return str(g)


def parse_element(group: GroupSpec, text: str) -> GroupElement:
    if not isinstance(text, str):
        raise GroupError(f"expected element text, got {type(text).__name__}")
    return GroupElement(group, group._parse(text))


def format_cycles(perm: Sequence[int]) -> str:
    n = len(perm)
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start] or perm[start - 1] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text: str, n: int) -> tuple[int, ...]:
    stripped = text.replace(" ", "")
    if not stripped or _CYCLE_RE.sub("", stripped) != "":
        raise GroupError(f"malformed cycle notation {text!r}")
    result = list(range(1, n + 1))
    # written left to right, applied right to left
    for body in reversed(_CYCLE_RE.findall(text)):
        tokens = body.replace(",", " ").split()
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise GroupError(f"malformed cycle ({body}) in {text!r}") from None
        if len(set(pts)) != len(pts):
            raise GroupError(f"repeated point in cycle ({body})")
        for p in pts:
            if not 1 <= p <= n:
                raise GroupError(f"point {p} out of range 1..{n} in {text!r}")
        cyc = list(range(1, n + 1))
        for i, p in enumerate(pts):
            cyc[p - 1] = pts[(i + 1) % len(pts)]
        result = [cyc[x - 1] for x in result]
    return tuple(result)


def group_from_json(obj: dict) -> GroupSpec:
    try:
        family = obj["family"]
        if family == "symmetric":
            return Symmetric(int(obj["n"]))
        if family == "cyclic":
            return Cyclic(int(obj["n"]))
        if family == "dihedral":
            return Dihedral(int(obj["n"]))
        if family == "product":
            return Product(tuple(group_from_json(f) for f in obj["factors"]))
    except KeyError as exc:
        raise GroupError(f"group spec missing field {exc}") from None
    raise GroupError(f"unknown group family {obj.get('family')!r}")
