"""Integer partitions, standard Young tableaux and irrep dimensions of S_n."""

from __future__ import annotations

import math
import re
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]


class PartitionError(ValueError):
    pass


def check_partition(parts: Sequence[int], n: int | None = None) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise PartitionError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise PartitionError(f"partition {parts} is not weakly decreasing")
    if n is not None and sum(parts) != n:
        raise PartitionError(f"{parts} is not a partition of {n}")
    return parts


def parse_partition(text: str) -> Partition:
    """Parse ``"(3,1)"``, ``"3,1"`` or ``"[3, 1]"``."""
    body = text.strip().strip("()[]")
    tokens = [t for t in re.split(r"[,\s]+", body) if t]
    try:
        return check_partition([int(t) for t in tokens])
    except ValueError as exc:
        raise PartitionError(f"malformed partition {text!r}: {exc}") from None


def format_partition(p: Partition) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def partitions(n: int) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order, ``(n)`` first."""

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def conjugate(p: Partition) -> Partition:
    return tuple(sum(1 for part in p if part > j) for j in range(p[0])) if p else ()


def irrep_dimension(p: Sequence[int]) -> int:
    """Dimension of the S_n irrep labelled by p, exact.

    Uses the determinantal product over the zero-padded partition::

        d = n! prod_{i<j} (p_i - p_j - i + j) / prod_i (p_i + n - i)!
    """
    p = check_partition(p)
    n = sum(p)
    lam = list(p) + [0] * (n - len(p))
    num = math.factorial(n)
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] - i + j
    den = math.prod(math.factorial(lam[i] + n - (i + 1)) for i in range(n))
    d, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"non-integer dimension for {p}")
    return d


def hook_length_dimension(p: Sequence[int]) -> int:
    """Frame-Robinson-Thrall hook formula, n! / prod(hooks)."""
    p = check_partition(p)
    conj = conjugate(p)
    hooks = 1
    for i, row in enumerate(p):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(sum(p)) // hooks


Tableau = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def standard_tableaux(p: Partition) -> tuple[Tableau, ...]:
    """Standard Young tableaux of shape p in last-letter order.

    Order key: the row holding n, then n-1, and so on, with lower rows
    (larger row index) first. For (2,1) this lists [[1,2],[3]] before
    [[1,3],[2]].
    """
    p = check_partition(p)
    n = sum(p)
    out = []

    def rec(filled: list[list[int]], k: int):
        if k > n:
            out.append(tuple(tuple(r) for r in filled))
            return
        for i in range(len(p)):
            if len(filled[i]) < p[i] and (i == 0 or len(filled[i - 1]) > len(filled[i])):
                filled[i].append(k)
                rec(filled, k + 1)
                filled[i].pop()

    rec([[] for _ in p], 1)

    def key(t):
        rows = {}
        for i, r in enumerate(t):
            for x in r:
                rows[x] = i
        return tuple(-rows[x] for x in range(n, 0, -1))

    return tuple(sorted(out, key=key))


def contents(t: Tableau) -> dict[int, int]:
    """Map entry -> content (column - row)."""
    return {x: j - i for i, r in enumerate(t) for j, x in enumerate(r)}
