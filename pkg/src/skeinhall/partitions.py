"""Integer partitions, cell statistics, contents and border strips.

Partitions are plain tuples of positive weakly decreasing integers.  Cells
are ``(row, col)`` pairs, both counted from 0.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import CellOutOfShape

Partition = tuple


class CellStats(NamedTuple):
    arm: int
    leg: int
    coarm: int
    coleg: int
    content: int
    hook: int


@dataclass(frozen=True)
class BorderStrip:
    cells: frozenset
    rows_spanned: int
    min_content: int
    length: int

    @property
    def height(self) -> int:
        # rows + 1, only its parity is ever used
        return self.rows_spanned + 1

    @property
    def sign(self) -> int:
        return -1 if self.height % 2 else 1


def partition(parts: Iterable[int]) -> Partition:
    """Validate and normalize to a tuple (trailing zeros dropped)."""
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    if any(x <= 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"not a partition: {parts!r}")
    return p


def size(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > j) for j in range(lam[0]))


def cells(lam: Partition) -> Iterator[tuple[int, int]]:
    for i, part in enumerate(lam):
        for j in range(part):
            yield (i, j)


def cell_stats(lam: Partition, x: tuple[int, int]) -> CellStats:
    i, j = x
    if not (0 <= i < len(lam) and 0 <= j < lam[i]):
        raise CellOutOfShape(f"cell {x} is not in {lam}")
    arm = lam[i] - j - 1
    leg = sum(1 for n in range(i + 1, len(lam)) if lam[n] > j)
    return CellStats(arm, leg, j, i, j - i, arm + leg + 1)


def content_multiset(lam: Partition) -> dict[int, int]:
    return dict(Counter(j - i for i, j in cells(lam)))


def n_lambda(lam: Partition) -> int:
    """n(lam) = sum (i-1) lam_i."""
    return sum(i * part for i, part in enumerate(lam))


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n in descending lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def dominates(lam: Partition, mu: Partition) -> bool:
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


# ---------------------------------------------------------------------------
# Border strips via beta numbers


def _beta(lam: Partition, length: int) -> list[int]:
    return [(lam[k] if k < len(lam) else 0) + (length - 1 - k) for k in range(length)]


def _from_beta(beta: list[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    L = len(beta)
    return partition(b - (L - 1 - k) for k, b in enumerate(beta))


def _strip(big: Partition, small: Partition) -> BorderStrip:
    cs = frozenset(
        (i, j) for i, part in enumerate(big) for j in range(small[i] if i < len(small) else 0, part)
    )
    contents = [j - i for i, j in cs]
    rows = len({i for i, _ in cs})
    return BorderStrip(cs, rows, min(contents), len(cs))


@lru_cache(maxsize=None)
def _ribbons_add(lam: Partition, n: int) -> tuple:
    L = len(lam) + n
    beta = _beta(lam, L)
    occupied = set(beta)
    out = []
    for k, b in enumerate(beta):
        if b + n not in occupied:
            new = list(beta)
            new[k] = b + n
            alpha = _from_beta(new)
            out.append((alpha, _strip(alpha, lam)))
    out.sort(key=lambda pair: pair[0], reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def _ribbons_remove(lam: Partition, n: int) -> tuple:
    L = len(lam) + n
    beta = _beta(lam, L)
    occupied = set(beta)
    out = []
    for k, b in enumerate(beta):
        if b - n >= 0 and b - n not in occupied:
            new = list(beta)
            new[k] = b - n
            mu = _from_beta(new)
            out.append((mu, _strip(lam, mu)))
    out.sort(key=lambda pair: pair[0], reverse=True)
    return tuple(out)


def ribbons_add(lam: Partition, n: int) -> list[tuple[Partition, BorderStrip]]:
    """All alpha containing lam with alpha - lam an n-ribbon, in descending lex order."""
    if n < 1:
        raise ValueError("ribbon length must be positive")
    return list(_ribbons_add(partition(lam), n))


def ribbons_remove(lam: Partition, n: int) -> list[tuple[Partition, BorderStrip]]:
    """All beta inside lam with lam - beta an n-ribbon, in descending lex order."""
    if n < 1:
        raise ValueError("ribbon length must be positive")
    return list(_ribbons_remove(partition(lam), n))
