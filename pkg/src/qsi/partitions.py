"""Integer partitions as hashable values."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from qsi.errors import PartitionError


class Partition(tuple):
    """Weakly decreasing tuple of positive integers. Trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p < 0 for p in parts):
            raise PartitionError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"{tuple(parts)} is not weakly decreasing")
        if any(p == 0 for p in parts):
            raise PartitionError(f"zero part inside {tuple(parts)}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "5,2,1" (an empty string is the zero partition)."""
        text = text.strip()
        if not text:
            return cls()
        try:
            parts = [int(t) for t in text.split(",")]
        except ValueError:
            raise PartitionError(f"cannot parse partition {text!r}") from None
        return cls(parts)

    def __repr__(self):
        return f"Partition({list(self)})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """i-th part (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def column_data(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return column_data(self)

    def stretch(self, n: int) -> "Partition":
        return Partition(n * p for p in self)

    def contains(self, other) -> bool:
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))


def conjugate(p) -> Partition:
    if not p:
        return Partition()
    return Partition(sum(1 for x in p if x > j) for j in range(p[0]))


def column_data(p) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Distinct column lengths (increasing) and how many columns have each length."""
    cols = conjugate(p)
    lengths = sorted(set(cols))
    counts = [cols.count(d) for d in lengths]
    return tuple(lengths), tuple(counts)


def partitions_of(n: int, max_rows: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n with at most max_rows parts, each at most max_part."""
    if max_part is None:
        max_part = n
    if max_rows is None:
        max_rows = n
    for parts in _partitions(n, max_rows, max_part):
        yield Partition(parts)


def partition_tuples(n: int, max_rows: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    """Like partitions_of, as plain tuples (for inner loops)."""
    return _partitions(n, max_rows, max_part)


@lru_cache(maxsize=None)
def _partitions(n: int, rows: int, cap: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if rows == 0 or cap == 0 or n > rows * cap:
        return ()
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, rows - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def schur_dim(p, r: int) -> int:
    """Dimension of the Schur module S_p(C^r) by the hook-content formula."""
    if len(p) > r:
        return 0
    conj = conjugate(p)
    num = Fraction(1)
    for i, row in enumerate(p):
        for j in range(row):
            hook = row - j + conj[j] - i - 1
            num *= Fraction(r + j - i, hook)
    return int(num)
