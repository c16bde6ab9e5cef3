"""Littlewood-Richardson coefficients and tensor products of Schur modules.

All counting goes through one enumerator of LR skew tableaux. A tableau of
shape nu/lam and content mu is encoded by the number of letters i in each
row j; reading rows top to bottom and right to left, the constraints are

    * column strictness: lam[j] + #(letters <= i in row j)
                         <= lam[j-1] + #(letters < i in row j-1)
    * lattice word:      #(i in rows <= j) <= #(i-1 in rows < j)

which are enough to enumerate row by row without building the tableau.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from qsi.errors import TooManyRows
from qsi.partitions import Partition

DecompositionTable = dict  # Partition -> positive multiplicity


def _fillings(lam: tuple, mu: tuple, max_rows: int | None, max_cols: int | None,
              target: tuple | None = None) -> Iterator[tuple]:
    """Yield the outer shape of every LR tableau with inner shape lam and content mu."""
    L, M = len(lam), len(mu)
    if max_rows is not None and L > max_rows:
        return
    if max_cols is not None and lam and lam[0] > max_cols:
        return
    n_rows = L + M if max_rows is None else min(L + M, max_rows)
    if target is not None:
        n_rows = min(n_rows, len(target))
    lam_at = [lam[j] if j < L else 0 for j in range(n_rows + 1)]
    used = [0] * M
    nu: list[int] = []

    def rows(j: int, prev: list[int]) -> Iterator[tuple]:
        if all(used[i] == mu[i] for i in range(M)):
            shape = tuple(nu) + tuple(lam[j:])
            if target is None or shape == target:
                yield shape
            return
        if j >= n_rows:
            return
        lj = lam_at[j]
        goal = None
        if target is not None:
            goal = (target[j] if j < len(target) else 0) - lj
            if goal < 0:
                return
        top = min(j, M - 1)
        counts = [0] * (top + 1)

        def letters(i: int, placed: int) -> Iterator[tuple]:
            if i > top:
                if goal is not None and placed != goal:
                    return
                if placed == 0 and lj == 0 and any(used[k] < mu[k] for k in range(M)):
                    # an empty row ends the shape; content left over is unplaceable
                    return
                for k in range(top + 1):
                    used[k] += counts[k]
                nu.append(lj + placed)
                yield from rows(j + 1, counts[:])
                nu.pop()
                for k in range(top + 1):
                    used[k] -= counts[k]
                return
            hi = mu[i] - used[i]
            if i > 0:
                hi = min(hi, used[i - 1] - used[i])
            if j > 0:
                above = lam_at[j - 1] + sum(prev[:i])
                hi = min(hi, above - lj - placed)
            elif max_cols is not None:
                hi = min(hi, max_cols - lj - placed)
            if goal is not None:
                hi = min(hi, goal - placed)
            for c in range(hi, -1, -1):
                counts[i] = c
                yield from letters(i + 1, placed + c)
            counts[i] = 0

        yield from letters(0, 0)

    yield from rows(0, [])


@lru_cache(maxsize=None)
def _lr_count(lam: tuple, mu: tuple, nu: tuple) -> int:
    return sum(1 for _ in _fillings(lam, mu, None, None, target=nu))


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """c^nu_{lam,mu}: number of LR tableaux of shape nu/lam and content mu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size + mu.size != nu.size or not nu.contains(lam):
        return 0
    return _lr_count(tuple(lam), tuple(mu), tuple(nu))


@lru_cache(maxsize=200_000)
def _pair_product(lam: tuple, mu: tuple, max_rows, max_cols) -> tuple:
    counts = Counter(_fillings(lam, mu, max_rows, max_cols))
    return tuple(sorted(counts.items(), reverse=True))


def lr_product(lam: Sequence[int], mu: Sequence[int], max_rows: int | None = None,
               max_cols: int | None = None) -> DecompositionTable:
    """Expansion of s_lam * s_mu, keeping shapes within the given row/column bounds."""
    lam, mu = tuple(Partition(lam)), tuple(Partition(mu))
    if len(mu) > len(lam) or (len(mu) == len(lam) and mu > lam):
        lam, mu = mu, lam
    return {Partition(nu): c for nu, c in _pair_product(lam, mu, max_rows, max_cols)}


def _product(factors: Iterable[tuple], max_rows, max_cols) -> dict:
    table = {(): 1}
    for f in factors:
        if not f:
            continue
        nxt: dict = {}
        for shape, mult in table.items():
            for nu, c in _pair_product(shape, f, max_rows, max_cols):
                nxt[nu] = nxt.get(nu, 0) + mult * c
        table = nxt
        if not table:
            break
    return table


def tensor_decompose(r: int, factors: Sequence[Sequence[int]]) -> DecompositionTable:
    """Multiplicities of S_nu(C^r) in the ordered product of S_lam(C^r) over the factors."""
    parts = [Partition(f) for f in factors]
    for p in parts:
        if len(p) > r:
            raise TooManyRows(f"partition {list(p)} has more than {r} rows")
    table = _product((tuple(p) for p in parts), r, None)
    return {Partition(nu): c for nu, c in sorted(table.items(), reverse=True)}


def complement(p: Sequence[int], rows: int, cols: int) -> tuple:
    """Complement of p inside the rows x cols rectangle, rotated into a partition."""
    padded = list(p) + [0] * (rows - len(p))
    return tuple(x for x in (cols - q for q in reversed(padded)) if x)


@lru_cache(maxsize=200_000)
def _rectangle_mult(n: int, m: int, factors: tuple) -> int:
    if not factors:
        return 1 if m == 0 or n == 0 else 0
    *rest, last = factors
    table = _product(rest, n, m)
    return table.get(complement(last, n, m), 0)


def rectangle_multiplicity(n: int, m: int, factors: Sequence[Sequence[int]]) -> int:
    """Multiplicity of det^m (the partition (m^n)) in the product of S_lam(C^n)."""
    return rectangle_mult_raw(n, m, [tuple(Partition(f)) for f in factors])


def rectangle_mult_raw(n: int, m: int, fs) -> int:
    """rectangle_multiplicity for already validated partition tuples."""
    if m < 0:
        return 0
    fs = [f for f in fs if f]
    if n == 0:
        return 1 if not fs else 0
    if sum(map(sum, fs)) != n * m:
        return 0
    if any(len(f) > n or f[0] > m for f in fs):
        return 0
    fs.sort(key=lambda f: (sum(f), f))
    return _rectangle_mult(n, m, tuple(fs))


def sl_invariant_dim(r: int, lambdas: Sequence[Sequence[int]]) -> int:
    """Dimension of the SL_r invariants in the product of the S_lam(C^r)."""
    total = sum(Partition(p).size for p in lambdas)
    if r <= 0 or total % r:
        return 0
    return rectangle_multiplicity(r, total // r, lambdas)


def stretched_lr(lam, mu, nu, n: int) -> int:
    if n < 1:
        raise ValueError("stretch factor must be >= 1")
    return lr_coefficient(Partition(lam).stretch(n), Partition(mu).stretch(n), Partition(nu).stretch(n))


def stretched_invariant(r: int, lambdas, n: int) -> int:
    if n < 1:
        raise ValueError("stretch factor must be >= 1")
    return sl_invariant_dim(r, [Partition(p).stretch(n) for p in lambdas])
