"""Exact dense linear algebra over the rationals and prime fields.

Matrices hold integer numerators plus one positive common denominator.
Rank, nullspace and determinant over Q use fraction-free (Bareiss)
elimination; the ``*_mod`` variants work over GF(p).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import isprime

from qsi.errors import NonSquare, ShapeMismatch

PRIME_LOW = 2**61
PRIME_HIGH = 2**62


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged rows")
        flat = [Fraction(x) for r in rows for x in r]
        den = reduce(lcm, (f.denominator for f in flat), 1)
        nums = tuple(int(f * den) for f in flat)
        return cls(len(rows), cols, nums, den)._reduced()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        return cls.from_rows([[v] for v in values], cols=1)

    def _reduced(self) -> "ExactMatrix":
        if self.den == 1:
            return self
        g = reduce(gcd, self.entries, self.den)
        if g == 1:
            return self
        return ExactMatrix(self.rows, self.cols, tuple(e // g for e in self.entries), self.den // g)

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        return Fraction(self.entries[i * self.cols + j], self.den)

    def numerator_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [[Fraction(e, self.den) for e in r] for r in self.numerator_rows()]

    def to_json(self):
        """Nested lists; integers when the entry is integral, else "p/q" strings."""
        out = []
        for r in self.to_rows():
            out.append([int(x) if x.denominator == 1 else str(x) for x in r])
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "ExactMatrix":
        r, c = self.rows, self.cols
        e = self.entries
        return ExactMatrix(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)), self.den)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        a = self.numerator_rows()
        bt = other.transpose().numerator_rows()
        prod = tuple(sum(x * y for x, y in zip(ra, cb)) for ra in a for cb in bt)
        return ExactMatrix(self.rows, other.cols, prod, self.den * other.den)._reduced()

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        d = lcm(self.den, other.den)
        fa, fb = d // self.den, d // other.den
        e = tuple(x * fa + y * fb for x, y in zip(self.entries, other.entries))
        return ExactMatrix(self.rows, self.cols, e, d)._reduced()

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(-x for x in self.entries), self.den)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        e = tuple(x * c.numerator for x in self.entries)
        return ExactMatrix(self.rows, self.cols, e, self.den * c.denominator)._reduced()

    def is_zero(self) -> bool:
        return not any(self.entries)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("row counts differ")
        rows = [ra + rb for ra, rb in zip(self.to_rows(), other.to_rows())]
        return ExactMatrix.from_rows(rows, cols=self.cols + other.cols)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        c = self.cols
        e = tuple(self.entries[i * c + j] for i in rows for j in cols)
        return ExactMatrix(len(rows), len(cols), e, self.den)._reduced()


# -- integer kernels -----------------------------------------------------------
# These operate on mutable lists of integer rows and destroy their input.


def _bareiss_rank(a: list[list[int]], ncols: int) -> int:
    m = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        row_r = a[r]
        for i in range(r + 1, m):
            row_i = a[i]
            f = row_i[c]
            if f:
                a[i] = [(p * x - f * y) // prev for x, y in zip(row_i, row_r)]
            elif p != prev:
                a[i] = [(p * x) // prev for x in row_i]
        prev = p
        r += 1
    return r


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            a[i] = [(p * x - f * y) // prev for x, y in zip(row_i, row_k)]
        prev = p
    return sign * a[n - 1][n - 1] if n else 1


def _ff_gauss_jordan(a: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """Fraction-free Gauss-Jordan. Returns pivot columns and the common pivot value.

    On exit, pivot row k has the common pivot value in column pivots[k] and
    zeros in every other pivot column.
    """
    m = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        row_r = a[r]
        for i in range(m):
            if i == r:
                continue
            row_i = a[i]
            f = row_i[c]
            a[i] = [(p * x - f * y) // prev for x, y in zip(row_i, row_r)]
        pivots.append(c)
        prev = p
        r += 1
    return pivots, prev


def _rank_mod(a: list[list[int]], ncols: int, p: int) -> int:
    a = [[x % p for x in row] for row in a]
    m = len(a)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        row_r = [x * inv % p for x in a[r]]
        a[r] = row_r
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row_r)]
        r += 1
    return r


def _det_mod(a: list[list[int]], p: int) -> int:
    a = [[x % p for x in row] for row in a]
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        d = a[k][k]
        det = det * d % p
        inv = pow(d, -1, p)
        row_k = a[k]
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row_k)]
    return det % p


# -- public operations -----------------------------------------------------------


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss_rank(m.numerator_rows(), m.cols)


def rank_mod(m: ExactMatrix, p: int) -> int:
    """Rank of the integer numerator matrix over GF(p).

    A lower bound for the rational rank (scaling by the denominator does not
    change rank as long as p does not divide it).
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    return _rank_mod(m.numerator_rows(), m.cols, p)


def random_prime(rng: random.Random, low: int = PRIME_LOW, high: int = PRIME_HIGH) -> int:
    while True:
        c = rng.randrange(low, high) | 1
        if c < high and isprime(c):
            return c


def rank_modular(m: ExactMatrix, seed=0) -> int:
    """Rank over random primes in [2^61, 2^62).

    Draws primes until two consecutive draws agree; the result never exceeds
    the rational rank and equals it with overwhelming probability.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    last = None
    best = 0
    while True:
        p = random_prime(rng)
        if m.den % p == 0:
            continue
        r = rank_mod(m, p)
        best = max(best, r)
        if r == last:
            return best
        last = r


def determinant(m: ExactMatrix) -> Fraction:
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    d = _bareiss_det(m.numerator_rows())
    return Fraction(d, m.den ** m.rows)


def det_mod(m: ExactMatrix, p: int) -> int:
    """Determinant of the numerator matrix modulo p."""
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    return _det_mod(m.numerator_rows(), p)


def nullspace_basis(m: ExactMatrix) -> list[ExactMatrix]:
    """Integer basis of the right kernel, one column vector per free column.

    The basis vectors form a column-reduced echelon family: vector k is the
    only one nonzero at its free column, so the output is canonical.
    """
    n = m.cols
    if n == 0:
        return []
    a = m.numerator_rows() if m.rows else []
    pivots, d = _ff_gauss_jordan(a, n)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = d
        for k, c in enumerate(pivots):
            v[c] = -a[k][f]
        g = reduce(gcd, v)
        v = [x // g for x in v]
        basis.append(ExactMatrix(n, 1, tuple(v)))
    return basis


def column_space_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns of m at the pivot positions of its echelon form."""
    if m.rows == 0 or m.cols == 0:
        return ExactMatrix.zeros(m.rows, 0)
    pivots, _ = _ff_gauss_jordan(m.numerator_rows(), m.cols)
    return m.submatrix(range(m.rows), pivots)
