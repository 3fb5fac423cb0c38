"""Prime fields and small dense matrices over them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from ..errors import DimensionMismatch

SUPPORTED_PRIMES = (2, 3, 5)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self) -> None:
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime {self.p}; use one of {SUPPORTED_PRIMES}")

    @property
    def q(self) -> int:
        return self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)

    def units(self) -> range:
        return range(1, self.p)

    def vectors(self, n: int) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.p), repeat=n)


@dataclass(frozen=True)
class MatrixGF:
    """Row-major matrix with entries reduced mod ``p``."""

    entries: tuple[tuple[int, ...], ...]
    p: int
    ncols: int = -1

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) % self.p for x in row) for row in self.entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix")
        ncols = widths.pop() if widths else self.ncols
        if ncols < 0:
            raise DimensionMismatch("an empty matrix needs an explicit column count")
        if rows and self.ncols not in (-1, ncols):
            raise DimensionMismatch("column count disagrees with rows")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, ncols: int = -1) -> MatrixGF:
        return cls(tuple(tuple(r) for r in rows), p, ncols)

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixGF:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), p)

    @classmethod
    def diagonal(cls, diag: Sequence[int], p: int) -> MatrixGF:
        n = len(diag)
        return cls(tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)), p)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        if self.p != other.p or self.cols != other.rows:
            raise DimensionMismatch("incompatible matrix product")
        p = self.p
        cols = other.transpose().entries
        return MatrixGF(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols)
                  for row in self.entries),
            p,
            other.cols,
        )

    def transpose(self) -> MatrixGF:
        e = self.entries
        return MatrixGF(
            tuple(tuple(e[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.p,
            self.rows,
        )

    def stack(self, other: MatrixGF) -> MatrixGF:
        if self.p != other.p or self.cols != other.cols:
            raise DimensionMismatch("cannot stack matrices of different widths")
        return MatrixGF(self.entries + other.entries, self.p, self.cols)

    def rank(self) -> int:
        return len(_echelon(self)[1])

    def inverse(self) -> MatrixGF:
        n = self.rows
        if n != self.cols:
            raise DimensionMismatch("only square matrices are invertible")
        aug = MatrixGF(tuple(r + tuple(int(i == j) for j in range(n))
                             for i, r in enumerate(self.entries)), self.p)
        red, pivots = _echelon(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        return MatrixGF(tuple(r[n:] for r in red[:n]), self.p)

    def diag(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _echelon(m: MatrixGF) -> tuple[list[tuple[int, ...]], list[int]]:
    """Gauss-Jordan elimination; returns reduced rows and pivot columns."""
    p = m.p
    rows = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows], pivots


def rref(m: MatrixGF) -> MatrixGF:
    """Reduced row echelon form, same shape, zero rows last."""
    rows, _ = _echelon(m)
    return MatrixGF(tuple(rows), m.p, m.cols)


def row_space(m: MatrixGF) -> MatrixGF:
    """Canonical basis of the row space: the nonzero rows of ``rref``."""
    rows, pivots = _echelon(m)
    return MatrixGF(tuple(rows[: len(pivots)]), m.p, m.cols)


def null_space(m: MatrixGF) -> MatrixGF:
    """Basis (as rows) of ``{x : m x = 0}``."""
    rows, pivots = _echelon(m)
    p, n = m.p, m.cols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for r, c in enumerate(pivots):
            x[c] = -rows[r][f] % p
        basis.append(tuple(x))
    return MatrixGF(tuple(basis), p, n)


def random_invertible(n: int, p: int, rng) -> MatrixGF:
    while True:
        m = MatrixGF(tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n)), p)
        if m.rank() == n:
            return m
