"""
Full flags in ``F_p^n``, their relative position, and orbit convolution.

Permutations are one-line tuples of ``1..n``.  The convention is
``relpos(E, w.E) = w`` where ``E`` is the coordinate flag and ``w.E`` has
``V_i = span(e_w(1), ..., e_w(i))``; it agrees with the Coxeter kernel's
type-A convention (``w s_i`` swaps positions ``i`` and ``i+1``), so
``relpos(E, w1 w2 . E)`` is the group product ``w1 w2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from ..coxeter import CoxeterSystem, Element
from ..errors import CapExceeded, DimensionMismatch
from .field import MatrixGF, PrimeField, row_space

Permutation = tuple[int, ...]

__all__ = [
    "Permutation", "Flag", "flag_caps_ok", "enumerate_flags", "standard_flag",
    "permutation_flag", "relpos", "rank_table", "geometric_convolve",
    "geometric_convolution_table", "schubert_count", "perm_to_element",
    "element_to_perm", "all_permutations", "perm_length",
]


def _field(field: PrimeField | int) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


def flag_caps_ok(n: int, p: int) -> bool:
    return n >= 1 and ((p == 2 and n <= 4) or (p in (3, 5) and n <= 3))


def _check_caps(n: int, p: int) -> None:
    if not flag_caps_ok(n, p):
        raise CapExceeded(f"flag enumeration capped at n<=4 for p=2 and n<=3 for p=3,5 (got n={n}, p={p})")


@dataclass(frozen=True)
class Flag:
    """``V_1 < ... < V_{n-1}``, each stored by its reduced echelon basis."""

    n: int
    p: int
    subspaces: tuple[MatrixGF, ...]

    def __post_init__(self) -> None:
        if len(self.subspaces) != max(self.n - 1, 0):
            raise DimensionMismatch("a full flag in dimension n has n-1 proper subspaces")
        canon = tuple(row_space(v) for v in self.subspaces)
        for i, v in enumerate(canon, 1):
            if v.cols != self.n or v.p != self.p or v.rows != i:
                raise DimensionMismatch(f"V_{i} must be an {i}-dimensional subspace of F_{self.p}^{self.n}")
            if i > 1 and v.stack(canon[i - 2]).rank() != i:
                raise DimensionMismatch(f"V_{i-1} is not contained in V_{i}")
        object.__setattr__(self, "subspaces", canon)

    @classmethod
    def from_basis(cls, vectors: Sequence[Sequence[int]], p: int) -> Flag:
        """Flag with ``V_i`` spanned by the first ``i`` vectors."""
        n = len(vectors)
        mats = tuple(MatrixGF.from_rows(vectors[:i], p, n) for i in range(1, n))
        return cls(n, p, mats)

    def V(self, i: int) -> MatrixGF:
        if i == 0:
            return MatrixGF((), self.p, self.n)
        if i == self.n:
            return MatrixGF.identity(self.n, self.p)
        return self.subspaces[i - 1]

    def adapted_basis(self) -> tuple[tuple[int, ...], ...]:
        """Vectors ``v_1..v_n`` with ``V_i = span(v_1..v_i)``."""
        basis: list[tuple[int, ...]] = []
        for i in range(1, self.n + 1):
            prev = MatrixGF.from_rows(basis, self.p, self.n)
            for row in self.V(i).entries:
                if prev.stack(MatrixGF((row,), self.p)).rank() == i:
                    basis.append(row)
                    break
        return tuple(basis)

    def translate(self, g: MatrixGF) -> Flag:
        """The flag ``g . F`` (``g`` acting on column vectors)."""
        if g.rows != self.n or g.cols != self.n or g.p != self.p:
            raise DimensionMismatch("matrix and flag sizes differ")
        gt = g.transpose()
        return Flag(self.n, self.p, tuple(v @ gt for v in self.subspaces))

    def stabilized_by(self, g: MatrixGF) -> bool:
        return self.translate(g) == self

    def to_json(self) -> list[list[list[int]]]:
        return [v.tolist() for v in self.subspaces]

    @classmethod
    def from_json(cls, data: list, p: int) -> Flag:
        n = len(data) + 1
        return cls(n, p, tuple(MatrixGF.from_rows(v, p, n) for v in data))


def standard_flag(n: int, field: PrimeField | int) -> Flag:
    p = _field(field).p
    return Flag.from_basis([tuple(int(i == j) for j in range(n)) for i in range(n)], p)


def permutation_flag(w: Permutation, field: PrimeField | int) -> Flag:
    p = _field(field).p
    n = len(w)
    return Flag.from_basis([tuple(int(j == w[i] - 1) for j in range(n)) for i in range(n)], p)


@lru_cache(maxsize=None)
def _enumerate(n: int, p: int) -> tuple[Flag, ...]:
    vectors = [MatrixGF((v,), p) for v in itertools.product(range(p), repeat=n) if any(v)]
    chains: list[tuple[MatrixGF, ...]] = [()]
    for i in range(1, n):
        extended = {}
        for chain in chains:
            prev = chain[-1] if chain else MatrixGF((), p, n)
            for v in vectors:
                bigger = row_space(prev.stack(v))
                if bigger.rows == i:
                    extended.setdefault(chain + (bigger,), None)
        chains = list(extended)
    flags = [Flag(n, p, chain) for chain in chains]
    flags.sort(key=lambda f: tuple(v.entries for v in f.subspaces))
    return tuple(flags)


def enumerate_flags(n: int, field: PrimeField | int) -> list[Flag]:
    """Every full flag in ``F_p^n`` exactly once, in a fixed order."""
    p = _field(field).p
    _check_caps(n, p)
    return list(_enumerate(n, p))


def rank_table(f1: Flag, f2: Flag) -> list[list[int]]:
    """``r[i][j] = dim(V_i(f1) ∩ V_j(f2))`` for ``0 <= i, j <= n``."""
    if f1.n != f2.n or f1.p != f2.p:
        raise DimensionMismatch("flags live in different spaces")
    n = f1.n
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            if i == 0 or j == 0:
                continue
            if i == n or j == n:
                r[i][j] = min(i, j)
            else:
                r[i][j] = i + j - f1.V(i).stack(f2.V(j)).rank()
    return r


def relpos(f1: Flag, f2: Flag) -> Permutation:
    """Relative position, read off the jumps of the rank table."""
    r = rank_table(f1, f2)
    n = f1.n
    w = [0] * n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1] == 1:
                w[j - 1] = i
    return tuple(w)


def all_permutations(n: int) -> list[Permutation]:
    return list(itertools.permutations(range(1, n + 1)))


def perm_length(w: Permutation) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def _membership(flags: Sequence[Flag], i: int, p: int) -> np.ndarray:
    """Boolean ``(len(flags), p**n)`` table: which vectors lie in ``V_i``."""
    n = flags[0].n
    weights = p ** np.arange(n - 1, -1, -1)
    coeffs = np.array(list(itertools.product(range(p), repeat=i)), dtype=np.int64)
    out = np.zeros((len(flags), p ** n), dtype=np.int64)
    for a, f in enumerate(flags):
        vecs = (coeffs @ np.array(f.V(i).entries, dtype=np.int64)) % p
        out[a, vecs @ weights] = 1
    return out


@lru_cache(maxsize=None)
def _relpos_table(n: int, p: int) -> tuple[tuple[Flag, ...], tuple[Permutation, ...], np.ndarray]:
    """Relative position of every ordered pair of flags, as indices into ``perms``.

    ``dim(V_i ∩ V'_j)`` is read off ``|V_i ∩ V'_j| = p^dim``, counted with one
    matrix product of membership tables per ``(i, j)``; the jump rule then runs
    on the whole stack of rank tables at once.
    """
    flags = _enumerate(n, p)
    perms = tuple(all_permutations(n))
    N = len(flags)
    r = np.zeros((n + 1, n + 1, N, N), dtype=np.int64)
    members = {i: _membership(flags, i, p) for i in range(1, n)}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == n or j == n:
                r[i, j] = min(i, j)
            else:
                sizes = members[i] @ members[j].T
                r[i, j] = np.rint(np.log(sizes) / np.log(p)).astype(np.int64)
    jumps = r[1:, 1:] - r[:-1, 1:] - r[1:, :-1] + r[:-1, :-1]
    # w(j) = the i carrying the jump in column j
    images = np.argmax(jumps, axis=0) + 1
    codes = np.zeros((N, N), dtype=np.int64)
    for j in range(n):
        codes = codes * (n + 1) + images[j]
    lookup = {}
    for k, w in enumerate(perms):
        code = 0
        for v in w:
            code = code * (n + 1) + v
        lookup[code] = k
    table = np.vectorize(lookup.__getitem__, otypes=[np.int64])(codes)
    table.setflags(write=False)
    return flags, perms, table


def geometric_convolve(w1: Permutation, w2: Permutation, n: int,
                       field: PrimeField | int) -> frozenset[Permutation]:
    """``{relpos(F1, F2) : relpos(F1, F) = w1, relpos(F, F2) = w2}`` over all flags."""
    p = _field(field).p
    _check_caps(n, p)
    if len(w1) != n or len(w2) != n:
        raise DimensionMismatch("permutations must act on 1..n")
    flags, perms, table = _relpos_table(n, p)
    i1, i2 = perms.index(tuple(w1)), perms.index(tuple(w2))
    found = set()
    for a in range(len(flags)):
        for b in np.flatnonzero(table[a] == i1):
            found.update(table[a, np.flatnonzero(table[b] == i2)].tolist())
    return frozenset(perms[k] for k in found)


def geometric_convolution_table(n: int, field: PrimeField | int) -> dict[tuple[Permutation, Permutation], frozenset[Permutation]]:
    """All convolutions at once, scanning each flag triple a single time."""
    p = _field(field).p
    _check_caps(n, p)
    flags, perms, table = _relpos_table(n, p)
    K = len(perms)
    seen = np.zeros(K * K * K, dtype=bool)
    for b in range(len(flags)):
        # keys (relpos(F1,F), relpos(F,F2), relpos(F1,F2)) for F = flags[b]
        keys = (table[:, b][:, None] * K + table[b][None, :]) * K + table
        seen[keys.ravel()] = True
    out: dict[tuple[Permutation, Permutation], set[Permutation]] = {
        (u, v): set() for u in perms for v in perms
    }
    for key in np.flatnonzero(seen):
        a, rest = divmod(int(key), K * K)
        b, c = divmod(rest, K)
        out[(perms[a], perms[b])].add(perms[c])
    return {k: frozenset(v) for k, v in out.items()}


def schubert_count(w: Permutation, n: int, field: PrimeField | int) -> int:
    """Number of flags in position ``w`` relative to the coordinate flag."""
    p = _field(field).p
    _check_caps(n, p)
    flags, perms, table = _relpos_table(n, p)
    base = flags.index(standard_flag(n, p))
    return int(np.count_nonzero(table[base] == perms.index(tuple(w))))


def perm_to_element(W: CoxeterSystem, w: Permutation) -> Element:
    """The type-A element with one-line notation ``w``."""
    if W.rank != len(w) - 1 or not W.matrix.is_type_a():
        raise DimensionMismatch(f"permutation of {len(w)} letters needs type A_{len(w)-1}")
    cur = list(w)
    letters: list[int] = []
    while True:
        i = next((i for i in range(len(cur) - 1) if cur[i] > cur[i + 1]), None)
        if i is None:
            break
        cur[i], cur[i + 1] = cur[i + 1], cur[i]
        letters.append(i + 1)
    return W.normal_form(letters[::-1])


def element_to_perm(e: Element) -> Permutation:
    if not e.system.matrix.is_type_a():
        raise DimensionMismatch("only type A elements are permutations")
    w = list(range(1, e.system.rank + 2))
    for a in e.word:
        w[a - 1], w[a] = w[a], w[a - 1]
    return tuple(w)


def perms_to_elements(W: CoxeterSystem, perms: Iterable[Permutation]) -> set[Element]:
    return {perm_to_element(W, w) for w in perms}
