"""
Coxeter systems, their elements, and exact arithmetic backends.

Every element is stored as a backend *state*: a hashable, canonical value on
which right/left multiplication by a generator and the descent tests are
exact.  Three backends are available:

* ``permutation-type-A``: one-line notation of a permutation of ``1..n``,
  used when the matrix is the path ``A_{n-1}`` in matrix order;
* ``dihedral-special``: ``(first letter, length)`` of the alternating reduced
  word, used for every other rank-two matrix (including ``m = inf``);
* ``integer-cartan``: the matrices of ``w`` and ``w^{-1}`` acting on the root
  lattice of an integral generalised Cartan matrix, used when every
  off-diagonal entry is 2, 3, 4, 6 or infinity.

The canonical word of an element is its ShortLex-least reduced word, found
greedily from the smallest left descent.

>>> W = CoxeterSystem.from_type("A", 2)
>>> W.element("2 1 2").word
(1, 2, 1)
>>> W.element("1 2") * W.element("2 1") == W.identity
True
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Iterator, Sequence, Union

from .errors import (
    CapExceeded,
    InfiniteGroup,
    InvalidMatrix,
    InvalidWord,
    SystemMismatch,
    UnsupportedMatrix,
)

__all__ = [
    "INF", "Word", "parse_word", "format_word",
    "CoxeterMatrix", "CoxeterSystem", "Element", "ElementSet", "Reflection",
    "is_reflection", "reduced_words",
]

INF = math.inf

Word = tuple[int, ...]
WordLike = Union[str, Sequence[int]]

# memo tables stop growing past this size (infinite groups)
_CACHE_LIMIT = 1_000_000

_INF_TOKENS = {"inf", "infinity", "oo", "∞"}


def parse_word(text: WordLike) -> Word:
    """Turn ``"1 2 1"`` (or any sequence of ints) into a tuple of letters."""
    if isinstance(text, str):
        tokens = text.replace(",", " ").split()
        if tokens == ["e"]:
            return ()
        try:
            return tuple(int(tok) for tok in tokens)
        except ValueError:
            raise InvalidWord(f"cannot parse word {text!r}") from None
    return tuple(int(a) for a in text)


def format_word(word: Sequence[int], identity: str = "") -> str:
    return " ".join(str(a) for a in word) if word else identity


def _parse_entry(value: Any) -> float | int:
    if value is None:
        return INF
    if isinstance(value, str):
        if value.strip().lower() in _INF_TOKENS:
            return INF
        value = int(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        if not value.is_integer():
            raise InvalidMatrix(f"non-integral Coxeter entry {value!r}")
        value = int(value)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidMatrix(f"bad Coxeter entry {value!r}")
    return value


@dataclass(frozen=True)
class CoxeterMatrix:
    """A symmetric table ``m[i][j]`` with ones on the diagonal.

    Entries are ints or ``INF``.  Indices in the public API are 1-based.
    """

    entries: tuple[tuple[float | int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_parse_entry(x) for x in row) for row in self.entries)
        r = len(rows)
        if r == 0:
            raise InvalidMatrix("rank must be positive")
        for i, row in enumerate(rows):
            if len(row) != r:
                raise InvalidMatrix("Coxeter matrix must be square")
            for j, m in enumerate(row):
                if i == j and m != 1:
                    raise InvalidMatrix(f"diagonal entry m[{i+1}][{j+1}] must be 1")
                if i != j and m < 2:
                    raise InvalidMatrix(f"off-diagonal entry m[{i+1}][{j+1}] must be >= 2")
                if rows[j][i] != m:
                    raise InvalidMatrix("Coxeter matrix must be symmetric")
        object.__setattr__(self, "entries", rows)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def m(self, i: int, j: int) -> float | int:
        return self.entries[i - 1][j - 1]

    @classmethod
    def from_type(cls, kind: str, rank: int | None = None, m: Any = None) -> CoxeterMatrix:
        """Standard labellings: ``A_n`` path, ``B_n`` with ``m_12 = 4``,
        ``D_n`` with nodes ``n-1`` and ``n`` both attached to ``n-2``,
        and ``I2(m)``."""
        kind = kind.upper()
        if kind == "I2":
            if rank not in (None, 2):
                raise InvalidMatrix("I2 has rank 2")
            if m is None:
                raise InvalidMatrix("I2 needs m")
            return cls(((1, m), (m, 1)))
        if rank is None or rank < 1:
            raise InvalidMatrix(f"type {kind} needs a positive rank")
        table = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]

        def link(i: int, j: int, value: int) -> None:
            table[i - 1][j - 1] = table[j - 1][i - 1] = value

        if kind == "A":
            for i in range(1, rank):
                link(i, i + 1, 3)
        elif kind in ("B", "C"):
            if rank < 2:
                raise InvalidMatrix("type B needs rank >= 2")
            link(1, 2, 4)
            for i in range(2, rank):
                link(i, i + 1, 3)
        elif kind == "D":
            if rank < 3:
                raise InvalidMatrix("type D needs rank >= 3")
            for i in range(1, rank - 1):
                link(i, i + 1, 3)
            link(rank - 2, rank, 3)
        else:
            raise InvalidMatrix(f"unknown Cartan type {kind!r}")
        return cls(tuple(tuple(row) for row in table))

    @classmethod
    def from_json(cls, data: str | dict) -> CoxeterMatrix:
        """Accept ``{"type": "A", "rank": 3}``, ``{"type": "I2", "m": 5}``
        or ``{"matrix": [[1, 3], [3, 1]]}`` (``null``/``"inf"`` = infinity)."""
        if isinstance(data, str):
            data = json.loads(data)
        if "matrix" in data:
            return cls(tuple(tuple(row) for row in data["matrix"]))
        if "type" not in data:
            raise InvalidMatrix("system JSON needs 'type' or 'matrix'")
        return cls.from_type(data["type"], data.get("rank"), data.get("m"))

    def is_type_a(self) -> bool:
        r = self.rank
        return all(
            self.entries[i][j] == (1 if i == j else 3 if abs(i - j) == 1 else 2)
            for i in range(r) for j in range(r)
        )

    def to_json(self) -> list[list[int | str]]:
        return [["inf" if x == INF else int(x) for x in row] for row in self.entries]


# ---------------------------------------------------------------------------
# backends


class _PermutationBackend:
    tag = "permutation-type-A"

    def __init__(self, rank: int):
        self.n = rank + 1
        self.identity = tuple(range(1, self.n + 1))

    def rmul(self, w, i):
        w = list(w)
        w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def lmul(self, w, i):
        return tuple(i + 1 if a == i else i if a == i + 1 else a for a in w)

    def rdes(self, w, i):
        return w[i - 1] > w[i]

    def ldes(self, w, i):
        return w.index(i + 1) < w.index(i)

    def inverse(self, w):
        inv = [0] * self.n
        for pos, a in enumerate(w, 1):
            inv[a - 1] = pos
        return tuple(inv)

    def compose(self, a, b):
        return tuple(a[k - 1] for k in b)

    def order(self):
        return math.factorial(self.n)

    def is_finite(self):
        return True

    def root_witness(self, t):
        # t is a transposition (a b); its root is e_a - e_b
        moved = [k for k in range(1, self.n + 1) if t[k - 1] != k]
        vec = [0] * self.n
        vec[moved[0] - 1], vec[moved[1] - 1] = 1, -1
        return tuple(vec)


class _DihedralBackend:
    """State ``(first, k)``: alternating word of length ``k`` starting with
    ``first``; identity is ``(0, 0)``, the longest element is ``(1, m)``."""

    tag = "dihedral-special"
    identity = (0, 0)

    def __init__(self, m: float | int):
        self.m = m

    def _canon(self, first, k):
        if k == 0:
            return (0, 0)
        if k == self.m:
            return (1, k)
        return (first, k)

    @staticmethod
    def _last(first, k):
        return first if k % 2 else 3 - first

    def rmul(self, w, s):
        first, k = w
        if k == 0:
            return self._canon(s, 1)
        if k == self.m:
            g = 1 if self._last(1, k) == s else 2
            return self._canon(g, k - 1)
        if self._last(first, k) == s:
            return self._canon(first, k - 1)
        return self._canon(first, k + 1)

    def lmul(self, w, s):
        first, k = w
        if k == 0:
            return self._canon(s, 1)
        if k == self.m:
            return self._canon(3 - s, k - 1)
        if first == s:
            return self._canon(3 - s, k - 1)
        return self._canon(s, k + 1)

    def rdes(self, w, s):
        first, k = w
        return k == self.m or (k > 0 and self._last(first, k) == s)

    def ldes(self, w, s):
        first, k = w
        return k == self.m or (k > 0 and first == s)

    def inverse(self, w):
        first, k = w
        return self._canon(self._last(first, k), k) if k else w

    def compose(self, a, b):
        first, k = b
        out = a
        for step in range(k):
            out = self.rmul(out, first if step % 2 == 0 else 3 - first)
        return out

    def order(self):
        return None if self.m == INF else 2 * int(self.m)

    def is_finite(self):
        return self.m != INF

    def root_witness(self, t):
        # positive roots sit at angles k*pi/m, alpha_1 at k = 0, alpha_2 at k = m-1
        first, k = t
        j = (k - 1) // 2
        if first == 1:
            return (j,)
        if self.m == INF:
            return (-(j + 1),)
        return (int(self.m) - 1 - j,)


_CARTAN_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3}


def _cartan_from_coxeter(matrix: CoxeterMatrix) -> tuple[tuple[int, ...], ...]:
    """Integral generalised Cartan matrix with ``a_ij * a_ji`` fixed by ``m_ij``."""
    r = matrix.rank
    a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            m = matrix.entries[i][j]
            if m == INF:
                a[i][j] = a[j][i] = -2
            elif m in _CARTAN_PRODUCT:
                prod = _CARTAN_PRODUCT[m]
                if prod:
                    a[i][j], a[j][i] = -1, -prod
            else:
                raise UnsupportedMatrix(
                    f"m[{i+1}][{j+1}] = {m} has no integral realisation in rank {r}"
                )
    return tuple(tuple(row) for row in a)


def _negative(column) -> bool:
    for x in column:
        if x:
            return x < 0
    return False


class _CartanBackend:
    """``w`` acts on the root lattice by ``s_i(alpha_j) = alpha_j - a_ij alpha_i``.

    The action is faithful (a trivially acting ``w`` has no descents), so the
    pair of matrices ``(w, w^{-1})`` is a canonical state.
    """

    tag = "integer-cartan"

    def __init__(self, cartan):
        self.a = cartan
        self.r = len(cartan)
        ident = tuple(tuple(int(i == j) for j in range(self.r)) for i in range(self.r))
        self.identity = (ident, ident)
        self._finite: bool | None = None
        self._order: int | None = None
        # pure-function memo tables; duplicate writes are harmless
        self._rmemo: dict = {}
        self._lmemo: dict = {}
        self._dmemo: dict = {}

    def _right(self, mat, i):
        # mat @ S_i: column j becomes col_j - a_ij col_i
        i -= 1
        ai = self.a[i]
        return tuple(
            tuple(row[j] - ai[j] * row[i] for j in range(self.r)) for row in mat
        )

    def _left(self, mat, i):
        # S_i @ mat: only row i changes
        i -= 1
        ai = self.a[i]
        new_row = tuple(
            mat[i][c] - sum(ai[j] * mat[j][c] for j in range(self.r))
            for c in range(self.r)
        )
        return mat[:i] + (new_row,) + mat[i + 1:]

    def rmul(self, w, i):
        key = (w, i)
        hit = self._rmemo.get(key)
        if hit is None:
            hit = (self._right(w[0], i), self._left(w[1], i))
            if len(self._rmemo) < _CACHE_LIMIT:
                self._rmemo[key] = hit
        return hit

    def lmul(self, w, i):
        key = (w, i)
        hit = self._lmemo.get(key)
        if hit is None:
            hit = (self._left(w[0], i), self._right(w[1], i))
            if len(self._lmemo) < _CACHE_LIMIT:
                self._lmemo[key] = hit
        return hit

    def _descents(self, mat):
        hit = self._dmemo.get(mat)
        if hit is None:
            hit = tuple(_negative([row[i] for row in mat]) for i in range(self.r))
            if len(self._dmemo) < _CACHE_LIMIT:
                self._dmemo[mat] = hit
        return hit

    def rdes(self, w, i):
        return self._descents(w[0])[i - 1]

    def ldes(self, w, i):
        return self._descents(w[1])[i - 1]

    def inverse(self, w):
        return (w[1], w[0])

    def compose(self, a, b):
        def mm(x, y):
            return tuple(
                tuple(sum(x[i][k] * y[k][j] for k in range(self.r)) for j in range(self.r))
                for i in range(self.r)
            )
        return (mm(a[0], b[0]), mm(b[1], a[1]))

    def _reflect(self, vec, i):
        i -= 1
        pairing = sum(self.a[i][j] * vec[j] for j in range(self.r))
        return vec[:i] + (vec[i] - pairing,) + vec[i + 1:]

    def is_finite(self):
        if self._finite is None:
            # largest finite root system of rank r has max(r^2, 120) positive roots
            bound = max(self.r * self.r, 120)
            simple = [tuple(int(i == j) for j in range(self.r)) for i in range(self.r)]
            seen = set(simple)
            queue = deque(simple)
            while queue and len(seen) <= bound:
                beta = queue.popleft()
                for i in range(1, self.r + 1):
                    if beta == simple[i - 1]:
                        continue
                    gamma = self._reflect(beta, i)
                    if gamma not in seen:
                        seen.add(gamma)
                        queue.append(gamma)
            self._finite = len(seen) <= bound
        return self._finite

    def order(self):
        """Orbit size of a strictly dominant vector (free orbit)."""
        if not self.is_finite():
            return None
        if self._order is None:
            coeffs = _solve_rational(self.a, [Fraction(1)] * self.r)
            scale = reduce(math.lcm, (c.denominator for c in coeffs), 1)
            rho = tuple(int(c * scale) for c in coeffs)
            seen = {rho}
            queue = deque([rho])
            while queue:
                v = queue.popleft()
                for i in range(1, self.r + 1):
                    u = self._reflect(v, i)
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
            self._order = len(seen)
        return self._order

    def root_witness(self, t):
        mat = t[0]
        for j in range(self.r):
            col = [mat[i][j] - (i == j) for i in range(self.r)]
            if any(col):
                g = reduce(math.gcd, (abs(x) for x in col))
                col = [x // g for x in col]
                if _negative(col):
                    col = [-x for x in col]
                return tuple(col)
        raise ValueError("identity is not a reflection")


def _solve_rational(a, rhs):
    """Solve ``a @ x = rhs`` exactly; ``a`` is square and invertible."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _select_backend(matrix: CoxeterMatrix):
    if matrix.is_type_a():
        return _PermutationBackend(matrix.rank)
    if matrix.rank == 2:
        return _DihedralBackend(matrix.entries[0][1])
    return _CartanBackend(_cartan_from_coxeter(matrix))


# ---------------------------------------------------------------------------
# systems and elements


class CoxeterSystem:
    """The pair ``(W, S)`` presented by a Coxeter matrix.

    Systems are immutable; the memo tables they carry only cache values that
    are pure functions of their keys.
    """

    def __init__(self, matrix: CoxeterMatrix | Sequence[Sequence[Any]]):
        if not isinstance(matrix, CoxeterMatrix):
            matrix = CoxeterMatrix(tuple(tuple(row) for row in matrix))
        self.matrix = matrix
        self._backend = _select_backend(matrix)
        self._caches: dict[str, dict] = {}
        self.identity = Element(self, self._backend.identity)
        self._words = self._cache("words")
        self._words[self._backend.identity] = ()

    @classmethod
    def from_type(cls, kind: str, rank: int | None = None, m: Any = None) -> CoxeterSystem:
        return cls(CoxeterMatrix.from_type(kind, rank, m))

    @classmethod
    def from_json(cls, data: str | dict) -> CoxeterSystem:
        return cls(CoxeterMatrix.from_json(data))

    def _cache(self, name: str) -> dict:
        return self._caches.setdefault(name, {})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoxeterSystem) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.matrix.to_json()}, realization={self.realization!r})"

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def realization(self) -> str:
        return self._backend.tag

    @property
    def is_finite(self) -> bool:
        return self._backend.is_finite()

    @property
    def order(self) -> int | None:
        """Group order from the backend's own count, ``None`` if infinite."""
        return self._backend.order()

    @property
    def generators(self) -> tuple[Element, ...]:
        return tuple(self.s(i) for i in range(1, self.rank + 1))

    def s(self, i: int) -> Element:
        self._check_letter(i)
        return Element(self, self._backend.rmul(self._backend.identity, i))

    def _check_letter(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise InvalidWord(f"generator index {i} outside 1..{self.rank}")

    def normal_form(self, word: WordLike) -> Element:
        """The element represented by ``word`` (letters multiplied left to right)."""
        letters = parse_word(word)
        b = self._backend
        state = b.identity
        for a in letters:
            self._check_letter(a)
            state = b.rmul(state, a)
        return Element(self, state)

    element = normal_form

    # -- state-level primitives used by the algorithm modules ---------------

    def _word_of(self, state) -> Word:
        word = self._words.get(state)
        if word is not None:
            return word
        b = self._backend
        letters = []
        trail = []
        cur = state
        while True:
            known = self._words.get(cur)
            if known is not None:
                break
            trail.append(cur)
            i = next(i for i in range(1, self.rank + 1) if b.ldes(cur, i))
            letters.append(i)
            cur = b.lmul(cur, i)
        full = tuple(letters) + known
        if len(self._words) < _CACHE_LIMIT:
            for k, st in enumerate(trail):
                self._words[st] = full[k:]
        return full

    def _length_of(self, state) -> int:
        return len(self._word_of(state))

    def _rmul(self, state, i):
        return self._backend.rmul(state, i)

    def _lmul(self, state, i):
        return self._backend.lmul(state, i)

    def _rdes(self, state, i) -> bool:
        return self._backend.rdes(state, i)

    def _ldes(self, state, i) -> bool:
        return self._backend.ldes(state, i)

    def _first_rdes(self, state) -> int | None:
        for i in range(1, self.rank + 1):
            if self._backend.rdes(state, i):
                return i
        return None

    def _wrap(self, state) -> Element:
        return Element(self, state)

    # -- finite-group machinery ---------------------------------------------

    def enumerate(self, cap: int | None = None) -> ElementSet:
        """All elements, breadth-first from the identity.

        Raises ``InfiniteGroup`` for an infinite group without ``cap`` and
        ``CapExceeded`` when the group has more than ``cap`` elements.
        """
        if cap is None and not self.is_finite:
            raise InfiniteGroup("enumeration of an infinite Coxeter group needs a cap")
        cached = self._cache("enumeration").get("all")
        if cached is not None:
            if cap is not None and len(cached) > cap:
                raise CapExceeded(f"group has {len(cached)} > {cap} elements")
            return cached
        b = self._backend
        seen = {b.identity}
        queue = deque([b.identity])
        while queue:
            x = queue.popleft()
            for i in range(1, self.rank + 1):
                y = b.rmul(x, i)
                if y not in seen:
                    seen.add(y)
                    if cap is not None and len(seen) > cap:
                        raise CapExceeded(f"more than {cap} elements")
                    queue.append(y)
        result = ElementSet(Element(self, st) for st in seen)
        self._cache("enumeration")["all"] = result
        return result

    def _require_finite(self, what: str) -> None:
        if not self.is_finite:
            raise InfiniteGroup(f"{what} requires a finite Coxeter group")

    def reflections(self) -> tuple[Reflection, ...]:
        """Every conjugate ``w s w^{-1}`` of a generator, each once."""
        self._require_finite("reflections")
        cached = self._cache("reflections").get("all")
        if cached is not None:
            return cached
        b = self._backend
        found = {}
        for w in self.enumerate():
            winv = b.inverse(w._state)
            for i in range(1, self.rank + 1):
                t = b.compose(b.rmul(w._state, i), winv)
                if t not in found:
                    found[t] = Reflection(Element(self, t), b.root_witness(t))
        result = tuple(sorted(found.values(), key=lambda r: r.element.sort_key))
        self._cache("reflections")["all"] = result
        return result

    def longest_element(self) -> Element:
        self._require_finite("the longest element")
        b = self._backend
        state = b.identity
        while True:
            i = next((i for i in range(1, self.rank + 1) if not b.rdes(state, i)), None)
            if i is None:
                return Element(self, state)
            state = b.rmul(state, i)


class Element:
    """A group element; equality and hashing go through the canonical state."""

    __slots__ = ("system", "_state")

    def __init__(self, system: CoxeterSystem, state):
        self.system = system
        self._state = state

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._state == other._state and self.system == other.system

    def __hash__(self) -> int:
        return hash(self._state)

    def __repr__(self) -> str:
        return f"Element({format_word(self.word)!r})"

    def __str__(self) -> str:
        return format_word(self.word, identity="e")

    def __reduce__(self):
        return (_rebuild_element, (self.system.matrix, self.word))

    @property
    def word(self) -> Word:
        """ShortLex-least reduced word."""
        return self.system._word_of(self._state)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sort_key(self) -> tuple[int, Word]:
        w = self.word
        return (len(w), w)

    @property
    def is_identity(self) -> bool:
        return self._state == self.system._backend.identity

    def _same_system(self, other: Element) -> None:
        if self.system is not other.system and self.system != other.system:
            raise SystemMismatch("elements belong to different Coxeter systems")

    def __mul__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        self._same_system(other)
        return Element(self.system, self.system._backend.compose(self._state, other._state))

    def inverse(self) -> Element:
        return Element(self.system, self.system._backend.inverse(self._state))

    def right_mul(self, s: int) -> Element:
        self.system._check_letter(s)
        return Element(self.system, self.system._rmul(self._state, s))

    def left_mul(self, s: int) -> Element:
        self.system._check_letter(s)
        return Element(self.system, self.system._lmul(self._state, s))

    def has_right_descent(self, s: int) -> bool:
        self.system._check_letter(s)
        return self.system._rdes(self._state, s)

    def has_left_descent(self, s: int) -> bool:
        self.system._check_letter(s)
        return self.system._ldes(self._state, s)

    def right_descents(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.system.rank + 1)
                         if self.system._rdes(self._state, i))

    def left_descents(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.system.rank + 1)
                         if self.system._ldes(self._state, i))


def _rebuild_element(matrix: CoxeterMatrix, word: Word) -> Element:
    return CoxeterSystem(matrix).normal_form(word)


@dataclass(frozen=True)
class Reflection:
    element: Element
    root: tuple[int, ...]


class ElementSet:
    """Finite set of elements kept in (length, ShortLex) order."""

    __slots__ = ("_items", "_members")

    def __init__(self, elements: Iterable[Element] = ()):
        members = frozenset(elements)
        self._members = members
        self._items = tuple(sorted(members, key=lambda e: e.sort_key))

    def __iter__(self) -> Iterator[Element]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: object) -> bool:
        return item in self._members

    def __getitem__(self, index: int) -> Element:
        return self._items[index]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ElementSet):
            return self._members == other._members
        if isinstance(other, (set, frozenset)):
            return self._members == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __le__(self, other: ElementSet) -> bool:
        return self._members <= frozenset(other)

    def __or__(self, other: Iterable[Element]) -> ElementSet:
        return ElementSet(self._members | frozenset(other))

    def __sub__(self, other: Iterable[Element]) -> ElementSet:
        return ElementSet(self._members - frozenset(other))

    def __and__(self, other: Iterable[Element]) -> ElementSet:
        return ElementSet(self._members & frozenset(other))

    def __repr__(self) -> str:
        return "ElementSet([" + ", ".join(repr(format_word(e.word)) for e in self._items) + "])"

    def issubset(self, other: Iterable[Element]) -> bool:
        return self._members <= frozenset(other)

    def words(self) -> list[str]:
        return [format_word(e.word) for e in self._items]


def is_reflection(t: Element) -> bool:
    """True iff ``t`` is conjugate to a generator.

    Conjugating a reflection by one of its left descents shortens it by two,
    so peel descents off until a generator remains.  Works in infinite groups.
    """
    W = t.system
    state = t._state
    length = W._length_of(state)
    if length % 2 == 0:
        return False
    while length > 1:
        s = next(i for i in range(1, W.rank + 1) if W._ldes(state, i))
        conj = W._rmul(W._lmul(state, s), s)
        if W._length_of(conj) != length - 2:
            return False
        state, length = conj, length - 2
    return True


def reduced_words(e: Element) -> Iterator[Word]:
    """Every reduced word of ``e``, in lexicographic order."""
    W = e.system

    def rec(state) -> Iterator[Word]:
        if state == W._backend.identity:
            yield ()
            return
        for i in range(1, W.rank + 1):
            if W._ldes(state, i):
                for rest in rec(W._lmul(state, i)):
                    yield (i,) + rest

    return rec(e._state)
