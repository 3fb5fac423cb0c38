"""
Transport of torus data between two Borels through their intersection.

For a flag ``F`` the map ``B_F -> T_F`` sends ``b`` to the scalars by which it
acts on the graded pieces ``V_i / V_{i-1}``: the diagonal of ``b`` written in
a basis adapted to ``F``.  Its kernel is the unipotent radical.  An element of
``B_1 ∩ B_2`` therefore has two images, one in each torus, and for a pair in
relative position ``w`` they must satisfy ``t2[i] = t1[w(i)]``.

Over ``F_2`` every torus is trivial, so these checks need ``p >= 3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, FieldTooSmall, NotInIntersection
from .field import MatrixGF, PrimeField, null_space
from .flags import Flag, Permutation, _check_caps, _field, _relpos_table, perm_length

__all__ = [
    "TorusElement", "torus_transport", "intersection_elements",
    "cartan_equivariance_check", "cartan_equivariance_summary",
    "transport_factors_through_unipotent",
]


@dataclass(frozen=True)
class TorusElement:
    diagonal: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        if any(d % self.p == 0 for d in self.diagonal):
            raise ValueError("torus entries must be nonzero")

    def permuted(self, w: Permutation) -> TorusElement:
        """Coordinates ``(t[w(1)], ..., t[w(n)])``."""
        return TorusElement(tuple(self.diagonal[k - 1] for k in w), self.p)


def _adapted_matrix(flag: Flag) -> MatrixGF:
    # columns are an adapted basis
    return MatrixGF(flag.adapted_basis(), flag.p).transpose()


def _require_odd_field(p: int) -> None:
    if p < 3:
        raise FieldTooSmall("torus transport needs p >= 3; over F_2 the torus is trivial")


def torus_transport(f1: Flag, f2: Flag, b: MatrixGF) -> tuple[TorusElement, TorusElement]:
    """Images of ``b ∈ B_1 ∩ B_2`` in the tori of ``f1`` and ``f2``."""
    if f1.n != f2.n or f1.p != f2.p or b.rows != f1.n or b.cols != f1.n or b.p != f1.p:
        raise DimensionMismatch("flags and matrix must share n and p")
    _require_odd_field(f1.p)
    if b.rank() != b.rows:
        raise NotInIntersection("matrix is not invertible")
    if not (f1.stabilized_by(b) and f2.stabilized_by(b)):
        raise NotInIntersection("matrix does not stabilise both flags")
    out = []
    for f in (f1, f2):
        a = _adapted_matrix(f)
        out.append(TorusElement((a.inverse() @ b @ a).diag(), f.p))
    return out[0], out[1]


# -- vectorised helpers for the exhaustive sweeps ---------------------------


def _np(m: MatrixGF) -> np.ndarray:
    return np.array(m.entries, dtype=np.int64).reshape(m.rows, m.cols)


def _upper_triangular(n: int, p: int) -> np.ndarray:
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mats = []
    for diag in itertools.product(range(1, p), repeat=n):
        for upper in itertools.product(range(p), repeat=len(slots)):
            m = np.diag(diag).astype(np.int64)
            for (i, j), x in zip(slots, upper):
                m[i, j] = x
            mats.append(m)
    return np.stack(mats)


def _borel(flag: Flag) -> np.ndarray:
    """Every element of the stabiliser of ``flag``, shape ``(k, n, n)``."""
    a = _adapted_matrix(flag)
    A, Ainv = _np(a), _np(a.inverse())
    return (A @ _upper_triangular(flag.n, flag.p) @ Ainv) % flag.p


def _stabilises(bs: np.ndarray, flag: Flag) -> np.ndarray:
    p = flag.p
    ok = np.ones(len(bs), dtype=bool)
    for i in range(1, flag.n):
        basis = flag.V(i)
        H = _np(null_space(basis))        # V_i = ker H
        images = bs @ _np(basis).T % p    # columns b v for v in V_i
        ok &= ~np.any((H @ images) % p, axis=(1, 2))
    return ok


def _diagonals(bs: np.ndarray, flag: Flag) -> np.ndarray:
    a = _adapted_matrix(flag)
    m = (_np(a.inverse()) @ bs @ _np(a)) % flag.p
    return np.diagonal(m, axis1=1, axis2=2)


def intersection_elements(f1: Flag, f2: Flag) -> list[MatrixGF]:
    """All of ``B_1 ∩ B_2`` as matrices."""
    bs = _borel(f1)
    bs = bs[_stabilises(bs, f2)]
    return [MatrixGF(tuple(map(tuple, b.tolist())), f1.p) for b in bs]


def cartan_equivariance_summary(w: Permutation, n: int, field: PrimeField | int) -> dict:
    """Sweep every flag pair in position ``w`` and every element of ``B_1 ∩ B_2``.

    Besides the equivariance ``t2 = t1 permuted by w`` this records whether
    ``B_1 ∩ B_2 -> T_1`` was onto and whether ``|B_1 ∩ B_2|`` matched
    ``(p-1)^n p^(N - l(w))``.
    """
    p = _field(field).p
    _require_odd_field(p)
    _check_caps(n, p)
    w = tuple(w)
    flags, perms, table = _relpos_table(n, p)
    target = perms.index(w)
    units = (p - 1) ** n
    expected_size = units * p ** (n * (n - 1) // 2 - perm_length(w))
    perm_idx = np.array(w, dtype=np.int64) - 1
    pairs = elements = mismatches = 0
    surjective = sizes_ok = True
    first_failure = None
    for a, f1 in enumerate(flags):
        partners = np.flatnonzero(table[a] == target)
        if not len(partners):
            continue
        b1 = _borel(f1)
        for c in partners:
            f2 = flags[c]
            bs = b1[_stabilises(b1, f2)]
            t1, t2 = _diagonals(bs, f1), _diagonals(bs, f2)
            pairs += 1
            elements += len(bs)
            bad = np.any(t2 != t1[:, perm_idx], axis=1)
            if bad.any():
                mismatches += int(bad.sum())
                if first_failure is None:
                    k = int(np.flatnonzero(bad)[0])
                    first_failure = {"F1": f1.to_json(), "F2": f2.to_json(), "b": bs[k].tolist()}
            if len({tuple(r) for r in t1.tolist()}) != units:
                surjective = False
            if len(bs) != expected_size:
                sizes_ok = False
    return {
        "w": list(w),
        "pairs": pairs,
        "elements": elements,
        "mismatches": mismatches,
        "surjective": surjective,
        "intersection_order_ok": sizes_ok,
        "first_failure": first_failure,
        "ok": pairs > 0 and mismatches == 0 and surjective and sizes_ok,
    }


def cartan_equivariance_check(w: Permutation, n: int, field: PrimeField | int) -> bool:
    return cartan_equivariance_summary(w, n, field)["ok"]


def transport_factors_through_unipotent(f1: Flag, f2: Flag) -> bool:
    """``transport(b u) = transport(b)`` for all ``b`` and unipotent ``u`` in ``B_1 ∩ B_2``."""
    _require_odd_field(f1.p)
    p = f1.p
    bs = _borel(f1)
    bs = bs[_stabilises(bs, f2)]
    t1, t2 = _diagonals(bs, f1), _diagonals(bs, f2)
    unip = np.all(t1 == 1, axis=1)
    # the radical must be unipotent from both sides
    if not np.all(t2[unip] == 1):
        return False
    us = bs[unip]
    prods = (bs[:, None] @ us[None, :]) % p
    flat = prods.reshape(-1, f1.n, f1.n)
    d1 = _diagonals(flat, f1).reshape(len(bs), len(us), f1.n)
    d2 = _diagonals(flat, f2).reshape(len(bs), len(us), f1.n)
    return bool(np.all(d1 == t1[:, None]) and np.all(d2 == t2[:, None]))
