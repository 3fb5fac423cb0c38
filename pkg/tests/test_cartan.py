from __future__ import annotations

import itertools

import numpy as np
import pytest

from coxconv.errors import FieldTooSmall, NotInIntersection
from coxconv.geometry import (
    MatrixGF,
    TorusElement,
    all_permutations,
    cartan_equivariance_check,
    cartan_equivariance_summary,
    enumerate_flags,
    intersection_elements,
    permutation_flag,
    relpos,
    standard_flag,
    torus_transport,
    transport_factors_through_unipotent,
)
from coxconv.geometry.flags import perm_length


def brute_intersection(f1, f2):
    n, p = f1.n, f1.p
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        g = MatrixGF(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)), p)
        if g.rank() == n and f1.stabilized_by(g) and f2.stabilized_by(g):
            out.append(g)
    return out


def test_transport_examples():
    E = standard_flag(2, 3)
    b = MatrixGF.diagonal((1, 2), 3)
    assert torus_transport(E, E, b) == (TorusElement((1, 2), 3), TorusElement((1, 2), 3))
    swap = permutation_flag((2, 1), 3)
    assert relpos(E, swap) == (2, 1)
    t1, t2 = torus_transport(E, swap, b)
    assert t1.diagonal == (1, 2) and t2.diagonal == (2, 1)
    assert t2 == t1.permuted((2, 1))


def test_transport_errors():
    E2 = standard_flag(2, 2)
    with pytest.raises(FieldTooSmall):
        torus_transport(E2, E2, MatrixGF.identity(2, 2))
    with pytest.raises(FieldTooSmall):
        cartan_equivariance_check((1, 2), 2, 2)
    E = standard_flag(2, 3)
    lower = MatrixGF.from_rows([[1, 0], [1, 1]], 3)
    with pytest.raises(NotInIntersection):
        torus_transport(E, E, lower)
    with pytest.raises(NotInIntersection):
        torus_transport(E, permutation_flag((2, 1), 3), MatrixGF.from_rows([[1, 1], [0, 1]], 3))
    with pytest.raises(ValueError):
        TorusElement((1, 0), 3)


def test_intersection_matches_brute_force_n2():
    flags = enumerate_flags(2, 3)
    for f1, f2 in itertools.product(flags, repeat=2):
        fast = set(intersection_elements(f1, f2))
        assert fast == set(brute_intersection(f1, f2))
        w = relpos(f1, f2)
        assert len(fast) == 2 ** 2 * 3 ** (1 - perm_length(w))
        for b in fast:
            t1, t2 = torus_transport(f1, f2, b)
            assert t2 == t1.permuted(w)


def test_exhaustive_s1s2_at_n3():
    w = (2, 3, 1)
    flags = enumerate_flags(3, 3)
    pairs = [(f1, f2) for f1 in flags for f2 in flags if relpos(f1, f2) == w]
    assert len(pairs) == 52 * 3 ** 2
    f1, f2 = pairs[5]
    elems = intersection_elements(f1, f2)
    assert set(elems) == set(brute_intersection(f1, f2))
    images = set()
    for f1, f2 in pairs[:40]:
        for b in intersection_elements(f1, f2):
            t1, t2 = torus_transport(f1, f2, b)
            assert t2 == t1.permuted(w)
            images.add(t1.diagonal)
    assert len(images) == 8
    summary = cartan_equivariance_summary(w, 3, 3)
    assert summary["ok"] and summary["pairs"] == len(pairs)
    assert summary["elements"] == len(pairs) * 8 * 3 ** (3 - 2)


@pytest.mark.parametrize("n", [2, 3])
def test_equivariance_all_w(n):
    for w in all_permutations(n):
        assert cartan_equivariance_check(w, n, 3)


def test_wrong_permutation_is_detected():
    # a pair in position s1 must not be equivariant under the identity
    E = standard_flag(2, 3)
    swap = permutation_flag((2, 1), 3)
    b = MatrixGF.diagonal((1, 2), 3)
    t1, t2 = torus_transport(E, swap, b)
    assert t2 != t1.permuted((1, 2))


def test_transport_factors_through_unipotent():
    flags = enumerate_flags(3, 3)
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, len(flags), size=(30, 2)):
        assert transport_factors_through_unipotent(flags[a], flags[b])
