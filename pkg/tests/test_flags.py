from __future__ import annotations

import itertools
import random

import pytest

from coxconv import CoxeterSystem, convolve
from coxconv.errors import CapExceeded, DimensionMismatch
from coxconv.geometry import (
    Flag,
    MatrixGF,
    all_permutations,
    element_to_perm,
    enumerate_flags,
    geometric_convolution_table,
    geometric_convolve,
    perm_to_element,
    permutation_flag,
    relpos,
    schubert_count,
    standard_flag,
)
from coxconv.geometry.field import random_invertible
from coxconv.geometry.flags import perm_length, rank_table


def flag_total(n, q):
    total = 1
    for i in range(1, n + 1):
        total *= (q ** i - 1) // (q - 1)
    return total


def inverse_perm(w):
    out = [0] * len(w)
    for i, v in enumerate(w, 1):
        out[v - 1] = i
    return tuple(out)


@pytest.mark.parametrize("n,p,count", [(2, 2, 3), (2, 3, 4), (2, 5, 6), (3, 2, 21), (3, 3, 52), (4, 2, 315)])
def test_flag_counts(n, p, count):
    flags = enumerate_flags(n, p)
    assert len(flags) == count == flag_total(n, p)
    assert len(set(flags)) == count


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_flags(5, 2)
    with pytest.raises(CapExceeded):
        enumerate_flags(4, 3)
    with pytest.raises(CapExceeded):
        geometric_convolve((1, 2, 3, 4), (1, 2, 3, 4), 4, 3)


def test_flag_validation():
    with pytest.raises(DimensionMismatch):
        Flag(3, 2, (MatrixGF.from_rows([[1, 0, 0]], 2),))
    with pytest.raises(DimensionMismatch):
        Flag(3, 2, (MatrixGF.from_rows([[1, 0, 0]], 2), MatrixGF.from_rows([[0, 1, 0], [0, 0, 1]], 2)))


def test_json_round_trip():
    for f in enumerate_flags(3, 3):
        assert Flag.from_json(f.to_json(), 3) == f


def test_relpos_examples():
    E = standard_flag(3, 2)
    assert relpos(E, E) == (1, 2, 3)
    rev = Flag.from_basis([(0, 0, 1), (0, 1, 0), (1, 0, 0)], 2)
    assert relpos(E, rev) == (3, 2, 1)
    a = Flag.from_basis([(1, 0), (0, 1)], 2)
    b = Flag.from_basis([(1, 1), (0, 1)], 2)
    assert relpos(a, b) == (2, 1)
    with pytest.raises(DimensionMismatch):
        relpos(E, standard_flag(2, 2))


@pytest.mark.parametrize("n,p", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_relpos_of_permutation_flags(n, p):
    E = standard_flag(n, p)
    for w in all_permutations(n):
        assert relpos(E, permutation_flag(w, p)) == w


def test_rank_table_jump_rule_gives_a_permutation():
    flags = enumerate_flags(3, 2)
    for f1, f2 in itertools.product(flags, repeat=2):
        r = rank_table(f1, f2)
        assert r[0][0] == 0 and r[3][3] == 3
        w = relpos(f1, f2)
        # r_ij counts k <= i with w(k) <= j
        for i, j in itertools.product(range(4), repeat=2):
            assert r[i][j] == sum(1 for k in range(j) if w[k] <= i)


def test_relpos_inverse_symmetry_and_schubert_sizes():
    flags = enumerate_flags(3, 2)
    for f1, f2 in itertools.product(flags, repeat=2):
        assert relpos(f2, f1) == inverse_perm(relpos(f1, f2))


def test_relpos_g_invariance():
    rng = random.Random(7)
    for n, p in [(3, 2), (3, 3), (4, 2)]:
        flags = enumerate_flags(n, p)
        for _ in range(40):
            g = random_invertible(n, p, rng)
            f1, f2 = rng.choice(flags), rng.choice(flags)
            assert relpos(f1.translate(g), f2.translate(g)) == relpos(f1, f2)


def test_product_of_permutation_flags():
    # relpos(E, w1 w2 E) is the group product, matching the Coxeter kernel
    W = CoxeterSystem.from_type("A", 2)
    E = standard_flag(3, 3)
    for w1 in all_permutations(3):
        for w2 in all_permutations(3):
            prod = perm_to_element(W, w1) * perm_to_element(W, w2)
            g = MatrixGF.from_rows([[int(w1[j] - 1 == i) for j in range(3)] for i in range(3)], 3)
            f = permutation_flag(w2, 3).translate(g)
            assert relpos(E, f) == element_to_perm(prod)


def test_perm_element_bridge():
    W = CoxeterSystem.from_type("A", 3)
    for e in W.enumerate():
        w = element_to_perm(e)
        assert perm_to_element(W, w) == e
        assert perm_length(w) == e.length
    with pytest.raises(DimensionMismatch):
        perm_to_element(W, (1, 2, 3))


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_schubert_counts(n, p):
    counts = {w: schubert_count(w, n, p) for w in all_permutations(n)}
    for w, c in counts.items():
        assert c == p ** perm_length(w)
    assert sum(counts.values()) == len(enumerate_flags(n, p))


def test_schubert_examples():
    assert schubert_count((1, 2, 3), 3, 2) == 1
    assert schubert_count((2, 1, 3), 3, 2) == 2
    assert schubert_count((3, 2, 1), 3, 2) == 8


def brute_geometric(n, p):
    flags = enumerate_flags(n, p)
    pos = {(a, b): relpos(flags[a], flags[b]) for a in range(len(flags)) for b in range(len(flags))}
    out = {}
    for a, b, c in itertools.product(range(len(flags)), repeat=3):
        out.setdefault((pos[a, b], pos[b, c]), set()).add(pos[a, c])
    return out


def test_geometric_convolution_examples():
    s1s2, s2s1 = (2, 3, 1), (3, 1, 2)
    assert element_to_perm(CoxeterSystem.from_type("A", 2).element("1 2")) == s1s2
    assert geometric_convolve(s1s2, s2s1, 3, 2) == {(1, 2, 3), (2, 1, 3), (3, 2, 1)}
    assert geometric_convolve((2, 1, 3), (1, 3, 2), 3, 2) == {(2, 3, 1)}
    for w in all_permutations(3):
        assert geometric_convolve(w, (1, 2, 3), 3, 3) == {w}


def test_geometric_table_matches_brute_triple_scan():
    table = geometric_convolution_table(3, 2)
    brute = brute_geometric(3, 2)
    assert table == {k: frozenset(v) for k, v in brute.items()}
    for (w1, w2), out in table.items():
        assert geometric_convolve(w1, w2, 3, 2) == out


@pytest.mark.parametrize("p", [2, 3])
def test_geometric_equals_combinatorial(p):
    W = CoxeterSystem.from_type("A", 2)
    table = geometric_convolution_table(3, p)
    for (w1, w2), out in table.items():
        combo = convolve(perm_to_element(W, w1), perm_to_element(W, w2))
        assert {element_to_perm(e) for e in combo} == set(out)


@pytest.mark.parametrize("n,p", [(3, 3), (4, 2)])
def test_vectorised_table_matches_rank_tables(n, p):
    from coxconv.geometry.flags import _relpos_table

    flags, perms, table = _relpos_table(n, p)
    rng = random.Random(n * p)
    for _ in range(400):
        a, b = rng.randrange(len(flags)), rng.randrange(len(flags))
        assert perms[table[a, b]] == relpos(flags[a], flags[b])
