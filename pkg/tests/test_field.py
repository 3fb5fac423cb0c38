from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxconv.errors import DimensionMismatch
from coxconv.geometry import MatrixGF, PrimeField, null_space, row_space, rref


def span(rows, p, n):
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(n)))
    return out


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    p = draw(st.sampled_from([2, 3, 5]))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return MatrixGF.from_rows(rows, p)


def test_rref_examples():
    eye = MatrixGF.identity(3, 5)
    assert rref(eye) == eye
    assert rref(MatrixGF.from_rows([[0, 1], [1, 0]], 2)) == MatrixGF.identity(2, 2)
    assert rref(MatrixGF.from_rows([[1, 1], [1, 0]], 2)) == MatrixGF.identity(2, 2)
    assert rref(MatrixGF.from_rows([[2, 4], [1, 2]], 5)).tolist() == [[1, 2], [0, 0]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent_and_preserves_row_space(m):
    r = rref(m)
    assert rref(r) == r
    assert (r.rows, r.cols) == (m.rows, m.cols)
    assert span(r.entries, m.p, m.cols) == span(m.entries, m.p, m.cols)
    assert row_space(m).rows == m.rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_null_space(m):
    ns = null_space(m)
    assert ns.rows == m.cols - m.rank()
    for x in ns.entries:
        assert all(sum(a * b for a, b in zip(row, x)) % m.p == 0 for row in m.entries)
    if ns.rows:
        assert ns.rank() == ns.rows


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=3, max_cols=3))
def test_inverse(m):
    if m.rows != m.cols:
        with pytest.raises(DimensionMismatch):
            m.inverse()
    elif m.rank() < m.rows:
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m @ m.inverse() == MatrixGF.identity(m.rows, m.p)
        assert m.inverse() @ m == MatrixGF.identity(m.rows, m.p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_axioms(p):
    F = PrimeField(p)
    els = list(F.elements())
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
    for a in F.units():
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_unsupported_prime():
    with pytest.raises(ValueError):
        PrimeField(7)
    with pytest.raises(ValueError):
        PrimeField(4)


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        MatrixGF.from_rows([[1, 0], [1]], 2)
    with pytest.raises(DimensionMismatch):
        MatrixGF((), 2)
    a = MatrixGF.identity(2, 3)
    with pytest.raises(DimensionMismatch):
        a @ MatrixGF.identity(3, 3)
    with pytest.raises(DimensionMismatch):
        a @ MatrixGF.identity(2, 5)
    empty = MatrixGF((), 3, 2)
    assert empty.transpose().rows == 2 and empty.transpose().cols == 0
    assert (empty @ a).rows == 0
