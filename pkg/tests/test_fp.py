"""Exact mod-p linear algebra."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverhom import fp
from quiverhom.fp import WorkBoundExceeded

PRIMES = (2, 3, 5, 7)


def random_matrix(draw, p, max_side=6):
    rows = draw(st.integers(0, max_side))
    cols = draw(st.integers(0, max_side))
    data = draw(
        st.lists(
            st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols
        )
    )
    return np.array(data, dtype=np.int64).reshape(rows, cols)


@st.composite
def matrix_and_prime(draw):
    p = draw(st.sampled_from(PRIMES))
    return random_matrix(draw, p), p


@st.composite
def two_matrices(draw):
    p = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(1, 5))
    inner = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    a = draw(st.lists(st.integers(0, p - 1), min_size=rows * inner, max_size=rows * inner))
    b = draw(st.lists(st.integers(0, p - 1), min_size=inner * cols, max_size=inner * cols))
    return (
        np.array(a, dtype=np.int64).reshape(rows, inner),
        np.array(b, dtype=np.int64).reshape(inner, cols),
        p,
    )


class TestRref:
    @given(matrix_and_prime())
    @settings(max_examples=120, deadline=None)
    def test_rref_shape_and_pivots(self, mp):
        a, p = mp
        r, pivots = fp.rref(a, p)
        assert r.shape == a.shape
        for k, c in enumerate(pivots):
            assert r[k, c] == 1
            col = r[:, c].copy()
            col[k] = 0
            assert not col.any()

    @given(matrix_and_prime())
    @settings(max_examples=120, deadline=None)
    def test_rref_row_space_preserved(self, mp):
        a, p = mp
        r, pivots = fp.rref(a, p)
        assert fp.rank(np.vstack([a, r]), p) == len(pivots) == fp.rank(a, p)

    def test_first_pivot_deterministic(self):
        a = np.array([[0, 2, 2], [0, 1, 1], [0, 4, 3]], dtype=np.int64)
        r, pivots = fp.rref(a, 5)
        assert pivots == (1, 2)
        expected = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=np.int64)
        assert np.array_equal(r, expected)


class TestKernelSolve:
    @given(matrix_and_prime())
    @settings(max_examples=120, deadline=None)
    def test_kernel_annihilates(self, mp):
        a, p = mp
        k = fp.kernel(a, p)
        assert k.shape[0] == a.shape[1]
        assert k.shape[1] == a.shape[1] - fp.rank(a, p)
        if a.shape[1]:
            assert not fp.matmul(a, k, p).any()
            assert fp.rank(k, p) == k.shape[1]

    @given(two_matrices())
    @settings(max_examples=120, deadline=None)
    def test_solve_consistent_system(self, abp):
        a, x, p = abp
        b = fp.matmul(a, x, p)
        y = fp.solve(a, b, p)
        assert y is not None
        assert np.array_equal(fp.matmul(a, y, p), b)

    def test_solve_inconsistent(self):
        a = np.array([[1, 0], [1, 0]], dtype=np.int64)
        b = np.array([[1], [0]], dtype=np.int64)
        assert fp.solve(a, b, 2) is None

    def test_solve_deterministic_particular(self):
        # underdetermined: free variables must be set to zero
        a = np.array([[1, 1]], dtype=np.int64)
        b = np.array([[1]], dtype=np.int64)
        y = fp.solve(a, b, 3)
        assert np.array_equal(y, np.array([[1], [0]], dtype=np.int64))


class TestSubspaces:
    @given(matrix_and_prime())
    @settings(max_examples=100, deadline=None)
    def test_column_basis_spans(self, mp):
        a, p = mp
        c = fp.column_basis(a, p)
        assert fp.rank(c, p) == c.shape[1] == fp.rank(a, p)
        for j in range(a.shape[1]):
            assert fp.in_column_span(c, a[:, j : j + 1], p)

    @given(matrix_and_prime())
    @settings(max_examples=100, deadline=None)
    def test_complement_decomposition(self, mp):
        a, p = mp
        w = fp.column_basis(a, p)
        c = fp.complement(w, p)
        total = np.hstack([w, c])
        assert fp.rank(total, p) == a.shape[0]
        assert total.shape[1] == a.shape[0]

    def test_intersect(self):
        p = 2
        u = np.array([[1, 0], [0, 1], [0, 0]], dtype=np.int64)
        w = np.array([[0, 1], [1, 0], [1, 0]], dtype=np.int64)
        got = fp.intersect(u, w, p)
        assert got.shape[1] == 1
        assert fp.in_column_span(u, got, p)
        assert fp.in_column_span(w, got, p)

    @given(st.sampled_from(PRIMES), st.integers(1, 5))
    @settings(max_examples=60, deadline=None)
    def test_invert_roundtrip(self, p, n):
        rng = np.random.default_rng(p * 100 + n)
        for _ in range(8):
            a = rng.integers(0, p, size=(n, n)).astype(np.int64)
            if fp.rank(a, p) < n:
                continue
            inv = fp.invert(a, p)
            assert np.array_equal(fp.matmul(a, inv, p), fp.eye(n))
            break


class TestWorkMeter:
    def test_limit_triggers(self):
        fp.set_work_limit(10)
        a = np.ones((20, 20), dtype=np.int64)
        with pytest.raises(WorkBoundExceeded):
            fp.matmul(a, a, 2)
        fp.set_work_limit(None)

    def test_usage_accumulates(self):
        fp.set_work_limit(None)
        before = fp.work_used()
        a = np.ones((4, 4), dtype=np.int64)
        fp.matmul(a, a, 3)
        assert fp.work_used() > before
