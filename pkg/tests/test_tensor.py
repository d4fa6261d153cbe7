from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cmatrices, crandn, cvectors
from hilbertkit import tensor
from hilbertkit.errors import DimensionMismatch, EmptyFactorList, InvalidDimension, InvalidMatrix
from hilbertkit.tensor import TensorElement


def loop_kron(a, b):
    """Oracle: Kronecker product written as explicit index arithmetic."""
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    (p, q), (r, s) = a.shape, b.shape
    out = np.zeros((p * r, q * s), dtype=complex)
    for i in range(p):
        for j in range(q):
            for k in range(r):
                for l in range(s):
                    out[i * r + k, j * s + l] = a[i, j] * b[k, l]
    return out


class TestKron:
    @given(cmatrices(3, 3), cmatrices(3, 3))
    def test_matches_index_oracle(self, a, b):
        assert np.allclose(tensor.kron(a, b), loop_kron(a, b), rtol=1e-15, atol=0)

    def test_vectors(self):
        out = tensor.kron([1, 2], [1, 0, -1])
        assert np.array_equal(out, [1, 0, -1, 2, 0, -2])

    def test_mixed_operands_rejected(self):
        with pytest.raises(InvalidMatrix):
            tensor.kron([1, 2], np.eye(2))

    def test_mixed_product_rule(self, rng):
        a, b, c, d = (crandn(rng, 2, 2) for _ in range(4))
        lhs = tensor.kron(a, b) @ tensor.kron(c, d)
        assert np.allclose(lhs, tensor.kron(a @ c, b @ d), atol=1e-12)

    def test_standard_basis_all_small_dims(self):
        for m in range(1, 7):
            for n in range(1, 7):
                for j in range(1, n + 1):
                    for i in range(1, m + 1):
                        lhs = tensor.kron(tensor.basis_vector(j, n), tensor.basis_vector(i, m))
                        assert np.array_equal(lhs, tensor.basis_vector((j - 1) * m + i, n * m))

    def test_nfold(self):
        x, y, z = [1, 2], [0, 1], [3, 1]
        assert np.array_equal(tensor.nfold_kron([x, y, z]), tensor.kron(tensor.kron(x, y), z))
        assert np.array_equal(tensor.nfold_kron([x]), np.array(x, dtype=complex))
        with pytest.raises(EmptyFactorList):
            tensor.nfold_kron([])

    def test_basis_vector_range(self):
        with pytest.raises(InvalidDimension):
            tensor.basis_vector(0, 3)


class TestVec:
    def test_column_stacking(self):
        assert np.array_equal(tensor.vec([[1, 2], [3, 4]]), [1, 3, 2, 4])

    @given(cmatrices(4, 4))
    def test_unvec_roundtrip_and_isometry(self, a):
        v = tensor.vec(a)
        assert np.array_equal(tensor.unvec(v, *a.shape), a)
        assert np.isclose(np.linalg.norm(v), np.linalg.norm(a))

    def test_unvec_bad_length(self):
        with pytest.raises(DimensionMismatch):
            tensor.unvec([1, 2, 3], 2, 2)

    @given(cvectors(max_dim=6), cvectors(max_dim=6))
    def test_vec_of_dyad_is_kron(self, x, y):
        rep = tensor.dyad(x, y).matrix_rep
        assert np.allclose(tensor.vec(rep), tensor.kron(x, y), atol=1e-12)

    def test_vec_axb(self, rng):
        a, x, b = crandn(rng, 3, 2), crandn(rng, 2, 4), crandn(rng, 4, 5)
        lhs = tensor.vec(a @ x @ b)
        assert np.allclose(lhs, tensor.kron(b.T, a) @ tensor.vec(x), atol=1e-12)


class TestCommutation:
    def test_small_explicit(self):
        # K_{2,2} swaps the middle two coordinates
        expected = np.eye(4)[[0, 2, 1, 3]]
        assert np.array_equal(tensor.commutation_matrix(2, 2), expected)

    @pytest.mark.parametrize("m", range(1, 6))
    @pytest.mark.parametrize("n", range(1, 6))
    def test_swap_and_permutation(self, m, n):
        k = tensor.commutation_matrix(m, n)
        assert np.array_equal(k.T @ k, np.eye(m * n))
        assert np.array_equal(k.sum(axis=0), np.ones(m * n))
        x = np.arange(1, n + 1) + 1j
        y = np.arange(1, m + 1) * 10 - 2j
        assert np.array_equal(k @ tensor.kron(x, y), tensor.kron(y, x))
        a = np.arange(m * n).reshape(m, n) + 0j
        assert np.array_equal(k @ tensor.vec(a), tensor.vec(a.T))
        # K_{m,n}^T = K_{n,m}
        assert np.array_equal(k.T, tensor.commutation_matrix(n, m))

    def test_bad_dims(self):
        with pytest.raises(InvalidDimension):
            tensor.commutation_matrix(0, 2)


class TestTensorElement:
    def test_dyad_representative(self):
        z = tensor.dyad([1, 2], [1j, 0, 1])
        assert z.matrix_rep.shape == (3, 2)
        assert np.array_equal(z.matrix_rep, np.outer([1j, 0, 1], [1, 2]))

    def test_distinct_terms_same_element(self):
        x1, x2, y = np.array([1, 0]), np.array([0, 1]), np.array([1, 1, 0])
        a = TensorElement(2, 3, ((x1 + x2, y),))
        b = TensorElement(2, 3, ((x1, y), (x2, y)))
        assert a.same_element(b)

    def test_bilinearity(self, rng):
        x, y, z = crandn(rng, 3), crandn(rng, 3), crandn(rng, 2)
        lam = 0.3 - 2j
        lhs = tensor.dyad(lam * x + y, z)
        rhs = tensor.dyad(x, z).scale(lam) + tensor.dyad(y, z)
        assert lhs.same_element(rhs, 1e-12)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            TensorElement(2, 2, (([1, 0, 0], [1, 0]),))
        with pytest.raises(InvalidDimension):
            TensorElement(0, 2, ())
        with pytest.raises(DimensionMismatch):
            tensor.dyad([1], [1, 2]) + tensor.dyad([1, 2], [1])

    def test_stored_rep_is_checked(self):
        with pytest.raises(InvalidMatrix):
            TensorElement(1, 1, (([1], [1]),), matrix_rep=[[2]])
        ok = TensorElement(1, 1, (([1], [1]),), matrix_rep=[[1]])
        assert ok.norm() == 1

    @given(cvectors(max_dim=5), cvectors(max_dim=5), cvectors(max_dim=5), cvectors(max_dim=5))
    def test_inner_factorizes_on_dyads(self, x1, y1, x2, y2):
        if x1.shape != x2.shape or y1.shape != y2.shape:
            return
        lhs = tensor.tensor_inner(tensor.dyad(x1, y1), tensor.dyad(x2, y2))
        rhs = np.vdot(x2, x1) * np.vdot(y2, y1)
        assert np.isclose(lhs, rhs, rtol=1e-10, atol=1e-9)

    def test_inner_linear_in_first_slot(self, rng):
        z1 = TensorElement.from_matrix(crandn(rng, 2, 3))
        z2 = TensorElement.from_matrix(crandn(rng, 2, 3))
        lam = 1 + 2j
        assert np.isclose(tensor.tensor_inner(z1.scale(lam), z2), lam * tensor.tensor_inner(z1, z2))

    def test_kron_vector_roundtrip(self, rng):
        v = crandn(rng, 6)
        z = TensorElement.from_kron_vector(v, 2, 3)
        assert np.allclose(tensor.to_kron_vector(z), v)
        assert np.isclose(z.norm(), np.linalg.norm(v))

    def test_swap_uses_commutation_matrix(self, rng):
        z = TensorElement.from_matrix(crandn(rng, 3, 2))  # C^2 (x) C^3
        k = tensor.commutation_matrix(3, 2)
        assert np.allclose(k @ tensor.to_kron_vector(z), tensor.to_kron_vector(z.swap()))

    def test_direct_sum_components(self, rng):
        x, y = crandn(rng, 3), crandn(rng, 2)
        z = tensor.dyad(x, y) + tensor.dyad(crandn(rng, 3), crandn(rng, 2))
        comps = tensor.direct_sum_components(z)
        assert len(comps) == 3
        assert np.isclose(sum(np.linalg.norm(c) ** 2 for c in comps), z.norm() ** 2)
        assert np.allclose(np.concatenate(comps), tensor.to_kron_vector(z))

    @given(st.integers(1, 4), st.integers(1, 4))
    def test_from_matrix_recovers_rep(self, m, n):
        r = np.arange(m * n).reshape(m, n) * (1 - 1j)
        assert np.array_equal(TensorElement.from_matrix(r).matrix_rep, r)
