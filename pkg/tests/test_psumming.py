from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cmatrices, crandn
from hilbertkit import psumming as ps
from hilbertkit.conjspace import Ket
from hilbertkit.errors import DimensionMismatch, EmptyFamily, UnsupportedP
from hilbertkit.norms import hs_norm, operator_norm

# pi_1(Id on C^2) = 1 / E|z_1| for z uniform on the unit sphere of C^2.
# |z_1|^2 is uniform on [0, 1], so E|z_1| = 2/3.
PI1_QUBIT = 1.5


def phase_grid_sup(x, steps=72):
    """Oracle: sup_a sum |<x_i, a>| = max over phases u of ||sum u_i x_i||, on a grid."""
    n = x.shape[1]
    th = np.exp(2j * np.pi * np.arange(steps) / steps)
    best = 0.0
    for ph in itertools.product(th, repeat=n - 1):
        best = max(best, np.linalg.norm(x @ np.array((1,) + ph)))
    return best


class TestFamilyRatio:
    def test_identity_single_vector(self):
        assert ps.family_ratio(np.eye(3), [[1, 0, 0]], 1) == 1.0
        assert ps.family_ratio(np.eye(3), [[1, 0, 0]], 2) == 1.0

    def test_p2_standard_basis_is_hs(self, rng):
        t = crandn(rng, 4, 3)
        assert np.isclose(ps.family_ratio(t, np.eye(3), 2), hs_norm(t), rtol=1e-12)

    def test_p2_diag(self):
        assert ps.family_ratio(np.diag([1, 2]), [[1, 0], [0, 1]], 2) == pytest.approx(np.sqrt(5))

    def test_accepts_kets(self):
        fam = [Ket([1, 0]), Ket([0, 1])]
        assert ps.family_ratio(np.diag([1, 2]), fam, 2) == pytest.approx(np.sqrt(5))

    def test_errors(self):
        with pytest.raises(EmptyFamily):
            ps.family_ratio(np.eye(2), [], 1)
        with pytest.raises(UnsupportedP):
            ps.family_ratio(np.eye(2), [[1, 0]], 3)
        with pytest.raises(DimensionMismatch):
            ps.family_ratio(np.eye(2), [[1, 0, 0]], 2)

    def test_zero_family(self):
        assert ps.family_ratio(np.eye(2), [[0, 0]], 2) == 0.0

    @given(cmatrices(4, 3, min_cols=3), st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
    def test_scale_invariance(self, t, lam):
        fam = np.random.default_rng(2).standard_normal((3, 3)) + 0j
        for p in (1, 2):
            a = ps.family_ratio(t, fam.T, p)
            b = ps.family_ratio(t, (lam * fam).T, p)
            assert a == pytest.approx(b, rel=1e-10, abs=1e-10)

    @given(cmatrices(4, 4))
    def test_p2_never_exceeds_hs(self, t):
        rng = np.random.default_rng(t.shape[0] * 10 + t.shape[1])
        for size in (1, 3, 7):
            fam = crandn(rng, t.shape[1], size).T
            assert ps.family_ratio(t, fam, 2) <= hs_norm(t) + 1e-9

    def test_orthonormal_basis_p1(self):
        # sup_a |a_1| + |a_2| over the unit sphere is sqrt 2
        assert ps.family_ratio(np.eye(2), np.eye(2), 1, certified=True) == pytest.approx(np.sqrt(2), abs=1e-12)


class TestDenominator:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_ascent_matches_grid_oracle(self, rng, n):
        for _ in range(3):
            x = crandn(rng, 2, n)
            est, a = ps.l1_denominator_estimate(x)
            grid = phase_grid_sup(x, 72 if n < 4 else 36)
            assert np.isclose(np.linalg.norm(a), 1)
            assert est == pytest.approx(np.abs(x.conj().T @ a).sum())
            assert est >= grid * (1 - 1e-9)
            assert est <= grid * (1 + 2e-3)

    def test_upper_bound_is_valid_and_tight(self, rng):
        for _ in range(5):
            x = crandn(rng, 2, 4)
            est, _ = ps.l1_denominator_estimate(x)
            up = ps.l1_denominator_upper(x, est)
            assert up >= max(est, phase_grid_sup(x, 36)) * (1 - 1e-12)
            # the cell budget keeps the certificate within a fraction of a percent
            assert up <= est * (1 + 1e-2)

    def test_upper_bound_higher_dims_dominates_samples(self, rng):
        for d in (3, 4, 6):
            x = crandn(rng, d, 5)
            up = ps.l1_denominator_upper(x)
            a = crandn(rng, d, 2000)
            a /= np.linalg.norm(a, axis=0)
            assert np.abs(x.conj().T @ a).sum(axis=0).max() <= up
            assert up <= np.linalg.norm(x, axis=0).sum() + 1e-12

    def test_scalar_case_exact(self):
        x = np.array([[1 + 1j, -2, 0.5j]])
        assert ps.l1_denominator_upper(x) == ps.l1_denominator_estimate(x)[0] == pytest.approx(2 + np.sqrt(2) + 0.5)


class TestPi2:
    def test_diag(self):
        est = ps.pi2_certify(np.diag([3, 4]))
        assert est.lower_bound == 5.0 and est.exact and est.p == 2

    def test_zero(self):
        assert ps.pi2_certify(np.zeros((2, 2))).lower_bound == 0.0

    def test_random(self, rng):
        for _ in range(100):
            t = crandn(rng, 6, 6)
            assert abs(ps.pi2_certify(t).lower_bound - hs_norm(t)) <= 1e-10

    def test_witness_replays(self, rng):
        t = crandn(rng, 3, 5)
        est = ps.pi2_certify(t)
        assert ps.family_ratio(t, est.witness_family, 2) == pytest.approx(est.lower_bound, abs=1e-9)


class TestPi1:
    def test_scalar_identity_is_one(self):
        assert ps.pi1_lower_bound(np.eye(1), 10, 3).lower_bound == 1.0

    def test_qubit_identity_bracket(self):
        est = ps.pi1_lower_bound(np.eye(2), 300, 7)
        # certified lower bound: never above the true value, and the search beats
        # the orthonormal basis (ratio sqrt 2)
        assert np.sqrt(2) <= est.lower_bound <= PI1_QUBIT + 1e-9
        assert est.estimate >= est.lower_bound
        assert 1 <= est.lower_bound <= PI1_QUBIT

    def test_witness_replays(self):
        est = ps.pi1_lower_bound(np.eye(2), 40, 11)
        replay = ps.family_ratio(np.eye(2), est.witness_family, 1, certified=True)
        assert replay == pytest.approx(est.lower_bound, abs=1e-9)

    def test_monotone_in_budget(self):
        values = [ps.pi1_lower_bound(np.eye(2), b, 5).lower_bound for b in (1, 10, 30, 60)]
        assert values == sorted(values)

    def test_deterministic(self, rng):
        t = crandn(rng, 2, 2)
        a, b = ps.pi1_lower_bound(t, 25, 9), ps.pi1_lower_bound(t, 25, 9)
        assert a.to_dict() == b.to_dict()

    def test_at_least_operator_norm(self, rng):
        for shape in ((2, 2), (3, 2), (2, 3)):
            t = crandn(rng, *shape)
            assert ps.pi1_lower_bound(t, 5, 0).lower_bound >= operator_norm(t) - 1e-9

    def test_dominates_pi2_on_identity_search(self):
        # pi_1 >= pi_2 = sqrt(dim) for the identity; the search gets at least close
        est = ps.pi1_lower_bound(np.eye(3), 30, 1)
        assert est.lower_bound >= 1.0

    def test_compatibility_ceiling(self):
        est = ps.pi1_lower_bound(np.eye(2), 20, 7)
        ceiling = ps.compatibility_degree_ceiling(est)
        assert ceiling == pytest.approx(1 / est.lower_bound)
        # the guaranteed compatibility bound 1/pi_1 sits below the reported ceiling
        assert 1 / PI1_QUBIT <= ceiling

    def test_bad_budget(self):
        with pytest.raises(ValueError):
            ps.pi1_lower_bound(np.eye(2), 0, 0)
