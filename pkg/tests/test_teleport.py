from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_unit
from hilbertkit import teleport
from hilbertkit.errors import HilbertKitError, NotUnit
from hilbertkit.states import is_entangled, schmidt
from hilbertkit.tensor import TensorElement, kron

R = 1 / np.sqrt(2)

angles = st.floats(0, 2 * np.pi, allow_nan=False)


@st.composite
def qubits(draw):
    theta, a, b = draw(angles), draw(angles), draw(angles)
    return np.array([np.cos(theta / 2) * np.exp(1j * a), np.sin(theta / 2) * np.exp(1j * b)])


class TestGates:
    def test_all_unitary(self):
        for g in teleport.standard_gates().values():
            m = g.matrix
            assert np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) <= 1e-12

    def test_pauli_relations(self):
        g = teleport.standard_gates()
        sx, sz, sy = g["sigma_x"].matrix, g["sigma_z"].matrix, g["sigma_y"].matrix
        assert np.array_equal(sx @ sx, np.eye(2))
        assert np.allclose(g["T4"].matrix, sy / 1j)
        assert np.array_equal(g["T4"].matrix, [[0, -1], [1, 0]])
        for name in ("T2", "T3"):
            m = g[name].matrix
            assert np.array_equal(m, m.conj().T)
        t4 = g["T4"].matrix
        assert np.array_equal(t4.T, -t4)

    def test_hadamard_entries(self):
        h = teleport.standard_gates()["H1"].matrix
        assert np.allclose(np.abs(h), R)
        assert h[1, 1].real < 0 and h[0, 0].real > 0

    def test_cnot_block_action(self, rng):
        cnot = teleport.standard_gates()["CNOT"].matrix
        x = random_unit(rng, 2)
        e1, e2 = np.eye(2)
        assert np.allclose(cnot @ kron(e2, x), kron(e2, teleport.SIGMA_X @ x))
        assert np.allclose(cnot @ kron(e1, x), kron(e1, x))

    def test_gate_validation(self):
        with pytest.raises(HilbertKitError):
            teleport.Gate("bad", np.ones((2, 2)), 1)
        with pytest.raises(HilbertKitError):
            teleport.Gate("wrong size", np.eye(4), 1)


class TestTeleportMatrix:
    def test_unitary(self):
        t = teleport.teleport_matrix().matrix
        assert np.linalg.norm(t.conj().T @ t - np.eye(8)) <= 1e-14

    def test_factorization_exact(self):
        t = teleport.explicit_teleport_array()
        assert np.array_equal(t, teleport.factorized_teleport_array())

    def test_displayed_entries(self):
        t = teleport.teleport_matrix().matrix
        assert t[0, 6] == R and t[4, 6] == -R

    def test_real_and_transpose_inverse(self):
        t = teleport.teleport_matrix().matrix
        assert not t.imag.any()
        assert np.allclose(t.T @ t, np.eye(8), atol=1e-15)

    def test_block_form(self):
        t = teleport.explicit_teleport_array()
        cnot = teleport.standard_gates()["CNOT"].matrix
        i4 = np.eye(4)
        block = R * np.block([[i4, i4], [i4, -i4]])
        assert np.array_equal(block @ kron(cnot, np.eye(2)), t)

    def test_broken_matrix_rejected(self, monkeypatch):
        flipped = np.array(teleport.explicit_teleport_array())
        flipped[0, 0] *= -1
        monkeypatch.setattr(teleport, "explicit_teleport_array", lambda: flipped)
        with pytest.raises(HilbertKitError):
            teleport.teleport_matrix()


class TestTeleport:
    def test_ket_zero(self):
        w = teleport.teleport_state([1, 0])
        assert np.allclose(w, np.array([1, 0, 0, 1, 1, 0, 0, 1]) / 2, atol=1e-15)

    def test_ket_one(self):
        w = teleport.teleport_state([0, 1])
        assert np.allclose(w, np.array([0, 1, 1, 0, 0, -1, -1, 0]) / 2, atol=1e-15)

    def test_general_closed_form(self):
        a, b = 0.6, 0.8j
        w = teleport.teleport_state([a, b])
        assert np.allclose(w, np.array([a, b, b, a, a, -b, -b, a]) / 2)

    @given(qubits())
    def test_every_branch_recovers_xi(self, xi):
        outs = teleport.teleport(xi)
        assert [o.branch for o in outs] == [1, 2, 3, 4]
        for o in outs:
            assert np.linalg.norm(o.corrected - xi) <= 1e-10
            assert abs(o.probability - 0.25) <= 1e-12
            assert teleport.overlap_modulus(o.corrected, xi) == pytest.approx(1, abs=1e-12)
        assert abs(sum(o.probability for o in outs) - 1) <= 1e-12

    def test_thousand_random_inputs(self, rng):
        for _ in range(1000):
            xi = random_unit(rng, 2)
            assert teleport.teleportation_equation_residual(xi) <= 1e-12
            for o in teleport.teleport(xi):
                assert np.linalg.norm(o.corrected - xi) <= 1e-10

    def test_post_state_is_twice_the_block(self, rng):
        xi = random_unit(rng, 2)
        w = teleport.teleport_state(xi)
        for o in teleport.teleport(xi):
            i = o.branch
            assert np.allclose(o.post_state, 2 * w[2 * i - 2: 2 * i])

    def test_phase_insensitive_comparator(self):
        assert teleport.overlap_modulus([1j, 0], [1, 0]) == 1
        assert teleport.overlap_modulus([0, 1], [1, 0]) == 0

    def test_non_unit_input(self):
        with pytest.raises(NotUnit):
            teleport.teleport([1, 1])
        with pytest.raises(HilbertKitError):
            teleport.teleport([1, 0, 0])

    def test_phi_plus_entangled(self):
        z = TensorElement.from_kron_vector(teleport.phi_plus(), 2, 2)
        assert is_entangled(z)
        assert abs(schmidt(z).coeffs[1] - R) <= 1e-12

    def test_basis_state_helper(self):
        v = teleport.three_qubit_basis_state("101")
        assert v[5] == 1 and np.count_nonzero(v) == 1


class TestNoCloning:
    def test_worked_example(self):
        e1, e2 = np.eye(2)
        g_in, g_out, gap = teleport.no_cloning_certificate(e1, (e1 + e2) * R, e2)
        assert gap == pytest.approx(np.sqrt(2) * (R - 0.5), abs=1e-12)
        assert gap == pytest.approx(0.2929, abs=1e-4)
        assert g_in[0, 1] == pytest.approx(R) and g_out[0, 1] == pytest.approx(0.5)

    def test_formula_on_random_pairs(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 5))
            x, y, e = random_unit(rng, n), random_unit(rng, n), random_unit(rng, n)
            ip = np.vdot(y, x)
            gap = teleport.no_cloning_certificate(x, y, e)[2]
            assert abs(gap - np.sqrt(2) * abs(ip - ip**2)) <= 1e-10
            assert gap > 1e-12

    def test_controls(self, rng):
        e1, e2, e3 = np.eye(3)
        assert teleport.no_cloning_certificate(e1, e2, e3)[2] <= 1e-12
        x = random_unit(rng, 3)
        assert teleport.no_cloning_certificate(x, x, e1)[2] <= 1e-12

    def test_gram_matrices_hermitian(self, rng):
        x, y, e = (random_unit(rng, 2) for _ in range(3))
        g_in, g_out, _ = teleport.no_cloning_certificate(x, y, e)
        assert np.allclose(g_in, g_in.conj().T) and np.allclose(g_out, g_out.conj().T)

    def test_preconditions(self):
        e1, e2 = np.eye(2)
        with pytest.raises(NotUnit):
            teleport.no_cloning_certificate([1, 1], e1, e2)
        with pytest.raises(HilbertKitError):
            teleport.no_cloning_certificate(e1, e2, e1)
