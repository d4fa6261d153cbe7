"""Explicit teleportation machinery on three qubits, and the no-cloning certificate.

Qubit ordering follows the Kronecker product: ``kron(xi, phi_plus)`` puts the
qubit to be sent first and the Bell pair second.  After the teleportation
matrix acts, the 8-vector splits into four 2-blocks; block ``i`` holds Bob's
qubit ``T_i xi / 2``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType

import numpy as np

from .errors import HilbertKitError, NotUnit
from .linalg import _freeze, as_matrix, as_vector
from .tensor import basis_vector, kron, nfold_kron

UNITARY_TOL = 1e-12
UNIT_TOL = 1e-10

SQRT1_2 = 1 / np.sqrt(2)


def _c(rows) -> np.ndarray:
    return _freeze(np.array(rows, dtype=np.complex128))


I2 = _c([[1, 0], [0, 1]])
SIGMA_X = _c([[0, 1], [1, 0]])
SIGMA_Y = _c([[0, -1j], [1j, 0]])
SIGMA_Z = _c([[1, 0], [0, -1]])


@dataclass(frozen=True, eq=False)
class Gate:
    name: str
    matrix: np.ndarray
    arity: int

    def __post_init__(self):
        m = as_matrix(self.matrix, self.name)
        n = m.shape[0]
        if m.shape[1] != n or n != 2**self.arity:
            raise HilbertKitError(f"gate {self.name} must be {2**self.arity}x{2**self.arity}")
        err = np.linalg.norm(m.conj().T @ m - np.eye(n))
        if err > UNITARY_TOL:
            raise HilbertKitError(f"gate {self.name} is not unitary (residual {err:.2e})")
        object.__setattr__(self, "matrix", m)

    def inverse(self) -> np.ndarray:
        return _freeze(self.matrix.conj().T.copy())


def direct_sum(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.complex128)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return _freeze(out)


@lru_cache(maxsize=None)
def standard_gates() -> Mapping[str, Gate]:
    """The single- and two-qubit gates used by the protocol.

    ``T1..T4`` are the Pauli corrections ``I, sigma_x, sigma_z, sigma_x sigma_z``
    (the last one equals ``-i sigma_y``).
    """
    t4 = SIGMA_X @ SIGMA_Z
    gates = [
        Gate("T1", I2, 1),
        Gate("T2", SIGMA_X, 1),
        Gate("T3", SIGMA_Z, 1),
        Gate("T4", t4, 1),
        Gate("sigma_x", SIGMA_X, 1),
        Gate("sigma_y", SIGMA_Y, 1),
        Gate("sigma_z", SIGMA_Z, 1),
        Gate("NOT", SIGMA_X, 1),
        Gate("H1", (SIGMA_X + SIGMA_Z) * SQRT1_2, 1),
        Gate("CNOT", direct_sum(I2, SIGMA_X), 2),
    ]
    return MappingProxyType({g.name: g for g in gates})


@lru_cache(maxsize=None)
def corrections() -> tuple[np.ndarray, ...]:
    g = standard_gates()
    return tuple(g[f"T{i}"].matrix for i in range(1, 5))


@lru_cache(maxsize=None)
def phi_plus() -> np.ndarray:
    """Bell vector ``(|00> + |11>)/sqrt 2``."""
    return _freeze(SQRT1_2 * np.array([1, 0, 0, 1], dtype=np.complex128))


@lru_cache(maxsize=None)
def explicit_teleport_array() -> np.ndarray:
    """The 8x8 teleportation matrix written out entry by entry."""
    rows = [
        [1, 0, 0, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, 0, 0, 0, -1],
        [0, 0, 1, 0, -1, 0, 0, 0],
        [0, 0, 0, 1, 0, -1, 0, 0],
    ]
    return _freeze(SQRT1_2 * np.array(rows, dtype=np.complex128))


def factorized_teleport_array() -> np.ndarray:
    """``(H1 (x) I_4)(CNOT (x) I_2)``."""
    g = standard_gates()
    left = kron(g["H1"].matrix, np.eye(4))
    right = kron(g["CNOT"].matrix, np.eye(2))
    return _freeze(left @ right)


def teleport_matrix() -> Gate:
    """The teleportation matrix as a validated 3-qubit gate.

    Raises if the explicit matrix fails unitarity, realness of its adjoint
    (``T^T = T^*``) or the ``(H1 (x) I_4)(CNOT (x) I_2)`` factorization.
    """
    t = explicit_teleport_array()
    if np.abs(t.T - t.conj().T).max() != 0.0:
        raise HilbertKitError("teleportation matrix should be real")
    if np.abs(t - factorized_teleport_array()).max() != 0.0:
        raise HilbertKitError("teleportation matrix does not match its factorization")
    return Gate("T", t, 3)


@dataclass(frozen=True)
class TeleportOutcome:
    branch: int  # 1..4
    post_state: np.ndarray
    corrected: np.ndarray
    probability: float


def _unit_qubit(xi) -> np.ndarray:
    xi = as_vector(xi, "xi")
    if xi.shape[0] != 2:
        raise HilbertKitError("xi must be a qubit (length 2)")
    if abs(np.linalg.norm(xi) - 1.0) > UNIT_TOL:
        raise NotUnit("xi must be a unit vector")
    return xi


def teleport_state(xi, t=None) -> np.ndarray:
    """``w = T (xi (x) phi_plus)``."""
    xi = _unit_qubit(xi)
    t = explicit_teleport_array() if t is None else as_matrix(t)
    return _freeze(t @ kron(xi, phi_plus()))


def teleport(xi, t=None) -> list[TeleportOutcome]:
    """Split ``w`` into Bob's four branches and undo each Pauli correction."""
    w = teleport_state(xi, t)
    outcomes = []
    for i, ti in enumerate(corrections(), start=1):
        block = w[2 * i - 2: 2 * i]
        prob = float(np.vdot(block, block).real)
        post = block / np.sqrt(prob) if prob > 0 else block.copy()
        outcomes.append(
            TeleportOutcome(
                branch=i,
                post_state=_freeze(post),
                corrected=_freeze(ti.conj().T @ post),
                probability=prob,
            )
        )
    return outcomes


def teleportation_equation_residual(xi, t=None) -> float:
    """``|| T(xi (x) phi_plus) - 1/2 sum_i e_i^(4) (x) T_i xi ||``."""
    xi = _unit_qubit(xi)
    rhs = sum(kron(basis_vector(i, 4), ti @ xi) for i, ti in enumerate(corrections(), start=1)) / 2
    return float(np.linalg.norm(teleport_state(xi, t) - rhs))


def overlap_modulus(a, b) -> float:
    """``|<a, b>|``; equals 1 for unit vectors that agree up to a global phase."""
    return float(abs(np.vdot(as_vector(b), as_vector(a))))


def gram(vectors) -> np.ndarray:
    """``G[i, j] = <v_i, v_j>`` (linear in the first slot)."""
    v = np.array([as_vector(x) for x in vectors])
    return _freeze(v @ v.conj().T)


def no_cloning_certificate(x, y, e) -> tuple[np.ndarray, np.ndarray, float]:
    """Compare the Gram matrices of ``{x(x)e, y(x)e}`` and ``{x(x)x, y(x)y}``.

    A unitary preserves Gram matrices, and a phase per output only changes the
    off-diagonal entry by a unimodular factor; so a cloning unitary needs
    ``|<x,y>| = |<x,y>|^2``.  The returned gap ``||G_in - G_out||_F`` equals
    ``sqrt(2) |<x,y> - <x,y>^2|``; it is positive exactly when
    ``<x,y>`` is neither 0 nor unimodular-and-equal-to-1.
    """
    x, y, e = as_vector(x, "x"), as_vector(y, "y"), as_vector(e, "e")
    for name, v in (("x", x), ("y", y), ("e", e)):
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            raise NotUnit(f"{name} must be a unit vector")
    if np.linalg.norm(e - x) <= UNIT_TOL or np.linalg.norm(e - y) <= UNIT_TOL:
        raise HilbertKitError("the blank state e must differ from x and y")
    g_in = gram([kron(x, e), kron(y, e)])
    g_out = gram([kron(x, x), kron(y, y)])
    return g_in, g_out, float(np.linalg.norm(g_in - g_out))


def three_qubit_basis_state(bits: str) -> np.ndarray:
    """``|b1 b2 b3>`` as a Kronecker product of computational basis vectors."""
    return nfold_kron([basis_vector(int(b) + 1, 2) for b in bits])
