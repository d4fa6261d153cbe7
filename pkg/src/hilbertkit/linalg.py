"""Dense complex matrix arithmetic and spectral factorizations.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every public
function validates its inputs with :func:`as_matrix` (finite entries, at least
one row and one column) and returns read-only arrays, so results can be shared
freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidMatrix,
    NoConvergence,
    NotHermitian,
    NotSquare,
)

# one-sided Jacobi parameters
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60
RANK_RTOL = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a finite, non-empty 2-D complex matrix (copied)."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise InvalidMatrix(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidMatrix(f"{name} must have at least one row and column")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix(f"{name} has non-finite entries")
    return _freeze(arr)


def as_vector(x, name: str = "vector") -> np.ndarray:
    """Validate ``x`` as a finite, non-empty complex vector (copied).

    Column matrices (n x 1) are flattened.
    """
    arr = np.array(x, dtype=np.complex128)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0].copy()
    if arr.ndim != 1:
        raise InvalidMatrix(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise InvalidMatrix(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix(f"{name} has non-finite entries")
    return _freeze(arr)


def _square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got {a.shape[0]}x{a.shape[1]}")


def identity(n: int) -> np.ndarray:
    return _freeze(np.eye(n, dtype=np.complex128))


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return _freeze(a @ b)


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    a = as_matrix(a)
    return _freeze(a.conj().T.copy())


def trace(a) -> complex:
    a = as_matrix(a)
    _square(a)
    return complex(np.trace(a))


def hermitian_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with the eigenvalues real and in
    descending order and the eigenvectors as the columns of a unitary matrix,
    so that ``a = V @ diag(w) @ V^*``.

    Backed by LAPACK (``numpy.linalg.eigh``); it is deliberately a different
    route from :func:`svd`, which the test-suite cross-checks it against.
    """
    a = as_matrix(a)
    _square(a)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > 1e-10 * (1.0 + scale):
        raise NotHermitian("matrix is not Hermitian within 1e-10 (relative)")
    h = (a + a.conj().T) / 2
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(-w, kind="stable")
    return _freeze(w[order].copy()), _freeze(v[:, order].copy())


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``a = left @ diag(singulars) @ right^*`` truncated at the rank."""

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singulars) @ self.right.conj().T


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one Jacobi sweep: every pair (p, q) exactly once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    k = len(players)
    rounds = []
    for _ in range(k - 1):
        ps, qs = [], []
        for i in range(k // 2):
            p, q = players[i], players[k - 1 - i]
            if p >= 0 and q >= 0:
                ps.append(min(p, q))
                qs.append(max(p, q))
        if ps:
            rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _one_sided_jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonalize the columns of ``a`` by plane rotations.

    Returns ``(u, v)`` with ``a @ v = u``, ``v`` unitary and the columns of
    ``u`` mutually orthogonal up to ``JACOBI_TOL`` relative to their norms.
    """
    u = np.array(a, dtype=np.complex128)
    n = u.shape[1]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return u, v
    floor = 1e-18 * np.linalg.norm(a)
    rounds = _round_robin(n)
    for _ in range(JACOBI_MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            up, uq = u[:, p], u[:, q]
            alpha = np.einsum("ij,ij->j", up.conj(), up).real
            beta = np.einsum("ij,ij->j", uq.conj(), uq).real
            gamma = np.einsum("ij,ij->j", up.conj(), uq)
            g = np.abs(gamma)
            scale = np.sqrt(alpha * beta)
            active = (g > JACOBI_TOL * scale) & (np.sqrt(np.minimum(alpha, beta)) > floor)
            if not active.any():
                continue
            rotated = True
            p, q = p[active], q[active]
            alpha, beta, gamma, g = alpha[active], beta[active], gamma[active], g[active]
            phase = gamma / g
            zeta = (beta - alpha) / (2.0 * g)
            sgn = np.where(zeta >= 0, 1.0, -1.0)
            t = sgn / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            for mat in (u, v):
                xp = mat[:, p]
                xq = mat[:, q] * phase.conj()
                mat[:, p] = c * xp - s * xq
                mat[:, q] = s * xp + c * xq
        if not rotated:
            return u, v
    raise NoConvergence(f"Jacobi SVD did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def svd(a) -> SvdResult:
    """Thin singular value decomposition by one-sided Jacobi rotations.

    Singular values are returned in descending order (ties keep the Jacobi
    output order) and truncated at ``s > 1e-12 * s_max``; the zero matrix has
    rank 0 and empty factors.
    """
    a = as_matrix(a)
    m, n = a.shape
    transposed = n > m
    work = a.conj().T if transposed else a
    # equilibrate by an exact power of two so column norms neither underflow
    # nor overflow (ldexp also copes with subnormal entries)
    amax = float(np.abs(work).max())
    exp = int(np.frexp(amax)[1]) if amax > 0 else 0
    if exp:
        work = np.ldexp(work.real, -exp) + 1j * np.ldexp(work.imag, -exp)
    u, v = _one_sided_jacobi(work)
    s = np.linalg.norm(u, axis=0)
    order = np.argsort(-s, kind="stable")
    s, u, v = s[order], u[:, order], v[:, order]
    smax = s[0] if s.size else 0.0
    r = int(np.count_nonzero(s > RANK_RTOL * smax)) if smax > 0 else 0
    s, u, v = s[:r], u[:, :r], v[:, :r]
    u = u / s if r else u
    s = np.ldexp(s, exp)
    left, right = (v, u) if transposed else (u, v)
    return SvdResult(
        left=_freeze(np.ascontiguousarray(left)),
        singulars=_freeze(s.copy()),
        right=_freeze(np.ascontiguousarray(right)),
        rank=r,
    )


def polar(a) -> tuple[np.ndarray, np.ndarray]:
    """Left polar decomposition ``a = w @ abs`` with ``abs = (a^* a)^{1/2}``.

    ``w`` is a partial isometry whose initial space is the range of ``abs``.
    """
    a = as_matrix(a)
    res = svd(a)
    n = a.shape[1]
    if res.rank == 0:
        return _freeze(np.zeros_like(a)), _freeze(np.zeros((n, n), dtype=np.complex128))
    w = res.left @ res.right.conj().T
    modulus = (res.right * res.singulars) @ res.right.conj().T
    modulus = (modulus + modulus.conj().T) / 2
    return _freeze(w), _freeze(modulus)


def is_psd(a, tol: float = 1e-10) -> bool:
    """Self-adjoint with no eigenvalue below ``-tol * (1 + ||a||_F)``."""
    a = as_matrix(a)
    _square(a)
    slack = tol * (1.0 + np.linalg.norm(a))
    if np.linalg.norm(a - a.conj().T) > slack:
        return False
    w = np.linalg.eigvalsh((a + a.conj().T) / 2)
    return bool(w[0] >= -slack)


def is_unitary(a, tol: float = 1e-10) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0])) <= tol)
