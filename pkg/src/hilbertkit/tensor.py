"""Kronecker / vec / commutation-matrix calculus and dyadic tensor elements.

Orientation convention: an element ``sum_k x_k (x) y_k`` of ``C^n (x) C^m`` is
represented by the ``m x n`` matrix ``sum_k y_k x_k^T``.  No conjugation is
involved anywhere in this module, so every map here is linear; the
conjugate-space bookkeeping lives in :mod:`hilbertkit.conjspace`.  With this
convention ``vec(y x^T) = kron(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyFactorList, InvalidDimension, InvalidMatrix
from .linalg import _freeze, as_matrix, as_vector

REP_TOL = 1e-12


def _as_operand(a) -> np.ndarray:
    arr = np.asarray(a)
    return as_vector(arr) if arr.ndim == 1 else as_matrix(arr)


def kron(x, y) -> np.ndarray:
    """Kronecker product with the block layout ``[x_ij * y]``.

    Two 1-D vectors give the stacked vector ``(x_1 y, ..., x_n y)``.
    """
    x = _as_operand(x)
    y = _as_operand(y)
    if x.ndim != y.ndim:
        raise InvalidMatrix("kron needs two vectors or two matrices")
    if x.ndim == 1:
        return _freeze((x[:, None] * y[None, :]).reshape(-1))
    (a, b), (c, d) = x.shape, y.shape
    return _freeze((x[:, None, :, None] * y[None, :, None, :]).reshape(a * c, b * d))


def nfold_kron(factors: Sequence) -> np.ndarray:
    """Left fold ``((f1 (x) f2) (x) f3) ...`` of :func:`kron`."""
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("nfold_kron needs at least one factor")
    if len(factors) == 1:
        return _as_operand(factors[0])
    return reduce(kron, factors)


def vec(a) -> np.ndarray:
    """Stack the columns of ``a`` into one vector."""
    a = as_matrix(a)
    return _freeze(a.reshape(-1, order="F").copy())


def unvec(v, rows: int, cols: int) -> np.ndarray:
    v = as_vector(v)
    if v.shape[0] != rows * cols:
        raise DimensionMismatch(f"cannot reshape length {v.shape[0]} into {rows}x{cols}")
    return _freeze(v.reshape(rows, cols, order="F").copy())


def basis_vector(i: int, n: int) -> np.ndarray:
    """The standard basis vector ``e_i`` of ``C^n``, **1-based** like the math."""
    if not 1 <= i <= n:
        raise InvalidDimension(f"index {i} out of range 1..{n}")
    e = np.zeros(n, dtype=np.complex128)
    e[i - 1] = 1.0
    return _freeze(e)


def commutation_matrix(m: int, n: int) -> np.ndarray:
    """``K_{m,n} = sum_{i<=m, j<=n} e_i e_j^T (x) e_j e_i^T``.

    A permutation matrix with ``K_{m,n} @ kron(x, y) = kron(y, x)`` for
    ``x`` in ``C^n`` and ``y`` in ``C^m``; equivalently
    ``K_{m,n} @ vec(A) = vec(A^T)`` for ``m x n`` matrices ``A``.
    """
    if int(m) != m or int(n) != n or m < 1 or n < 1:
        raise InvalidDimension(f"commutation matrix needs m, n >= 1, got ({m}, {n})")
    m, n = int(m), int(n)
    k = np.zeros((m * n, m * n), dtype=np.complex128)
    for i in range(m):
        for j in range(n):
            # e_i e_j^T (x) e_j e_i^T has its single 1 at row i*n + j, col j*m + i
            k[i * n + j, j * m + i] = 1.0
    return _freeze(k)


@dataclass(frozen=True, eq=False)
class TensorElement:
    """A finite sum ``sum_k x_k (x) y_k`` in ``C^n (x) C^m``.

    ``matrix_rep`` is the ``m x n`` matrix ``sum_k y_k x_k^T``; two elements
    are equal exactly when their representatives are.
    """

    left_dim: int
    right_dim: int
    terms: tuple
    matrix_rep: np.ndarray = None

    def __post_init__(self):
        n, m = int(self.left_dim), int(self.right_dim)
        if n < 1 or m < 1:
            raise InvalidDimension("tensor factors must have dimension >= 1")
        terms = []
        for x, y in self.terms:
            x, y = as_vector(x, "x"), as_vector(y, "y")
            if x.shape[0] != n or y.shape[0] != m:
                raise DimensionMismatch(
                    f"term of shape ({x.shape[0]}, {y.shape[0]}) in C^{n} (x) C^{m}"
                )
            terms.append((x, y))
        rep = np.zeros((m, n), dtype=np.complex128)
        for x, y in terms:
            rep += np.outer(y, x)
        if self.matrix_rep is not None:
            stored = as_matrix(self.matrix_rep, "matrix_rep")
            if stored.shape != rep.shape or np.abs(stored - rep).max() > REP_TOL * (1 + np.abs(rep).max()):
                raise InvalidMatrix("stored matrix_rep disagrees with the terms")
        object.__setattr__(self, "left_dim", n)
        object.__setattr__(self, "right_dim", m)
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "matrix_rep", _freeze(rep))

    @classmethod
    def from_matrix(cls, r) -> TensorElement:
        """The element whose representative is ``r``, read column by column."""
        r = as_matrix(r)
        m, n = r.shape
        eye = np.eye(n, dtype=np.complex128)
        return cls(n, m, tuple((eye[j], r[:, j]) for j in range(n)))

    @classmethod
    def from_kron_vector(cls, v, left_dim: int, right_dim: int) -> TensorElement:
        return cls.from_matrix(unvec(v, right_dim, left_dim))

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix_rep))

    def scale(self, lam: complex) -> TensorElement:
        return TensorElement(self.left_dim, self.right_dim, tuple((lam * x, y) for x, y in self.terms))

    def __add__(self, other: TensorElement) -> TensorElement:
        if (self.left_dim, self.right_dim) != (other.left_dim, other.right_dim):
            raise DimensionMismatch("cannot add tensor elements of different shapes")
        return TensorElement(self.left_dim, self.right_dim, self.terms + other.terms)

    def swap(self) -> TensorElement:
        """The flipped element ``sum_k y_k (x) x_k``; its representative is the transpose."""
        return TensorElement(self.right_dim, self.left_dim, tuple((y, x) for x, y in self.terms))

    def same_element(self, other: TensorElement, tol: float = REP_TOL) -> bool:
        if (self.left_dim, self.right_dim) != (other.left_dim, other.right_dim):
            return False
        return bool(np.abs(self.matrix_rep - other.matrix_rep).max() <= tol)


def dyad(x, z) -> TensorElement:
    """Single term ``x (x) z`` with representative ``z x^T``."""
    x, z = as_vector(x, "x"), as_vector(z, "z")
    return TensorElement(x.shape[0], z.shape[0], ((x, z),))


def tensor_inner(z1: TensorElement, z2: TensorElement) -> complex:
    """Hilbert-Schmidt inner product ``tr(R2^* R1)``, linear in ``z1``.

    On dyads it factorizes: ``<x1 (x) y1, x2 (x) y2> = <x1, x2> <y1, y2>``.
    """
    if (z1.left_dim, z1.right_dim) != (z2.left_dim, z2.right_dim):
        raise DimensionMismatch("tensor elements live in different spaces")
    return complex(np.vdot(z2.matrix_rep, z1.matrix_rep))


def to_kron_vector(z: TensorElement) -> np.ndarray:
    """``sum_k kron(x_k, y_k)``, computed as ``vec`` of the representative."""
    return vec(z.matrix_rep)


def direct_sum_components(z: TensorElement) -> list[np.ndarray]:
    """Components of ``z`` under ``C^n (x) C^m ~ (C^m)^n``.

    Component ``i`` is ``sum_k x_k[i] y_k``, the ``i``-th column of the
    representative; the squared norms add up to ``||z||^2``.
    """
    return [_freeze(z.matrix_rep[:, i].copy()) for i in range(z.left_dim)]
