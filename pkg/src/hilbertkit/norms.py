"""Operator, Hilbert-Schmidt and nuclear norms, and trace duality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotSquare, NotUnit, ZeroMatrix
from .linalg import _freeze, as_matrix, as_vector, svd

UNIT_TOL = 1e-10


@dataclass(frozen=True)
class NormReport:
    operator_norm: float
    hs_norm: float
    nuclear_norm: float
    singulars: np.ndarray

    def to_dict(self) -> dict:
        return {
            "operator": self.operator_norm,
            "hs": self.hs_norm,
            "nuclear": self.nuclear_norm,
            "singulars": [float(s) for s in self.singulars],
        }


def norm_report(a) -> NormReport:
    """All three norms from a single SVD, so they are mutually consistent."""
    s = svd(a).singulars
    return NormReport(
        operator_norm=float(s[0]) if s.size else 0.0,
        hs_norm=float(np.sqrt(np.sum(s * s))),
        nuclear_norm=float(np.sum(s)),
        singulars=s,
    )


def operator_norm(a) -> float:
    s = svd(a).singulars
    return float(s[0]) if s.size else 0.0


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm ``sqrt(tr(a^* a))``."""
    a = as_matrix(a)
    return float(np.sqrt(np.sum(a.real**2 + a.imag**2)))


def nuclear_norm(a) -> float:
    """Trace-class norm: the sum of the singular values, ``tr(|a|)``."""
    return float(np.sum(svd(a).singulars))


def trace_duality_max(a, *, check_samples: int = 100, seed: int = 0) -> tuple[float, np.ndarray]:
    """Maximize ``|tr(a b)|`` over ``b`` with ``||b||_F <= 1``.

    The maximum is ``||a||_F``, attained at ``b = a^* / ||a||_F``.  As a sanity
    check the maximizer is compared against ``check_samples`` random
    unit-Frobenius competitors drawn from ``seed``.
    """
    a = as_matrix(a)
    value = hs_norm(a)
    if value == 0.0:
        raise ZeroMatrix("trace duality maximizer is undefined for the zero matrix")
    b = a.conj().T / value
    if check_samples:
        rng = np.random.default_rng(seed)
        shape = (check_samples,) + b.shape
        comp = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        comp /= np.linalg.norm(comp, axis=(1, 2))[:, None, None]
        vals = np.abs(np.einsum("ij,kji->k", a, comp))
        if vals.max() > value * (1 + 1e-12):
            raise ArithmeticError("random competitor beat the closed-form maximizer")
    return value, _freeze(b)


def composition_nuclear_bound(s, t) -> tuple[float, float]:
    """``(N(s t), sigma_2(s) sigma_2(t))``; the first never exceeds the second."""
    s = as_matrix(s, "s")
    t = as_matrix(t, "t")
    if s.shape[1] != t.shape[0]:
        raise DimensionMismatch(f"cannot compose {s.shape} with {t.shape}")
    return nuclear_norm(s @ t), hs_norm(s) * hs_norm(t)


def rank_one_projector(x) -> np.ndarray:
    """``D_x = x x^*`` for a vector ``x``."""
    x = as_vector(x)
    return _freeze(np.outer(x, x.conj()))


def vector_state(a, x) -> complex:
    """``<a x, x>`` for a unit vector ``x``; equal to ``tr(a D_x)``."""
    a = as_matrix(a)
    x = as_vector(x)
    if a.shape[0] != a.shape[1]:
        raise NotSquare("vector states are defined on square matrices")
    if a.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"{a.shape} matrix and vector of length {x.shape[0]}")
    if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
        raise NotUnit("vector state needs a unit vector")
    value = complex(np.vdot(x, a @ x))
    via_trace = complex(np.trace(a @ rank_one_projector(x)))
    if abs(value - via_trace) > 1e-10 * (1 + np.linalg.norm(a)):
        raise ArithmeticError("vector state disagrees with its trace form")
    return value
