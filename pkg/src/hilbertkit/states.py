"""Density operators, Schmidt decomposition and finite-dimensional Gleason reconstruction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    InconsistentMeasure,
    NotDensityOperator,
    NotUnit,
    WeightsNotNormalized,
    ZeroElement,
)
from .linalg import _freeze, as_matrix, as_vector, hermitian_eig, is_psd, svd
from .tensor import TensorElement

STATE_TOL = 1e-10
UNIT_TOL = 1e-10
WEIGHT_TOL = 1e-12
HOLDOUT_TOL = 1e-8

Measure = Callable[[np.ndarray], float]


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, positive semidefinite, trace-one matrix with its spectrum."""

    matrix: np.ndarray
    spectrum: np.ndarray
    eigvecs: np.ndarray

    @classmethod
    def from_matrix(cls, a, tol: float = STATE_TOL) -> DensityOperator:
        a = as_matrix(a)
        if a.shape[0] != a.shape[1]:
            raise NotDensityOperator("a density operator must be square")
        if np.linalg.norm(a - a.conj().T) > tol:
            raise NotDensityOperator("matrix is not Hermitian")
        if not is_psd(a, tol):
            raise NotDensityOperator("matrix is not positive semidefinite")
        if abs(np.trace(a) - 1.0) > tol:
            raise NotDensityOperator(f"trace is {np.trace(a).real!r}, not 1")
        h = _freeze((a + a.conj().T) / 2)
        w, v = hermitian_eig(h)
        if w[-1] < -tol or w[0] > 1 + tol or abs(w.sum() - 1.0) > 1e-9:
            raise NotDensityOperator("spectrum outside [0, 1] or not summing to 1")
        return cls(h, w, v)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, a) -> complex:
        """``tr(a D)``."""
        a = as_matrix(a)
        if a.shape != self.matrix.shape:
            raise DimensionMismatch(f"{a.shape} operator on a {self.dim}-dim state")
        return complex(np.einsum("ij,ji->", a, self.matrix))

    def purity(self) -> float:
        return float(np.sum(self.spectrum**2))


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """``z = sum_k coeffs[k] * left[k] (x) right[k]`` with orthonormal families."""

    coeffs: np.ndarray
    left: np.ndarray  # n x r, columns in C^n
    right: np.ndarray  # m x r, columns in C^m

    @property
    def rank(self) -> int:
        return int(self.coeffs.shape[0])

    def probabilities(self) -> np.ndarray:
        """The squared coefficients, i.e. the eigenvalues of the reduced state."""
        return self.coeffs**2

    def reconstruct(self) -> TensorElement:
        terms = tuple(
            (c * self.left[:, k], self.right[:, k]) for k, c in enumerate(self.coeffs)
        )
        return TensorElement(self.left.shape[0], self.right.shape[0], terms)


def schmidt(z: TensorElement) -> SchmidtForm:
    """Schmidt decomposition from the SVD of the representative.

    With ``R = sum_k s_k l_k r_k^*`` the right-factor vectors are ``l_k`` and
    the left-factor vectors ``conj(r_k)``, because ``R`` stores ``y x^T``.
    Degenerate coefficients keep the SVD order; only the multiset of
    coefficients is unique.
    """
    if not np.any(z.matrix_rep):
        raise ZeroElement("the zero tensor has no Schmidt decomposition")
    res = svd(z.matrix_rep)
    return SchmidtForm(
        coeffs=res.singulars,
        left=_freeze(res.right.conj()),
        right=res.left,
    )


def is_entangled(z: TensorElement, tol: float = 1e-12) -> bool:
    """More than one Schmidt coefficient above ``tol`` (relative to the largest)."""
    c = schmidt(z).coeffs
    return bool(np.count_nonzero(c > tol * c[0]) > 1)


def density_from_mixture(weights: Sequence[float], vectors: Iterable) -> DensityOperator:
    """``sum_n p_n x_n x_n^*`` for probability weights and unit vectors."""
    p = np.asarray(weights, dtype=float)
    vecs = [as_vector(v) for v in vectors]
    if p.ndim != 1 or p.shape[0] != len(vecs) or not vecs:
        raise DimensionMismatch("need one weight per vector")
    if np.any(p < 0) or abs(p.sum() - 1.0) > WEIGHT_TOL:
        raise WeightsNotNormalized("weights must be nonnegative and sum to 1")
    n = vecs[0].shape[0]
    d = np.zeros((n, n), dtype=np.complex128)
    for w, v in zip(p, vecs):
        if v.shape[0] != n:
            raise DimensionMismatch("mixture vectors must share one dimension")
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            raise NotUnit("mixture vectors must be unit vectors")
        d += w * np.outer(v, v.conj())
    return DensityOperator.from_matrix(d)


def projector(v) -> np.ndarray:
    """Orthogonal projection onto the span of the columns of ``v`` (orthonormal)."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim == 1:
        v = v[:, None]
    return _freeze(v @ v.conj().T)


def gleason_probes(dim: int) -> list[tuple[tuple, np.ndarray]]:
    """The ``dim**2`` rank-one probe projections used for reconstruction.

    Keys are ``("basis", i)``, ``("plus", i, j)`` and ``("iplus", i, j)``
    (0-based, ``i < j``) for ``e_i``, ``(e_i + e_j)/sqrt 2`` and
    ``(e_i + 1j e_j)/sqrt 2``.
    """
    eye = np.eye(dim, dtype=np.complex128)
    probes = [(("basis", i), projector(eye[i])) for i in range(dim)]
    r = 1 / np.sqrt(2)
    for i in range(dim):
        for j in range(i + 1, dim):
            probes.append((("plus", i, j), projector(r * (eye[i] + eye[j]))))
            probes.append((("iplus", i, j), projector(r * (eye[i] + 1j * eye[j]))))
    return probes


def random_projections(dim: int, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Projections of random rank ``1..dim`` onto random subspaces."""
    out = []
    for _ in range(count):
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        q, _ = np.linalg.qr(g)
        rank = int(rng.integers(1, dim + 1))
        out.append(projector(q[:, :rank]))
    return out


def _evaluate(measure: Measure, p: np.ndarray) -> float:
    try:
        value = measure(p)
    except KeyError as exc:
        raise InconsistentMeasure(f"measure is undefined on a required projection: {exc}") from exc
    value = complex(value)
    if abs(value.imag) > HOLDOUT_TOL or not np.isfinite(value.real):
        raise InconsistentMeasure(f"measure returned a non-real value {value!r}")
    return value.real


def gleason_reconstruct(
    measure: Measure,
    dim: int,
    *,
    holdout: int | Sequence = 50,
    seed: int = 0,
    tol: float = HOLDOUT_TOL,
) -> DensityOperator:
    """Recover the density operator ``D`` with ``measure(P) = tr(P D)``.

    Diagonal entries come from the basis projections, the real and imaginary
    parts of ``D[i, j]`` from the two superposition probes by polarization:

        Re D_ij = mu(plus_ij) - (D_ii + D_jj) / 2
        Im D_ij = (D_ii + D_jj) / 2 - mu(iplus_ij)

    The result is then checked against ``holdout`` further projections (a
    count of seeded random projections, or an explicit sequence) and, when
    the measure is defined there, the identity; any disagreement beyond
    ``tol`` raises InconsistentMeasure.
    """
    if dim < 3:
        raise DimensionTooSmall("Gleason reconstruction requires dim >= 3")
    values = {key: _evaluate(measure, p) for key, p in gleason_probes(dim)}
    d = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        d[i, i] = values[("basis", i)]
    for i in range(dim):
        for j in range(i + 1, dim):
            mean = (d[i, i].real + d[j, j].real) / 2
            entry = (values[("plus", i, j)] - mean) + 1j * (mean - values[("iplus", i, j)])
            d[i, j] = entry
            d[j, i] = np.conj(entry)
    try:
        state = DensityOperator.from_matrix(d)
    except NotDensityOperator as exc:
        raise InconsistentMeasure(f"reconstruction is not a density operator: {exc}") from exc

    if isinstance(holdout, int):
        checks = random_projections(dim, holdout, np.random.default_rng(seed))
    else:
        checks = [as_matrix(p) for p in holdout]
    eye = np.eye(dim, dtype=np.complex128)
    try:
        measure(eye)
    except KeyError:
        pass  # a finite table need not list the identity; tr D = 1 is checked above
    else:
        checks = [eye] + checks
    worst = max_holdout_residual(state, measure, checks)
    if worst > tol:
        raise InconsistentMeasure(f"held-out projection mismatch {worst:.3e} > {tol:.1e}")
    return state


def max_holdout_residual(state: DensityOperator, measure: Measure, projections) -> float:
    worst = 0.0
    for p in projections:
        worst = max(worst, abs(state.expectation(p).real - _evaluate(measure, p)))
    return worst


def measure_from_state(d) -> Measure:
    """The Born-rule measure ``P -> tr(P d)`` of a fixed matrix."""
    d = as_matrix(d)
    return lambda p: float(np.real(np.einsum("ij,ji->", as_matrix(p), d)))


class TableMeasure:
    """A measure given as a finite table of ``(projection, value)`` samples.

    Lookup matches projections entrywise within ``match_tol``; an unknown
    projection raises KeyError.
    """

    def __init__(self, samples: Sequence[tuple], match_tol: float = 1e-9):
        self.samples = [(as_matrix(p), float(v)) for p, v in samples]
        self.match_tol = match_tol

    def __call__(self, p) -> float:
        p = as_matrix(p)
        for q, v in self.samples:
            if q.shape == p.shape and np.abs(q - p).max() <= self.match_tol:
                return v
        raise KeyError("projection not present in the measure table")

    def unused(self, used: Sequence[np.ndarray]) -> list[np.ndarray]:
        """Sample projections not matching any of ``used`` (the hold-out set)."""
        rest = []
        for q, _ in self.samples:
            if not any(u.shape == q.shape and np.abs(u - q).max() <= self.match_tol for u in used):
                rest.append(q)
        return rest
