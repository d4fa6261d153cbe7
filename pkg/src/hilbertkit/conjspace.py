"""Conjugate Hilbert space, basis-dependent conjugations and the linear Riesz map.

A vector of the conjugate space is stored with the *same* coordinates as the
vector it came from, plus a ``space`` tag.  The tag changes how scalars act
(``lam * x`` multiplies the coordinates by ``conj(lam)`` on the conjugate side)
and how inner products are evaluated, so plain and conjugate vectors can never
be paired by accident.

Only basis-dependent maps onto ``H`` and the basis-free map onto the dual of
the conjugate space are offered; no basis-free linear map ``H -> H'`` exists
here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotUnitaryBasis, WrongSpaceTag
from .linalg import as_matrix, as_vector

PLAIN = "plain"
CONJUGATE = "conjugate"
_SPACES = (PLAIN, CONJUGATE)

BASIS_TOL = 1e-10


def _check_space(space: str) -> str:
    if space not in _SPACES:
        raise WrongSpaceTag(f"unknown space tag {space!r}")
    return space


@dataclass(frozen=True, eq=False)
class Ket:
    coords: np.ndarray
    space: str = PLAIN

    def __post_init__(self):
        object.__setattr__(self, "coords", as_vector(self.coords, "coords"))
        _check_space(self.space)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def scale(self, lam: complex) -> Ket:
        """Scalar multiplication in the space the ket lives in."""
        factor = lam if self.space == PLAIN else np.conj(lam)
        return Ket(factor * self.coords, self.space)

    def __add__(self, other: Ket) -> Ket:
        _same_space(self, other)
        return Ket(self.coords + other.coords, self.space)

    def __sub__(self, other: Ket) -> Ket:
        _same_space(self, other)
        return Ket(self.coords - other.coords, self.space)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


@dataclass(frozen=True, eq=False)
class Bra:
    """A linear functional given by its coefficient row.

    On a plain domain it maps ``y`` to ``coeffs @ y``; on a conjugate domain
    it maps the conjugate vector with coordinates ``y`` to
    ``coeffs @ conj(y)``, which is what linearity over the conjugate scalar
    action requires.
    """

    coeffs: np.ndarray
    domain: str = PLAIN

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_vector(self.coeffs, "coeffs"))
        _check_space(self.domain)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def __call__(self, y: Ket) -> complex:
        if y.space != self.domain:
            raise WrongSpaceTag(f"functional on {self.domain} space applied to {y.space} vector")
        if y.dim != self.dim:
            raise DimensionMismatch(f"functional of dim {self.dim} applied to dim {y.dim}")
        coords = y.coords if self.domain == PLAIN else y.coords.conj()
        return complex(self.coeffs @ coords)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def _same_space(x: Ket, y: Ket) -> None:
    if x.space != y.space:
        raise WrongSpaceTag(f"cannot combine a {x.space} vector with a {y.space} vector")
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim} vs {y.dim}")


def _plain(x: Ket) -> Ket:
    if not isinstance(x, Ket):
        x = Ket(x)
    if x.space != PLAIN:
        raise WrongSpaceTag("expected a plain vector")
    return x


def inner_product(x: Ket, y: Ket) -> complex:
    """Inner product, linear in the first slot.

    In the conjugate space it is the complex conjugate of the plain one.
    """
    _same_space(x, y)
    value = complex(np.vdot(y.coords, x.coords))
    return value if x.space == PLAIN else value.conjugate()


def to_conjugate(x: Ket) -> Ket:
    """The canonical antiunitary identity map into the conjugate space.

    Applied to a conjugate vector it maps back, since the conjugate of the
    conjugate space is the original space.
    """
    if not isinstance(x, Ket):
        x = Ket(x)
    return Ket(x.coords, CONJUGATE if x.space == PLAIN else PLAIN)


def _basis(basis, dim: int) -> np.ndarray:
    b = as_matrix(basis, "basis")
    if b.shape != (dim, dim):
        raise DimensionMismatch(f"basis must be {dim}x{dim}, got {b.shape[0]}x{b.shape[1]}")
    if np.linalg.norm(b.conj().T @ b - np.eye(dim)) > BASIS_TOL:
        raise NotUnitaryBasis("basis columns are not orthonormal within 1e-10")
    return b


def basis_coordinates(x: Ket, basis) -> np.ndarray:
    """The Fourier coefficients ``<x, e_i>`` for the basis columns ``e_i``."""
    x = _plain(x)
    b = _basis(basis, x.dim)
    return b.conj().T @ x.coords


def re_im_parts(x: Ket, basis=None) -> tuple[Ket, Ket]:
    """Basis-dependent real and imaginary parts, ``x = re + i * im``."""
    x = _plain(x)
    b = _basis(np.eye(x.dim) if basis is None else basis, x.dim)
    c = b.conj().T @ x.coords
    return Ket(b @ c.real), Ket(b @ c.imag)


def star_element(x: Ket, basis=None) -> Ket:
    """``sum_i conj(<x, e_i>) e_i``, the basis-dependent conjugate of ``x``."""
    x = _plain(x)
    b = _basis(np.eye(x.dim) if basis is None else basis, x.dim)
    return Ket(b @ (b.conj().T @ x.coords).conj())


def semilinear_conjugation(x: Ket, basis=None) -> Ket:
    """The conjugation of ``H`` attached to ``basis``.

    It is the composite of the linear conjugation operator into the conjugate
    space and the canonical map back to ``H``; an involution with
    ``<Jx, Jy> = <y, x>``.
    """
    return to_conjugate(conjugation_operator(x, basis))


def conjugation_operator(x: Ket, basis=None) -> Ket:
    """Linear isometric map ``H -> conj(H)``, ``x -> J(x*_B)``."""
    return to_conjugate(star_element(x, basis))


def riesz_map(x: Ket) -> Bra:
    """Linear Riesz map onto the dual of the conjugate space.

    The returned functional evaluated at ``to_conjugate(y)`` equals
    ``<x, y>``, and ``x -> riesz_map(x)`` is linear and isometric.
    """
    x = _plain(x)
    return Bra(x.coords, CONJUGATE)


def riesz_inverse(a: Bra) -> Ket:
    """Recover ``x`` from ``riesz_map(x)``."""
    if a.domain != CONJUGATE:
        raise WrongSpaceTag("riesz_inverse expects a functional on the conjugate space")
    return Ket(a.coeffs)


def bra(y: Ket) -> Bra:
    """Dirac bra ``<y| = <., y>`` on ``H``; semilinear in ``y``."""
    y = _plain(y)
    return Bra(y.coords.conj(), PLAIN)
