"""Linear maps on matrix algebras in Choi form.

Conventions (used everywhere, documented only here):

* ``{e_i}`` is the standard computational basis; complex conjugation and
  transposition are entrywise in that basis.
* A map ``phi: M_n -> M_m`` is stored canonically through its Choi matrix
  ``W = sum_ij e_ij (x) phi(e_ij)``, an ``nm x nm`` Hermitian matrix whose
  first tensor factor is the input space.  With row index ``i*m + k``,
  ``W[(i,k),(j,l)] = phi(e_ij)[k,l]``.
* The inverse direction is ``phi(X) = Tr_in(W (X^t (x) I_m))``.
* Pairing convention: the map-level quantity ``<y|phi(P_x)|y>`` equals
  ``<z|W|z>`` for the product embedding ``z = conj(x) (x) y``.  Putting the
  conjugation on the input factor is forced by the Choi ordering above:
  ``<z|W|z> = <y|phi(sum_ij conj(z...)e_ij)|y>`` picks up ``x_i conj(x_j)``
  coefficients, i.e. exactly ``P_x``, for every map including ones with
  complex structure constants.  The conjugation lives in exactly one
  helper, :func:`product_vector`; every caller goes through it.
* Rays ``[phi] = {lam * phi, lam > 0}`` get a deterministic representative:
  trace normalized to ``n*m`` when ``Tr W > 0``, otherwise unit Frobenius
  norm with the first sizable real coordinate made positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DimensionMismatch, NonRealPairing
from .linalg import frobenius, hermitian_to_coords, require_hermitian


@dataclass(frozen=True, eq=False)
class LinearMatrixMap:
    """A linear map M_n -> M_m held as its Choi matrix plus dimensions."""

    dim_in: int
    dim_out: int
    choi: np.ndarray

    def __post_init__(self):
        n, m = self.dim_in, self.dim_out
        if n < 1 or m < 1:
            raise DimensionMismatch("dimensions must be positive")
        W = require_hermitian(self.choi)
        if W.shape != (n * m, n * m):
            raise DimensionMismatch(
                f"Choi matrix shape {W.shape} does not match dims ({n}, {m})"
            )
        object.__setattr__(self, "choi", W)

    def __add__(self, other: "LinearMatrixMap") -> "LinearMatrixMap":
        return add(self, other)

    def __sub__(self, other: "LinearMatrixMap") -> "LinearMatrixMap":
        return add(self, scale(other, -1.0))

    def __rmul__(self, lam: float) -> "LinearMatrixMap":
        return scale(self, lam)


def choi_of(phi: LinearMatrixMap) -> np.ndarray:
    """The Choi matrix ``sum_ij e_ij (x) phi(e_ij)`` (a defensive copy)."""
    return phi.choi.copy()


def map_from_choi(W: np.ndarray, dim_in: int, dim_out: int) -> LinearMatrixMap:
    """Wrap a Hermitian ``nm x nm`` matrix as the map it represents."""
    return LinearMatrixMap(dim_in, dim_out, np.asarray(W, dtype=complex))


def choi_from_apply(fn, dim_in: int, dim_out: int) -> LinearMatrixMap:
    """Build a map from its action on matrix units.

    ``fn`` receives each ``e_ij`` (as an ``n x n`` array) and must return the
    ``m x m`` image.  This is how every catalog constructor evaluates its
    defining formula.
    """
    n, m = dim_in, dim_out
    T = np.zeros((n, m, n, m), dtype=complex)
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[i, j] = 1.0
            T[i, :, j, :] = np.asarray(fn(unit), dtype=complex)
    return LinearMatrixMap(n, m, T.reshape(n * m, n * m))


def apply(phi: LinearMatrixMap, X: np.ndarray) -> np.ndarray:
    """Evaluate the map on ``X`` via ``Tr_in(W (X^t (x) I))``."""
    X = np.asarray(X, dtype=complex)
    n, m = phi.dim_in, phi.dim_out
    if X.shape != (n, n):
        raise DimensionMismatch(f"expected a {n} x {n} input, got {X.shape}")
    T = phi.choi.reshape(n, m, n, m)
    return np.einsum("ikpl,ip->kl", T, X)


def add(phi: LinearMatrixMap, psi: LinearMatrixMap) -> LinearMatrixMap:
    if (phi.dim_in, phi.dim_out) != (psi.dim_in, psi.dim_out):
        raise DimensionMismatch("cannot add maps with different dimensions")
    return LinearMatrixMap(phi.dim_in, phi.dim_out, phi.choi + psi.choi)


def scale(phi: LinearMatrixMap, lam: float) -> LinearMatrixMap:
    return LinearMatrixMap(phi.dim_in, phi.dim_out, float(lam) * phi.choi)


def compose_with_transpose(phi: LinearMatrixMap) -> LinearMatrixMap:
    """The map ``X -> phi(X^t)``.

    Its Choi matrix is the input-side partial transpose of ``choi(phi)``,
    which is what the complete-copositivity check reduces to.
    """
    n, m = phi.dim_in, phi.dim_out
    T = phi.choi.reshape(n, m, n, m)
    return LinearMatrixMap(n, m, T.transpose(2, 1, 0, 3).reshape(n * m, n * m))


def product_vector(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Witness-coordinate embedding ``conj(x) (x) y`` of a map-level pair.

    The single place where the pairing conjugation happens.
    """
    return np.kron(np.conj(np.asarray(x, dtype=complex)), np.asarray(y, dtype=complex))


def witness_pairing(
    W: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """The real pairing of W with the pair's product state, ``<y|phi(P_x)|y>``."""
    W = np.asarray(W, dtype=complex)
    z = product_vector(x, y)
    if W.shape != (z.size, z.size):
        raise DimensionMismatch(
            f"witness of shape {W.shape} does not pair with a product vector of length {z.size}"
        )
    value = complex(np.vdot(z, W @ z))
    bound = tol.pairing_imag_tol * max(1.0, frobenius(W))
    if abs(value.imag) > bound:
        raise NonRealPairing(
            f"imaginary residue {value.imag:.3e} exceeds bound {bound:.3e}"
        )
    return value.real


def ray_representative(W: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Deterministic representative of the ray through ``W``.

    Trace-positive matrices are scaled so ``Tr W = n*m``; otherwise the
    matrix is Frobenius normalized and its sign fixed by the first real
    coordinate exceeding ``tol.ray_tol`` in magnitude.
    """
    W = np.asarray(W, dtype=complex)
    tr = float(np.trace(W).real)
    if tr > tol.ray_tol * max(1.0, frobenius(W)):
        return W * (W.shape[0] / tr)
    norm = frobenius(W)
    if norm == 0.0:
        return W.copy()
    What = W / norm
    coords = hermitian_to_coords(What)
    idx = np.flatnonzero(np.abs(coords) > tol.ray_tol)
    if idx.size and coords[idx[0]] < 0:
        What = -What
    return What


def is_ray_proportional(
    W1: np.ndarray, W2: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Whether two nonzero witnesses generate the same ray (positive scalars only)."""
    n1, n2 = frobenius(W1), frobenius(W2)
    if n1 == 0.0 or n2 == 0.0:
        return False
    return frobenius(W1 / n1 - W2 / n2) <= tol.ray_tol
