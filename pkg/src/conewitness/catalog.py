"""Constructors and analytic predicates for the map catalog.

The families: transposition, conjugation maps ``X -> V X V*`` and their
transposed twins ``X -> V X^t V*``, the reduction map, the generalized Choi
family on M_3, Breuer-Hall maps built from antisymmetric unitaries, and the
Robertson map they specialize to in M_4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionMismatch,
    NegativeParameter,
    NotAntisymmetric,
    NotPositiveMap,
    NotUnitary,
    OddDimension,
)
from .linalg import frobenius, random_unitary
from .maps import LinearMatrixMap, choi_from_apply, map_from_choi

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


# --- descriptors -----------------------------------------------------------


@dataclass(frozen=True)
class Transposition:
    n: int


@dataclass(frozen=True)
class Reduction:
    n: int


@dataclass(frozen=True, eq=False)
class Ad:
    """Descriptor for ``X -> V X V*``."""

    V: np.ndarray


@dataclass(frozen=True, eq=False)
class CoAd:
    """Descriptor for ``X -> V X^t V*``."""

    V: np.ndarray


@dataclass(frozen=True)
class ChoiFamily:
    a: float
    b: float
    c: float


@dataclass(frozen=True, eq=False)
class BreuerHall:
    U: np.ndarray


@dataclass(frozen=True)
class Robertson:
    pass


@dataclass(frozen=True, eq=False)
class FromChoi:
    W: np.ndarray
    dim_in: int
    dim_out: int


MapDescriptor = (
    Transposition | Reduction | Ad | CoAd | ChoiFamily | BreuerHall | Robertson | FromChoi
)


# --- validation helpers ----------------------------------------------------


def require_unitary(U: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {U.shape}")
    defect = frobenius(U.conj().T @ U - np.eye(U.shape[0]))
    if defect > tol.antisym_atol:
        raise NotUnitary(f"unitarity defect {defect:.3e}")
    return U


def require_antisymmetric_unitary(
    U: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES
) -> np.ndarray:
    """Validate ``U^t = -U`` and ``U^dag U = I``; even dimension is implied but checked."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {U.shape}")
    if U.shape[0] % 2 != 0:
        raise OddDimension("antisymmetric unitaries exist only in even dimension")
    if frobenius(U + U.T) > tol.antisym_atol:
        raise NotAntisymmetric(f"antisymmetry defect {frobenius(U + U.T):.3e}")
    require_unitary(U, tol)
    return U


# --- constructors ----------------------------------------------------------


def transposition(n: int) -> LinearMatrixMap:
    """The transposition map ``X -> X^t`` on M_n."""
    if n < 1:
        raise DimensionMismatch("n must be at least 1")
    return choi_from_apply(lambda E: E.T, n, n)


def ad_map(V: np.ndarray) -> LinearMatrixMap:
    """``X -> V X V*`` for any rectangular m x n matrix V.

    The Choi matrix is the rank-one projector onto ``sum_i e_i (x) V e_i``,
    which makes these the completely positive extreme rays.
    """
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {V.shape}")
    m, n = V.shape
    return choi_from_apply(lambda E: V @ E @ V.conj().T, n, m)


def co_ad_map(V: np.ndarray) -> LinearMatrixMap:
    """``X -> V X^t V*``, the completely copositive twin of :func:`ad_map`."""
    V = np.asarray(V, dtype=complex)
    m, n = V.shape
    return choi_from_apply(lambda E: V @ E.T @ V.conj().T, n, m)


def reduction(n: int) -> LinearMatrixMap:
    """The reduction map ``R(X) = I tr X - X`` on M_n."""
    if n < 2:
        raise DimensionMismatch("the reduction map needs n >= 2")
    eye = np.eye(n)
    return choi_from_apply(lambda E: eye * np.trace(E) - E, n, n)


def choi_family(a: float, b: float, c: float) -> LinearMatrixMap:
    """The generalized Choi family on M_3.

    Diagonal output entries cycle (a, b, c) over the input diagonal;
    off-diagonal entries are negated.
    """
    _require_family_params(a, b, c)

    def act(X):
        d = np.array(
            [
                a * X[0, 0] + b * X[1, 1] + c * X[2, 2],
                c * X[0, 0] + a * X[1, 1] + b * X[2, 2],
                b * X[0, 0] + c * X[1, 1] + a * X[2, 2],
            ]
        )
        out = -X + np.diag(np.diagonal(X))
        return out + np.diag(d)

    return choi_from_apply(act, 3, 3)


def _require_family_params(a: float, b: float, c: float) -> None:
    if a < 0 or b < 0 or c < 0:
        raise NegativeParameter(f"family parameters must be nonnegative, got {(a, b, c)}")


def choi_family_is_positive(a: float, b: float, c: float) -> bool:
    """Analytic positivity test for the generalized Choi family."""
    _require_family_params(a, b, c)
    return a < 2 and a + b + c >= 2 and (a > 1 or b * c >= (1 - a) ** 2)


def choi_family_is_indecomposable(a: float, b: float, c: float) -> bool:
    """Analytic indecomposability test; only defined on the positive region."""
    if not choi_family_is_positive(a, b, c):
        raise NotPositiveMap(f"parameters {(a, b, c)} are outside the positive region")
    return b * c < (2 - a) ** 2 / 4


def choi_family_boundary_margin(a: float, b: float, c: float) -> float:
    """Smallest slack against the three analytic positivity surfaces.

    Measured in constraint values, not Euclidean parameter distance.  Grid
    cross-checks exclude points where this margin is below the resolution
    of the numeric certifier.
    """
    margins = [abs(a - 2.0), abs(a + b + c - 2.0)]
    if a <= 1.02:
        margins.append(abs(b * c - (1 - a) ** 2))
    return min(margins)


def breuer_hall(U: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> LinearMatrixMap:
    """``X -> I tr X - X - U X^t U*`` for an antisymmetric unitary U."""
    U = require_antisymmetric_unitary(U, tol)
    n2 = U.shape[0]
    eye = np.eye(n2)
    Ud = U.conj().T
    return choi_from_apply(lambda E: eye * np.trace(E) - E - U @ E.T @ Ud, n2, n2)


def robertson() -> LinearMatrixMap:
    """The Robertson map on M_4, written in 2 x 2 blocks.

    Diagonal output blocks carry the trace of the opposite input block; the
    off-diagonal blocks are ``-(X_12 + R_2(X_21))`` and its mirror.
    """

    def r2(B):
        return np.eye(2) * np.trace(B) - B

    def act(X):
        X11, X12 = X[:2, :2], X[:2, 2:]
        X21, X22 = X[2:, :2], X[2:, 2:]
        out = np.zeros((4, 4), dtype=complex)
        out[:2, :2] = np.eye(2) * np.trace(X22)
        out[2:, 2:] = np.eye(2) * np.trace(X11)
        out[:2, 2:] = -(X12 + r2(X21))
        out[2:, :2] = -(X21 + r2(X12))
        return out

    return choi_from_apply(act, 4, 4)


def robertson_unitary() -> np.ndarray:
    """The antisymmetric unitary ``I_2 (x) sigma_y`` behind the Robertson map."""
    return np.kron(np.eye(2), SIGMA_Y)


def antisym_basis(V: np.ndarray, n2: int, tol: Tolerances = DEFAULT_TOLERANCES):
    """Basis of antisymmetric matrices ``V (e_ij - e_ji) V^t`` for i < j.

    The congruence by ``V^t`` (not the adjoint) is what preserves
    antisymmetry; each element has Frobenius norm sqrt(2), deliberately
    unnormalized so that summing ``D P D^dag`` over the basis reproduces
    the rank-deflated identity.
    """
    V = require_unitary(np.asarray(V, dtype=complex), tol)
    if V.shape[0] != n2:
        raise DimensionMismatch(f"V has shape {V.shape}, expected {(n2, n2)}")
    out = []
    Vt = V.T
    for i in range(n2):
        for j in range(i + 1, n2):
            E = np.zeros((n2, n2), dtype=complex)
            E[i, j] = 1.0
            E[j, i] = -1.0
            out.append(V @ E @ Vt)
    return out


def random_antisymmetric_unitary(
    n2: int, rng: np.random.Generator, tol: Tolerances = DEFAULT_TOLERANCES
) -> np.ndarray:
    """Haar-conjugated antisymmetric unitary ``V (I (x) sigma_y) V^t``."""
    if n2 % 2 != 0:
        raise OddDimension("antisymmetric unitaries exist only in even dimension")
    V = random_unitary(n2, rng)
    J = np.kron(np.eye(n2 // 2), SIGMA_Y)
    return require_antisymmetric_unitary(V @ J @ V.T, tol)


def build_map(desc: MapDescriptor) -> LinearMatrixMap:
    """Materialize any descriptor into its Choi-form map."""
    if isinstance(desc, Transposition):
        return transposition(desc.n)
    if isinstance(desc, Reduction):
        return reduction(desc.n)
    if isinstance(desc, Ad):
        return ad_map(desc.V)
    if isinstance(desc, CoAd):
        return co_ad_map(desc.V)
    if isinstance(desc, ChoiFamily):
        return choi_family(desc.a, desc.b, desc.c)
    if isinstance(desc, BreuerHall):
        return breuer_hall(desc.U)
    if isinstance(desc, Robertson):
        return robertson()
    if isinstance(desc, FromChoi):
        return map_from_choi(desc.W, desc.dim_in, desc.dim_out)
    raise TypeError(f"unknown descriptor {desc!r}")
