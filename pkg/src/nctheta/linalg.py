"""Dense complex linear algebra with fixed bipartite conventions.

Conventions used throughout the package:

* indices are 0-based;
* a bipartite product space H_A (x) H_B of dimensions (dim_a, dim_b) is
  flattened row-major, pair (a, b) -> a * dim_b + b, matching ``numpy.kron``;
* the maximally entangled reference vector is unnormalized,
  ``phi = sum_i |i>|i>`` with <phi|phi> = dim;
* ``vectorize(M) = (M (x) I)|phi>``, which coincides with the row-major
  flattening of M.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotHermitianError, NotPsdError, PreconditionError

HERM_TOL = 1e-9
EIG_TOL = 1e-9
PINV_RCOND = 1e-10


def as_complex_matrix(m) -> np.ndarray:
    """Return ``m`` as a 2-d complex ndarray (no copy when already one)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of ndim {a.ndim}")
    return a


def check_square(m: np.ndarray) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m.shape[0]


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dag b)."""
    return complex(np.vdot(a, b))


def frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def herm_deviation(m: np.ndarray) -> float:
    """Relative deviation from Hermiticity, ||M - M^dag|| / (1 + ||M||)."""
    m = as_complex_matrix(m)
    check_square(m)
    return frob(m - dagger(m)) / (1.0 + frob(m))


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    return herm_deviation(m) <= tol


def require_hermitian(m: np.ndarray, tol: float = HERM_TOL, what: str = "matrix") -> np.ndarray:
    m = as_complex_matrix(m)
    dev = herm_deviation(m)
    if dev > tol:
        raise NotHermitianError(f"{what} is not Hermitian (relative deviation {dev:.3e})")
    return 0.5 * (m + dagger(m))


@dataclass(frozen=True)
class BipartiteIndex:
    """Row-major flattening of a bipartite product space."""

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionError(f"dimensions must be >= 1, got ({self.dim_a}, {self.dim_b})")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def encode(self, a: int, b: int) -> int:
        if not (0 <= a < self.dim_a and 0 <= b < self.dim_b):
            raise DimensionError(f"index ({a}, {b}) outside ({self.dim_a}, {self.dim_b})")
        return a * self.dim_b + b

    def decode(self, k: int) -> tuple[int, int]:
        if not (0 <= k < self.dim):
            raise DimensionError(f"flat index {k} outside dimension {self.dim}")
        return divmod(k, self.dim_b)


def max_ent_vector(dim: int) -> np.ndarray:
    """Unnormalized maximally entangled vector sum_i |i>|i> on C^dim (x) C^dim."""
    if dim < 1:
        raise DimensionError(f"dimension must be >= 1, got {dim}")
    phi = np.zeros(dim * dim, dtype=complex)
    phi[:: dim + 1] = 1.0
    return phi


def vectorize(m: np.ndarray) -> np.ndarray:
    """(M (x) I)|phi>, i.e. the row-major flattening of M."""
    m = as_complex_matrix(m)
    check_square(m)
    return m.reshape(-1).copy()


def unvectorize(v: np.ndarray, dim: int) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != dim * dim:
        raise DimensionError(f"vector of size {v.size} is not {dim}x{dim}")
    return v.reshape(dim, dim).copy()


def partial_trace(m: np.ndarray, dims: tuple[int, int], side: str) -> np.ndarray:
    """Trace out one tensor factor of an operator on H_A (x) H_B.

    side='a' traces out the first factor (result on H_B), side='b' the second.
    """
    m = as_complex_matrix(m)
    da, db = dims
    if m.shape != (da * db, da * db):
        raise DimensionError(f"matrix shape {m.shape} does not match dims {dims}")
    m4 = m.reshape(da, db, da, db)
    if side == "a":
        return np.einsum("abad->bd", m4)
    if side == "b":
        return np.einsum("abcb->ac", m4)
    raise ValueError(f"side must be 'a' or 'b', got {side!r}")


def realify(m: np.ndarray) -> np.ndarray:
    """Real-symmetric image [[Re M, -Im M], [Im M, Re M]] of a Hermitian matrix.

    realify is a *-homomorphism and doubles Hilbert-Schmidt inner products:
    Tr(realify(A) realify(B)) = 2 Tr(AB) for Hermitian A, B.
    """
    m = require_hermitian(m)
    re, im = m.real, m.imag
    return np.block([[re, -im], [im, re]])


def unrealify(r: np.ndarray, dim: int) -> np.ndarray:
    """Average the two real copies back to a Hermitian matrix.

    For a symmetric matrix that is exactly of realified form this inverts
    ``realify``; otherwise it projects onto the realified subspace first.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (2 * dim, 2 * dim):
        raise DimensionError(f"shape {r.shape} is not the realification of dim {dim}")
    re = 0.5 * (r[:dim, :dim] + r[dim:, dim:])
    im = 0.5 * (r[dim:, :dim] - r[:dim, dim:])
    m = re + 1j * im
    return 0.5 * (m + dagger(m))


def realify_defect(r: np.ndarray, dim: int) -> float:
    """Frobenius distance from r to the realified (J-invariant) subspace."""
    return frob(r - realify(unrealify(r, dim)))


def herm_eigvalsh(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix through its realification.

    The realified spectrum repeats every eigenvalue twice; adjacent pairs of
    the sorted real spectrum are averaged back into one copy.
    """
    m = require_hermitian(m)
    w = np.linalg.eigvalsh(realify(m))
    return 0.5 * (w[0::2] + w[1::2])


def min_eig(m: np.ndarray) -> float:
    return float(herm_eigvalsh(m)[0])


def op_norm(m: np.ndarray) -> float:
    """Spectral norm."""
    return float(np.linalg.norm(as_complex_matrix(m), 2))


def trace_norm(m: np.ndarray) -> float:
    """Trace norm of a Hermitian matrix (sum of absolute eigenvalues)."""
    return float(np.abs(herm_eigvalsh(m)).sum())


def psd_sqrt(m: np.ndarray, eig_tol: float = EIG_TOL) -> np.ndarray:
    """Positive-semidefinite square root.

    Eigenvalues below -eig_tol * (1 + max |eig|) raise NotPsdError; small
    negatives inside the tolerance are clamped to zero. The root is computed
    on the realified matrix (realify commutes with matrix functions) and
    decoded back.
    """
    m = require_hermitian(m)
    n = m.shape[0]
    r = realify(m)
    w, v = np.linalg.eigh(r)
    scale = 1.0 + float(np.abs(w).max(initial=0.0))
    if w[0] < -eig_tol * scale:
        raise NotPsdError(f"matrix is not PSD (min eigenvalue {w[0]:.3e}, scale {scale:.3e})")
    w = np.sqrt(np.clip(w, 0.0, None))
    root = (v * w) @ v.T
    return unrealify(root, n)


def pinv_psd(m: np.ndarray, rcond: float = PINV_RCOND) -> np.ndarray:
    """Pseudo-inverse of a Hermitian matrix; singular values below rcond * s_max are dropped."""
    m = require_hermitian(m)
    p = np.linalg.pinv(m, rcond=rcond, hermitian=True)
    return 0.5 * (p + dagger(p))


def handle_vector(m: np.ndarray, x: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """The canonical h with sqrt(M) h = x and <h|h> <= 1 when M >= x x^dag.

    Precondition M >= |x><x| is checked within tol (relative to 1 + ||M||).
    """
    m = require_hermitian(m)
    x = np.asarray(x, dtype=complex).reshape(-1)
    if x.size != m.shape[0]:
        raise DimensionError(f"vector size {x.size} does not match matrix dim {m.shape[0]}")
    gap = min_eig(m - np.outer(x, x.conj()))
    scale = 1.0 + frob(m)
    if gap < -tol * scale:
        raise PreconditionError(
            f"M - |x><x| has min eigenvalue {gap:.3e}, below tolerance", violation=-gap
        )
    return pinv_psd(psd_sqrt(m)) @ x
