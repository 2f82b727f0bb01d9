"""Vertex C*-algebras in canonical block form and the associated maps.

An S0Algebra describes S0 = (+)_i L(A_i) (x) I_{Y_i} acting on
C^n = (+)_i A_i (x) Y_i, stored as an ordered tuple of blocks (dA_i, dY_i).
Within block i the local index is a * dY_i + y (row-major), blocks are laid
out contiguously in order.

Maps provided:

* commproj  Delta(W) = sum_i dA_i^-1 I_{A_i} (x) Tr_{A_i}(P_i W P_i), the
  orthogonal projection onto the commutant S0';
* blockscale  Psi(W) = sum_i dY_i^-1 I_{A_i} (x) Tr_{A_i}(P_i W P_i);
* scaling_matrix  D = sum_i dA_i^-1 dY_i P_i, satisfying
  Delta(W) = Psi(sqrt(D) W sqrt(D)) and, on S0', Psi(M) = D^-1 M.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, subspace
from .errors import DimensionError, PreconditionError

MISSING_S0 = "graph has no S0 annotation; construct it with an S0Algebra"


@dataclass(frozen=True)
class S0Algebra:
    """Ordered block sizes (dA_i, dY_i) of a C*-algebra in canonical form."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple((int(a), int(y)) for a, y in self.blocks)
        if not blocks:
            raise DimensionError("an algebra needs at least one block")
        for a, y in blocks:
            if a < 1 or y < 1:
                raise DimensionError(f"block sizes must be >= 1, got {(a, y)}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(a * y for a, y in self.blocks)

    @property
    def offsets(self) -> list[int]:
        out, off = [], 0
        for a, y in self.blocks:
            out.append(off)
            off += a * y
        return out

    @property
    def dim(self) -> int:
        """Dimension of the algebra as a subspace, sum dA_i^2."""
        return sum(a * a for a, y in self.blocks)

    def check_matrix(self, w: np.ndarray) -> np.ndarray:
        w = linalg.as_complex_matrix(w)
        if w.shape != (self.n, self.n):
            raise DimensionError(f"matrix shape {w.shape} does not match n={self.n}")
        return w


def diagonal_algebra(n: int) -> S0Algebra:
    return S0Algebra(tuple((1, 1) for _ in range(n)))


def _unit(n: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1.0
    return e


def algebra_subspace(s0: S0Algebra) -> subspace.OperatorSubspace:
    """S0 as an operator subspace (orthonormal basis (E_ab (x) I_Y)/sqrt(dY))."""
    n = s0.n
    mats = []
    for (da, dy), off in zip(s0.blocks, s0.offsets):
        for a in range(da):
            for b in range(da):
                m = np.zeros((n, n), dtype=complex)
                for y in range(dy):
                    m[off + a * dy + y, off + b * dy + y] = 1.0 / np.sqrt(dy)
                mats.append(m)
    return subspace.OperatorSubspace(n, np.array(mats))


def commutant(s0: S0Algebra) -> subspace.OperatorSubspace:
    """S0' = (+)_i I_{A_i} (x) L(Y_i) as an operator subspace."""
    n = s0.n
    mats = []
    for (da, dy), off in zip(s0.blocks, s0.offsets):
        for y in range(dy):
            for z in range(dy):
                m = np.zeros((n, n), dtype=complex)
                for a in range(da):
                    m[off + a * dy + y, off + a * dy + z] = 1.0 / np.sqrt(da)
                mats.append(m)
    return subspace.OperatorSubspace(n, np.array(mats))


def matches_algebra(s0: S0Algebra, space: subspace.OperatorSubspace, tol: float = 1e-8) -> bool:
    """Whether a user-supplied subspace equals the canonical algebra subspace."""
    return algebra_subspace(s0).equals(space, tol)


def _block_compress(s0: S0Algebra, w: np.ndarray) -> list[np.ndarray]:
    """Per block i, Tr_{A_i}(P_i W P_i) as a dY_i x dY_i matrix."""
    out = []
    for (da, dy), off in zip(s0.blocks, s0.offsets):
        blk = w[off: off + da * dy, off: off + da * dy]
        out.append(np.einsum("ayaz->yz", blk.reshape(da, dy, da, dy)))
    return out


def _block_expand(s0: S0Algebra, pieces: list[np.ndarray], scales: list[float]) -> np.ndarray:
    n = s0.n
    out = np.zeros((n, n), dtype=complex)
    for (da, dy), off, t, c in zip(s0.blocks, s0.offsets, pieces, scales):
        out[off: off + da * dy, off: off + da * dy] = c * np.kron(np.eye(da), t)
    return out


def commproj(s0: S0Algebra, w: np.ndarray) -> np.ndarray:
    """Delta(W), the orthogonal projection of W onto the commutant S0'."""
    w = s0.check_matrix(w)
    return _block_expand(s0, _block_compress(s0, w), [1.0 / da for da, _ in s0.blocks])


def blockscale(s0: S0Algebra, w: np.ndarray) -> np.ndarray:
    """Psi(W) = sum_i dY_i^-1 I_{A_i} (x) Tr_{A_i}(P_i W P_i)."""
    w = s0.check_matrix(w)
    return _block_expand(s0, _block_compress(s0, w), [1.0 / dy for _, dy in s0.blocks])


def scaling_matrix(s0: S0Algebra) -> np.ndarray:
    """D = sum_i dA_i^-1 dY_i P_i (positive definite, diagonal in the block basis)."""
    n = s0.n
    d = np.zeros(n)
    for (da, dy), off in zip(s0.blocks, s0.offsets):
        d[off: off + da * dy] = dy / da
    return np.diag(d).astype(complex)


def complement(g: subspace.NCGraph) -> subspace.NCGraph:
    """S^c = S^perp + S0, with the same S0 annotation."""
    if g.s0 is None:
        raise PreconditionError(MISSING_S0)
    alg = algebra_subspace(g.s0)
    comp = subspace.sum_spaces(g.space.perp(), alg)
    return subspace.NCGraph(comp, g.s0)


def twirl_projector(s0: S0Algebra) -> np.ndarray:
    """Haar average of U (x) conj(U) over unitaries of the algebra, in closed form.

    T = sum_i dA_i^-1 |phi_{A_i B_i}><phi_{A_i B_i}| (x) I_{Y_i Z_i} placed at
    matching bipartite indices of H_A (x) H_B (H_B a copy of H_A). T is a
    Hermitian idempotent and fixes the maximally entangled vector.
    """
    n = s0.n
    t = np.zeros((n * n, n * n), dtype=complex)
    for (da, dy), off in zip(s0.blocks, s0.offsets):
        for a in range(da):
            for b in range(da):
                for y in range(dy):
                    for z in range(dy):
                        row = (off + a * dy + y) * n + (off + a * dy + z)
                        col = (off + b * dy + y) * n + (off + b * dy + z)
                        t[row, col] += 1.0 / da
    return t


def pauli_basis(d: int) -> list[np.ndarray]:
    """Generalized Pauli unitaries U_ab = sum_j w^(b j) |j+a><j|, w = exp(2 pi i / d)."""
    if d < 1:
        raise DimensionError(f"dimension must be >= 1, got {d}")
    w = np.exp(2j * np.pi / d)
    out = []
    for a in range(d):
        for b in range(d):
            u = np.zeros((d, d), dtype=complex)
            for j in range(d):
                u[(j + a) % d, j] = w ** (b * j)
            out.append(u)
    return out


def pauli_partial_twirl(m: np.ndarray, d: int) -> np.ndarray:
    """sum_ab (U_ab (x) I) M (U_ab^dag (x) I) for M on C^d (x) H_B."""
    m = linalg.as_complex_matrix(m)
    if m.shape[0] % d or m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix shape {m.shape} is not d x (anything), d={d}")
    db = m.shape[0] // d
    eye = np.eye(db)
    out = np.zeros_like(m)
    for u in pauli_basis(d):
        big = np.kron(u, eye)
        out += big @ m @ linalg.dagger(big)
    return out


def check_phi_inequality(w: np.ndarray, dims: tuple[int, int], tol: float = 1e-8) -> bool:
    """Whether I_A (x) W^-1 >= |phi><phi| (x) (Tr_B W)^-1 for positive definite W on B (x) Z.

    dims = (dim_B, dim_Z); dim_A = dim_B. Also verifies that the certificate
    P = (I (x) sqrt W)(|phi><phi| (x) (Tr_B W)^-1)(I (x) sqrt W) is idempotent.
    """
    db, dz = dims
    w = linalg.require_hermitian(w)
    if w.shape != (db * dz, db * dz):
        raise DimensionError(f"matrix shape {w.shape} does not match dims {dims}")
    if linalg.min_eig(w) <= 0:
        raise PreconditionError("W must be positive definite")
    winv = np.linalg.inv(w)
    trb = linalg.partial_trace(w, (db, dz), "a")  # Tr_B W lives on Z
    trb_inv = np.linalg.inv(trb)
    phi = linalg.max_ent_vector(db)
    phiphi = np.outer(phi, phi.conj())
    lhs = np.kron(np.eye(db), winv)
    rhs = np.kron(phiphi, trb_inv)
    ok_eig = linalg.min_eig(lhs - rhs) >= -tol
    sw = np.kron(np.eye(db), linalg.psd_sqrt(w))
    p = sw @ rhs @ sw
    ok_proj = linalg.frob(p @ p - p) <= 1e-7 * (1.0 + linalg.frob(p))
    return bool(ok_eig and ok_proj)
