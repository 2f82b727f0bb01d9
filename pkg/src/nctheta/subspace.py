"""Operator subspaces and non-commutative graphs.

An operator subspace is stored through a Hilbert-Schmidt orthonormal basis,
shape (k, n, n). A non-commutative graph is an adjoint-closed subspace of
L(C^n) containing the identity, optionally annotated with a vertex C*-algebra
S0 (see cstar.S0Algebra); the annotation must make S an S0-bimodule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional

import numpy as np

from . import linalg
from .errors import DimensionError, GraphInvariantError, PreconditionError

if TYPE_CHECKING:
    from .cstar import S0Algebra

RANK_CUTOFF = 1e-9


def _stack_vecs(mats: Iterable[np.ndarray], n: int) -> np.ndarray:
    rows = [linalg.vectorize(linalg.as_complex_matrix(m)) for m in mats]
    for r in rows:
        if r.size != n * n:
            raise DimensionError(f"matrix does not live on L(C^{n})")
    if not rows:
        return np.zeros((0, n * n), dtype=complex)
    return np.array(rows)


@dataclass(frozen=True, eq=False)
class OperatorSubspace:
    """A subspace of L(C^n) with an orthonormal basis."""

    n: int
    basis: np.ndarray  # (dim, n, n), HS-orthonormal
    tol: float = 1e-8

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 3 or b.shape[1:] != (self.n, self.n):
            raise DimensionError(f"basis shape {b.shape} does not match n={self.n}")
        if b.shape[0] > self.n * self.n:
            raise DimensionError("more basis elements than the ambient dimension")
        if b.shape[0]:
            g = b.reshape(b.shape[0], -1)
            gram = g.conj() @ g.T
            if linalg.frob(gram - np.eye(b.shape[0])) > 1e-7:
                raise PreconditionError("basis is not orthonormal; use span() to build subspaces")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, m: np.ndarray) -> np.ndarray:
        """Orthogonal projection of m onto the subspace."""
        m = linalg.as_complex_matrix(m)
        if m.shape != (self.n, self.n):
            raise DimensionError(f"matrix shape {m.shape} does not match n={self.n}")
        if self.dim == 0:
            return np.zeros_like(m)
        coeff = self.basis.reshape(self.dim, -1).conj() @ m.reshape(-1)
        return np.tensordot(coeff, self.basis, axes=1)

    def residual(self, m: np.ndarray) -> float:
        """Distance of m from the subspace, relative to 1 + ||m||."""
        return linalg.frob(m - self.project(m)) / (1.0 + linalg.frob(m))

    def contains(self, m: np.ndarray, tol: Optional[float] = None) -> bool:
        return self.residual(m) <= (self.tol if tol is None else tol)

    def perp(self) -> "OperatorSubspace":
        """Orthogonal complement in L(C^n)."""
        if self.dim == 0:
            return OperatorSubspace(self.n, np.eye(self.n * self.n, dtype=complex).reshape(
                self.n * self.n, self.n, self.n), self.tol)
        g = self.basis.reshape(self.dim, -1)
        # m is HS-orthogonal to every basis row b iff conj(b) . vec(m) = 0, and
        # the null space of conj(g) is spanned by the rows of vh beyond the rank
        _, _, vh = np.linalg.svd(g, full_matrices=True)
        comp = vh[self.dim:]
        return OperatorSubspace(self.n, comp.reshape(-1, self.n, self.n), self.tol)

    def is_adjoint_closed(self, tol: Optional[float] = None) -> bool:
        return all(self.contains(linalg.dagger(b), tol) for b in self.basis)

    def equals(self, other: "OperatorSubspace", tol: float = 1e-8) -> bool:
        """Subspace equality via Frobenius distance of the projectors."""
        if self.n != other.n:
            return False
        if self.dim != other.dim:
            return False
        a = self.basis.reshape(self.dim, -1)
        b = other.basis.reshape(other.dim, -1)
        pa = a.T @ a.conj()
        pb = b.T @ b.conj()
        return linalg.frob(pa - pb) <= tol * (1.0 + self.dim)


def span(mats: Iterable[np.ndarray], n: int, tol: float = 1e-8) -> OperatorSubspace:
    """Subspace spanned by the given matrices (SVD with relative rank cutoff 1e-9)."""
    g = _stack_vecs(list(mats), n)
    if g.shape[0] == 0:
        return OperatorSubspace(n, np.zeros((0, n, n), dtype=complex), tol)
    u, s, vh = np.linalg.svd(g, full_matrices=False)
    rank = int(np.sum(s > RANK_CUTOFF * s[0])) if s.size else 0
    basis = vh[:rank].reshape(rank, n, n)
    out = OperatorSubspace(n, basis, tol)
    for m in g:
        r = m.reshape(n, n)
        if out.residual(r) > 1e-7:
            raise PreconditionError("span lost one of its inputs; rank cutoff too aggressive")
    return out


def sum_spaces(a: OperatorSubspace, b: OperatorSubspace) -> OperatorSubspace:
    if a.n != b.n:
        raise DimensionError("subspaces live on different spaces")
    return span(list(a.basis) + list(b.basis), a.n, min(a.tol, b.tol))


def quotient(s: OperatorSubspace, s0: OperatorSubspace) -> OperatorSubspace:
    """S / S0 := S cap S0^perp; requires S0 <= S."""
    if s.n != s0.n:
        raise DimensionError("subspaces live on different spaces")
    worst = max((s.residual(b) for b in s0.basis), default=0.0)
    if worst > s.tol:
        raise PreconditionError(f"S0 is not contained in S (residual {worst:.3e})", worst)
    # drop projection dust before spanning: the SVD rank cutoff is relative,
    # so an all-noise stack (S = S0) would otherwise keep a spurious direction
    reduced = [b - s0.project(b) for b in s.basis]
    reduced = [r for r in reduced if linalg.frob(r) > s.tol]
    out = span(reduced, s.n, s.tol)
    if out.dim != s.dim - s0.dim:
        raise PreconditionError(
            f"quotient dimension {out.dim} != dim S - dim S0 = {s.dim - s0.dim}")
    return out


def identity_space(n: int, tol: float = 1e-8) -> OperatorSubspace:
    return span([np.eye(n)], n, tol)


def full_space(n: int, tol: float = 1e-8) -> OperatorSubspace:
    return OperatorSubspace(
        n, np.eye(n * n, dtype=complex).reshape(n * n, n, n), tol)


def hermitian_basis(s: OperatorSubspace) -> list[np.ndarray]:
    """A real-orthonormal basis of the Hermitian part of an adjoint-closed subspace.

    For adjoint-closed S the Hermitian elements span S over C, so the result
    has exactly dim(S) elements.
    """
    n = s.n
    if s.dim == 0:
        return []
    cands = []
    for b in s.basis:
        cands.append(0.5 * (b + linalg.dagger(b)))
        cands.append(0.5j * (b - linalg.dagger(b)))
    # real SVD over the [Re; Im] vectorization: real-orthonormality there is
    # HS-orthonormality of Hermitian matrices
    g = np.array([np.concatenate([m.real.reshape(-1), m.imag.reshape(-1)]) for m in cands])
    u, sv, vh = np.linalg.svd(g, full_matrices=False)
    rank = int(np.sum(sv > RANK_CUTOFF * sv[0])) if sv.size else 0
    out = []
    for row in vh[:rank]:
        m = row[: n * n].reshape(n, n) + 1j * row[n * n:].reshape(n, n)
        out.append(0.5 * (m + linalg.dagger(m)))
    if rank != s.dim:
        raise PreconditionError(
            f"Hermitian basis rank {rank} != dim {s.dim}; subspace not adjoint-closed?")
    return out


def hermitian_basis_full(n: int) -> list[np.ndarray]:
    """The standard orthonormal Hermitian basis of L(C^n)."""
    out = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        out.append(e)
    r = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = r
            e[j, i] = r
            out.append(e)
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = -1j * r
            e[j, i] = 1j * r
            out.append(e)
    return out


@dataclass(frozen=True, eq=False)
class NCGraph:
    """Adjoint-closed operator subspace containing the identity.

    ``s0`` is an optional vertex C*-algebra annotation; when present, S must
    be an S0-bimodule (S0 . S . S0 <= S) and contain S0.
    """

    space: OperatorSubspace
    s0: Optional["S0Algebra"] = None
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not self.validate:
            return
        s = self.space
        n = s.n
        if s.residual(np.eye(n)) > s.tol:
            raise GraphInvariantError("graph subspace does not contain the identity")
        if not s.is_adjoint_closed():
            raise GraphInvariantError("graph subspace is not adjoint-closed")
        if self.s0 is not None:
            from .cstar import algebra_subspace

            if self.s0.n != n:
                raise DimensionError("S0 dimension does not match the graph")
            alg = algebra_subspace(self.s0)
            for k in alg.basis:
                if s.residual(k) > s.tol:
                    raise GraphInvariantError("S0 is not contained in the graph subspace")
                for b in s.basis:
                    for l in alg.basis:
                        if s.residual(k @ b @ l) > 1e-7:
                            raise GraphInvariantError(
                                "graph subspace is not an S0-bimodule")

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def dim(self) -> int:
        return self.space.dim


def graph_from_span(mats: Iterable[np.ndarray], n: int, s0=None, tol: float = 1e-8) -> NCGraph:
    return NCGraph(span(list(mats) + [np.eye(n)], n, tol), s0)


def ci_graph(n: int) -> NCGraph:
    """The trivial graph S = C I (confusability of a perfect channel)."""
    from .cstar import S0Algebra

    return NCGraph(identity_space(n), S0Algebra(((1, n),)))


def full_graph(n: int) -> NCGraph:
    """S = L(C^n) (everything confusable)."""
    from .cstar import S0Algebra

    return NCGraph(full_space(n), S0Algebra(((n, 1),)))


def _check_adjacency(adj) -> np.ndarray:
    a = np.asarray(adj)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"adjacency must be square, got {a.shape}")
    if not np.array_equal(a, a.T):
        raise GraphInvariantError("adjacency matrix must be symmetric")
    if not np.all((a == 0) | (a == 1)):
        raise GraphInvariantError("adjacency entries must be 0 or 1")
    if np.any(np.diag(a) != 0):
        raise GraphInvariantError("adjacency diagonal must be zero")
    return a.astype(int)


def from_classical_graph(adj) -> NCGraph:
    """Confusability graph of a classical graph: span{|i><j| : i ~= j or i = j}.

    The vertex algebra is the diagonal, one (1, 1) block per vertex.
    """
    from .cstar import S0Algebra

    a = _check_adjacency(adj)
    n = a.shape[0]
    mats = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        mats.append(e)
    for i in range(n):
        for j in range(n):
            if i != j and a[i, j]:
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = 1.0
                mats.append(e)
    return NCGraph(span(mats, n), S0Algebra(tuple((1, 1) for _ in range(n))))


def strong_product(g: NCGraph, h: NCGraph) -> NCGraph:
    """S (x) S' on H_A (x) H_A' (Kronecker span of the bases)."""
    mats = [np.kron(a, b) for a in g.space.basis for b in h.space.basis]
    return NCGraph(span(mats, g.n * h.n, min(g.space.tol, h.space.tol)))


def disjunctive_product(g: NCGraph, h: NCGraph) -> NCGraph:
    """S * S' = (S/CI) (x) L(H_A') + L(H_A) (x) (S'/CI) + C I(x)I."""
    n, m = g.n, h.n
    qg = quotient(g.space, identity_space(n))
    qh = quotient(h.space, identity_space(m))
    mats = [np.kron(a, b) for a in qg.basis for b in full_space(m).basis]
    mats += [np.kron(a, b) for a in full_space(n).basis for b in qh.basis]
    mats.append(np.eye(n * m, dtype=complex))
    return NCGraph(span(mats, n * m, min(g.space.tol, h.space.tol)))
