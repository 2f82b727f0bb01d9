"""Theta bodies of operator subspaces: membership, supports, packing checks.

The body of a graph S collects the weights whose theta value is at most one,

    body(S) = { W PSD : theta(S, W) <= 1 },

and is a spectrahedral shadow: W belongs iff the corner matrix

    M = [[1, <v_W|], [|v_W>, Z]] >= 0,   Z in S (x) L(H_B),  Tr_A Z = W^T,

is feasible, with |v_W> the row-major vectorization of W.  The composite
programs below keep the corner matrix as a single PSD variable and tie its
first column by equality rows to linear functionals of the trailing block:

    antiblocker_support   max Tr(X W) over W in body(S)
    theta_psi_support     max Tr(X Z) over Z >= 0 with Psi(Z) in body(S^c)
    theta_commutant_min   min theta(S, X) over X >= W, X in the commutant S0'

The last two re-express theta(S, .) through the block algebra S0 carried by
the graph (S^c = S^perp + S0, Psi the block-scaled compression); the
test-suite checks them against the direct program forms.

Classical companions close the module: clique-polytope membership and its
semidefinite support relaxation, S-full projectors (P with P L(H_A) P <= S),
and the residual identities obeyed by weight pairs saturating the duality
bound theta(S, V) * theta(S^perp + CI, W) >= n Tr(V W).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
import numpy as np
from scipy.optimize import linprog

from . import cstar, linalg, sdp, subspace
from .errors import (DimensionError, PreconditionError, SolverFailure,
                     UnsupportedSizeError)
from .subspace import NCGraph, hermitian_basis, hermitian_basis_full
from .theta import SOLVER_TOL, _check_weight, _expect_optimal, theta

MEMBERSHIP_SLACK = 1e-7      # theta(S, W) <= 1 + this still counts as inside
SATURATION_TOL = 1e-6        # relative slack allowed of a "saturating" pair
RESIDUAL_TOL = 1e-5          # compatibility residuals, relative
CLIQUE_DIM_LIMIT = 16        # exact clique enumeration above this is refused
_RANK_EPS = 1e-8             # maximizer eigenvalues below this (relative) are
                             # zeroed so corner programs see the exact face


@dataclass
class MembershipResult:
    """Outcome of a theta-body membership test."""

    member: bool
    margin: float            # 1 - theta(S, W) if W is PSD, else its min eigenvalue
    value: Optional[float] = None
    solution: Optional[sdp.SdpSolution] = field(default=None, repr=False)


@dataclass
class SupportResult:
    """Value and optimizer of a linear functional over a theta body."""

    value: float
    maximizer: np.ndarray
    witness: Optional[np.ndarray] = field(default=None, repr=False)
    solution: Optional[sdp.SdpSolution] = field(default=None, repr=False)


@dataclass
class CommutantMinResult:
    """Value and commutant weight of the constrained minimization form."""

    value: float
    xstar: np.ndarray
    solution: Optional[sdp.SdpSolution] = field(default=None, repr=False)


@dataclass
class CompatibleReport:
    """Residuals of the identities obeyed by a saturating weight pair."""

    lam: float               # theta(S, V)
    lam_prime: float         # theta(S^perp + CI, W)
    saturation_slack: float  # (lam lam' - n Tr(V W)) / (1 + lam lam')
    residual_w: float        # lam  |v_W> vs n Z' |v_V>
    residual_v: float        # lam' |v_V> vs n Z  |v_W>
    residual_outer: float    # |v_V><v_W| vs n Z Z'
    ok: bool = False


def _entry_pickers(d: int, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian G_re, G_im with Tr(G_re M) = Re M[i,j], Tr(G_im M) = Im M[i,j]
    for every Hermitian M."""
    g_re = np.zeros((d, d), dtype=complex)
    g_re[i, j] += 0.5
    g_re[j, i] += 0.5
    g_im = np.zeros((d, d), dtype=complex)
    g_im[i, j] += 0.5j
    g_im[j, i] += -0.5j
    return g_re, g_im


def _embed(m: np.ndarray) -> np.ndarray:
    """Coefficient acting on the trailing block of a corner matrix."""
    d = m.shape[0] + 1
    out = np.zeros((d, d), dtype=complex)
    out[1:, 1:] = m
    return out


def _corner_unit(d: int) -> np.ndarray:
    e00 = np.zeros((d, d), dtype=complex)
    e00[0, 0] = 1.0
    return e00


def _corner_ties(bld: sdp.ProgramBuilder, name: str, n: int) -> None:
    """Rows tying the first column of the corner block to the partial trace of
    its own trailing block: M[1 + a*n + b, 0] = (Tr_A M[1:, 1:])^T[a, b]."""
    d = n * n + 1
    eye = np.eye(n)
    for a in range(n):
        for b in range(n):
            p_re, p_im = _entry_pickers(d, 1 + a * n + b, 0)
            g_re, g_im = _entry_pickers(n, a, b)
            bld.eq({name: p_re - _embed(np.kron(eye, g_re))}, 0.0)
            bld.eq({name: p_im + _embed(np.kron(eye, g_im))}, 0.0)


def _membership_rows_embedded(bld: sdp.ProgramBuilder, name: str,
                              space: subspace.OperatorSubspace) -> None:
    """Rows forcing the trailing corner block into space (x) L(H_B)."""
    b_h = hermitian_basis_full(space.n)
    for h in hermitian_basis(space.perp()):
        for f in b_h:
            bld.eq({name: _embed(np.kron(h, f))}, 0.0)


def _first_column_weight(bs: sdp.BuiltSolution, name: str, n: int) -> np.ndarray:
    """The weight spelled out by the first column of an optimal corner block."""
    w = linalg.unvectorize(bs.block(name)[1:, 0], n)
    return 0.5 * (w + linalg.dagger(w))


def thin_complement(g: NCGraph) -> NCGraph:
    """The graph S^perp + CI appearing in the duality bound (its S0 is CI)."""
    space = subspace.sum_spaces(g.space.perp(), subspace.identity_space(g.n))
    return NCGraph(space, cstar.S0Algebra(((1, g.n),)))


def theta_body_membership(g: NCGraph, w, tol: float = SOLVER_TOL) -> MembershipResult:
    """Whether W lies in body(S), i.e. W is PSD with theta(S, W) <= 1.

    The margin is 1 - theta(S, W) for PSD weights (negative outside the
    body); for non-PSD weights it is the offending smallest eigenvalue.
    """
    w = linalg.require_hermitian(w, what="weight")
    if w.shape != (g.n, g.n):
        raise DimensionError(
            f"weight shape {w.shape} does not match graph dimension {g.n}")
    lo = linalg.min_eig(w)
    if lo < -1e-9 * (1.0 + linalg.op_norm(w)):
        return MembershipResult(member=False, margin=lo)
    if linalg.frob(w) <= 1e-14:
        return MembershipResult(member=True, margin=1.0, value=0.0)
    res = theta(g, w, tol=tol)
    return MembershipResult(member=res.value <= 1.0 + MEMBERSHIP_SLACK,
                            margin=1.0 - res.value, value=res.value,
                            solution=res.solution)


def antiblocker_support(g: NCGraph, x, tol: float = SOLVER_TOL) -> SupportResult:
    """max { Tr(X W) : W in body(S) }, as one corner-block SDP.

    The corner matrix [[1, <v_W|], [|v_W>, Z]] is the only PSD variable; its
    first column doubles as the vectorization of W = (Tr_A Z)^T, so the body
    constraint theta(S, W) <= 1 needs no inner solve.  The maximizer field of
    the result carries the optimal W (a boundary point of the body whenever
    X is PSD and nonzero).
    """
    n = g.n
    x = _check_weight(x, n)
    d = n * n + 1
    bld = sdp.ProgramBuilder()
    bld.block("M", d)
    bld.eq({"M": _corner_unit(d)}, 1.0)
    _corner_ties(bld, "M", n)
    _membership_rows_embedded(bld, "M", g.space)
    bld.objective({"M": _embed(np.kron(np.eye(n), x.T))}, maximize=True)
    bs = _expect_optimal(bld.solve(tol=tol), "theta-body support")
    return SupportResult(value=bs.value,
                         maximizer=_first_column_weight(bs, "M", n),
                         witness=bs.block("M")[1:, 1:],
                         solution=bs.solution)


def theta_psi_support(g: NCGraph, x, tol: float = SOLVER_TOL) -> SupportResult:
    """max { Tr(X Z) : Z >= 0, Psi(Z) in body(S^c) }; equals theta(S, X).

    Needs the block algebra S0 of the graph: Psi is the block-scaled
    compression onto the commutant S0' and S^c = S^perp + S0.  The corner
    block of the body constraint rides along as a second PSD variable whose
    first column is tied to the entries of Psi(Z).  The maximizer field of
    the result carries Psi(Z*), the complement weight at which the scaled
    duality product is tight.
    """
    n = g.n
    x = _check_weight(x, n)
    comp = cstar.complement(g)         # raises without an S0 algebra
    s0 = g.s0
    d = n * n + 1
    bld = sdp.ProgramBuilder()
    bld.block("Z", n)
    bld.block("M", d)
    bld.eq({"M": _corner_unit(d)}, 1.0)
    for a in range(n):
        for b in range(n):
            p_re, p_im = _entry_pickers(d, 1 + a * n + b, 0)
            g_re, g_im = _entry_pickers(n, a, b)
            bld.eq({"M": p_re, "Z": -cstar.blockscale(s0, g_re)}, 0.0)
            bld.eq({"M": p_im, "Z": -cstar.blockscale(s0, g_im)}, 0.0)
    _membership_rows_embedded(bld, "M", comp.space)
    eye = np.eye(n)
    for f in hermitian_basis_full(n):
        bld.eq({"M": _embed(np.kron(eye, f)), "Z": -cstar.blockscale(s0, f.T)}, 0.0)
    bld.objective({"Z": x}, maximize=True)
    bs = _expect_optimal(bld.solve(tol=tol), "block-scaled body support")
    zstar = bs.block("Z")
    return SupportResult(value=bs.value,
                         maximizer=cstar.blockscale(s0, zstar),
                         witness=zstar,
                         solution=bs.solution)


def theta_commutant_min(g: NCGraph, w, tol: float = SOLVER_TOL) -> CommutantMinResult:
    """min { theta(S, X) : X >= W, X in the commutant S0' }; equals theta(S, W).

    The minimand is represented by its own corner block, so the variables are
    [[lam, <v_X|], [|v_X>, Z]] and a slack for X - W; lam is the objective.
    The xstar field carries the optimal commutant weight X*.
    """
    n = g.n
    w = _check_weight(w, n)
    if g.s0 is None:
        raise PreconditionError(cstar.MISSING_S0)
    d = n * n + 1
    bld = sdp.ProgramBuilder()
    bld.block("M", d)
    bld.block("S2", n)
    _corner_ties(bld, "M", n)
    _membership_rows_embedded(bld, "M", g.space)
    for f in hermitian_basis_full(n):
        bld.eq({"M": _embed(np.kron(np.eye(n), f.T)), "S2": -f},
               float(np.vdot(f, w).real))
    for h in hermitian_basis(cstar.commutant(g.s0).perp()):
        bld.eq({"M": _embed(np.kron(np.eye(n), h.T))}, 0.0)
    bld.objective({"M": _corner_unit(d)})
    bs = _expect_optimal(bld.solve(tol=tol), "commutant minimization")
    return CommutantMinResult(value=float(bs.block("M")[0, 0].real),
                              xstar=_first_column_weight(bs, "M", n),
                              solution=bs.solution)


def is_s_full_projector(g: NCGraph, p, tol: float = 1e-8) -> bool:
    """Whether P is a projector with P L(H_A) P <= S (an S-full projector)."""
    p = linalg.require_hermitian(p, what="projector")
    n = g.n
    if p.shape != (n, n):
        raise PreconditionError(
            f"projector shape {p.shape} does not match graph dimension {n}")
    if linalg.frob(p @ p - p) > tol * (1.0 + linalg.frob(p)):
        return False
    unit = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            unit[k, l] = 1.0
            inside = g.space.residual(p @ unit @ p) <= tol
            unit[k, l] = 0.0
            if not inside:
                return False
    return True


def _maximal_cliques(adj: np.ndarray) -> list[tuple[int, ...]]:
    n = adj.shape[0]
    if n > CLIQUE_DIM_LIMIT:
        raise UnsupportedSizeError(
            f"exact clique enumeration is capped at n = {CLIQUE_DIM_LIMIT}, got {n}")
    graph = nx.from_numpy_array(adj)
    return sorted(tuple(sorted(k)) for k in nx.find_cliques(graph))


def fp_membership_classical(adjacency, w, tol: float = 1e-9) -> bool:
    """Whether w lies in the clique polytope of a classical graph.

    Membership means w <= sum_K lam_K chi_K entrywise for convex weights
    lam over the cliques K of the graph, decided by a feasibility LP over
    the exactly enumerated maximal cliques.
    """
    adj = subspace._check_adjacency(adjacency)
    n = adj.shape[0]
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise DimensionError(f"weight shape {w.shape} does not match graph size {n}")
    if np.any(w < -tol):
        raise PreconditionError("entrywise non-negative weight required")
    cliques = _maximal_cliques(adj)
    chi = np.zeros((n, len(cliques)))
    for j, k in enumerate(cliques):
        chi[list(k), j] = 1.0
    res = linprog(c=np.zeros(len(cliques)),
                  A_ub=-chi, b_ub=-(w - tol),
                  A_eq=np.ones((1, len(cliques))), b_eq=[1.0],
                  bounds=(0.0, None), method="highs")
    if res.status not in (0, 2):
        raise SolverFailure(f"clique polytope LP ended with status {res.status}: {res.message}")
    return res.status == 0


def clique_polytope_support(adjacency, w, tol: float = SOLVER_TOL) -> SupportResult:
    """max { Tr(W Z) : Z >= 0, diag(Z) in the clique polytope of the graph }.

    Same clique enumeration as fp_membership_classical; the diagonal lives
    under sum_K lam_K chi_K with convex lam.  On a classical graph, weights
    inside body(S_G) score at most one against the polytope of the
    complement graph.
    """
    adj = subspace._check_adjacency(adjacency)
    n = adj.shape[0]
    w = _check_weight(w, n)
    cliques = _maximal_cliques(adj)
    bld = sdp.ProgramBuilder()
    bld.block("Z", n)
    for j in range(len(cliques)):
        bld.block(f"lam{j}", 1)
    for v in range(n):
        bld.block(f"s{v}", 1)
    bld.block("t", 1)
    one = np.ones((1, 1))
    for v in range(n):
        e_vv = np.zeros((n, n), dtype=complex)
        e_vv[v, v] = 1.0
        coeffs = {"Z": e_vv, f"s{v}": one}
        coeffs.update({f"lam{j}": -one for j, k in enumerate(cliques) if v in k})
        bld.eq(coeffs, 0.0)
    bld.eq({**{f"lam{j}": one for j in range(len(cliques))}, "t": one}, 1.0)
    bld.objective({"Z": w}, maximize=True)
    bs = _expect_optimal(bld.solve(tol=tol), "clique polytope support")
    return SupportResult(value=bs.value, maximizer=bs.block("Z"),
                         solution=bs.solution)


def compatible_instance(g: NCGraph, x, tol: float = SOLVER_TOL
                        ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Construct (V, W, Z, Z') saturating the duality bound at weight X.

    V is the support maximizer of Tr(X W) over body(S), so theta(S, V) = 1
    while theta(S^perp + CI, X) = n Tr(V X); W is X itself.  Z and Z' are
    the trailing corner blocks of the two Schur-form programs.  The
    maximizer is truncated to its numerical face (eigenvalues below
    _RANK_EPS of the largest are zeroed) so the corner programs see the
    exact boundary structure instead of a barely-interior weight.
    """
    n = g.n
    x = _check_weight(x, n)
    v = antiblocker_support(g, x, tol=tol).maximizer
    evals, evecs = np.linalg.eigh(v)
    keep = evals > _RANK_EPS * max(float(evals[-1]), 0.0)
    if not np.any(keep):
        keep = evals == evals[-1]
    v = (evecs[:, keep] * evals[keep]) @ evecs[:, keep].conj().T
    v = 0.5 * (v + linalg.dagger(v))
    z = theta(g, v, form="schur", tol=tol).schur_z
    zp = theta(thin_complement(g), x, form="schur", tol=tol).schur_z
    return v, x, z, zp


def check_compatible(g: NCGraph, v, w, z, zp, tol: float = RESIDUAL_TOL) -> CompatibleReport:
    """Verify the identities tying optimal corner blocks of a saturating pair.

    V and W must saturate theta(S, V) * theta(S~, W) >= n Tr(V W) with
    S~ = S^perp + CI, and z, zp are the trailing corner blocks of optimal
    Schur-form programs for (S, V) and (S~, W).  With lam, lam' the two
    theta values, the identities are

        lam  |v_W> = n Z' |v_V>,
        lam' |v_V> = n Z  |v_W>,
        |v_V><v_W| = n Z Z',

    and each reported residual is relative to 1 + the norms involved.
    """
    n = g.n
    v = _check_weight(v, n)
    w = _check_weight(w, n)
    z = linalg.require_hermitian(z, what="corner block")
    zp = linalg.require_hermitian(zp, what="corner block")
    lam = theta(g, v, tol=SOLVER_TOL).value
    lam_p = theta(thin_complement(g), w, tol=SOLVER_TOL).value
    slack = (lam * lam_p - n * float(np.vdot(v, w).real)) / (1.0 + lam * lam_p)
    if abs(slack) > SATURATION_TOL:
        raise PreconditionError(
            f"weights do not saturate the duality bound (relative slack {slack:.3e})",
            violation=slack)
    vv = linalg.vectorize(v)
    vw = linalg.vectorize(w)
    r_w = np.linalg.norm(lam * vw - n * (zp @ vv)) / (1.0 + lam * np.linalg.norm(vw))
    r_v = np.linalg.norm(lam_p * vv - n * (z @ vw)) / (1.0 + lam_p * np.linalg.norm(vv))
    r_outer = (linalg.frob(np.outer(vv, vw.conj()) - n * (z @ zp))
               / (1.0 + np.linalg.norm(vv) * np.linalg.norm(vw)))
    return CompatibleReport(lam=lam, lam_prime=lam_p, saturation_slack=slack,
                            residual_w=r_w, residual_v=r_v, residual_outer=r_outer,
                            ok=max(r_w, r_v, r_outer) <= tol)
