"""Weighted theta of a non-commutative graph, in all its program forms.

For a graph S <= L(H_A) (adjoint-closed, containing I) and a PSD weight W,
the primal definition is

    theta(S, W) = min { lam : Y in S (x) L(H_B), Tr_A Y <= lam I,
                        Y >= |r_W><r_W| },            r_W = vectorize(sqrt W),

with H_B a copy of H_A. The equivalent forms implemented here:

    min_Y       the definition above;
    min_Y_eq    Tr_A Y = lam I;
    min_YWT_eq  Tr_A Y = lam W^T,    Y >= |v_W><v_W|,  v_W = vectorize(W);
    min_YWT     Tr_A Y <= lam W^T,   Y >= |v_W><v_W|;
    min_YWinvT  Tr_A Y <= lam W^-T,  Y >= |phi><phi|   (W nonsingular);
    schur       min lam with [[lam, <v_W|], [|v_W>, Z]] >= 0,
                Z in S (x) L(H_B), Tr_A Z = W^T;
    max_T       (dual) max <r_W| T + I (x) rho |r_W> over T in S^perp (x) L(H_B),
                T + I (x) rho >= 0, rho a density matrix;
    max_Y_v2    max n <r_W| Y |r_W> over Y >= 0, Tr Y = 1,
                Y in (S^perp + CI) (x) L(H_B);
    max_opnorm  max || (sqrt W (x) I)(T + I (x) I)(sqrt W (x) I) ||  over
                T in S^perp (x) L(H_B) with T + I (x) I >= 0;
    max_opnorm2 max || sqrt(T + I (x) I)(W (x) I) sqrt(T + I (x) I) ||, same set;
    max_Y       max n || (sqrt W (x) I) Y (sqrt W (x) I) || over Y >= 0,
                Tr_A Y = I, Y in (S^perp + CI) (x) L(H_B).

The operator-norm maxima are not themselves semidefinite programs (a norm is
maximized, not minimized); they are computed by solving the linearized
equivalent (max_T resp. max_Y_v2) and undoing the linearizing substitution
with a pseudo-inverse, after which the native objective is evaluated by an
eigensolver. The substitution is exact at optimum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg, sdp
from .errors import DimensionError, NotPsdError, PreconditionError, SolverFailure
from .subspace import (
    NCGraph,
    hermitian_basis,
    hermitian_basis_full,
    identity_space,
    quotient,
)

MIN_FORMS = ("min_Y", "min_Y_eq", "min_YWT_eq", "min_YWT", "min_YWinvT", "schur")
MAX_FORMS = ("max_opnorm", "max_opnorm2", "max_Y", "max_Y_v2")
DEFAULT_FORM = "min_Y"

SOLVER_TOL = 1e-8


@dataclass
class ThetaResult:
    """Value and certificates of one theta computation."""

    value: float
    gap: float
    form: str
    primal_y: Optional[np.ndarray] = None
    dual_t: Optional[np.ndarray] = None
    dual_rho: Optional[np.ndarray] = None
    schur_z: Optional[np.ndarray] = field(default=None, repr=False)
    solution: Optional[sdp.SdpSolution] = field(default=None, repr=False)


def _check_weight(w, n: int, tol: float = 1e-9) -> np.ndarray:
    w = linalg.require_hermitian(w, what="weight")
    if w.shape != (n, n):
        raise DimensionError(f"weight shape {w.shape} does not match graph dimension {n}")
    lo = linalg.min_eig(w)
    scale = 1.0 + linalg.op_norm(w)
    if lo < -tol * scale:
        raise NotPsdError(f"weight is not PSD (min eigenvalue {lo:.3e})")
    return w


def _expect_optimal(bs: sdp.BuiltSolution, what: str) -> sdp.BuiltSolution:
    if bs.status != sdp.STATUS_OPTIMAL:
        s = bs.solution
        raise SolverFailure(
            f"{what}: solver returned status {s.status} after {s.iterations} iterations "
            f"(gap {s.relative_gap:.3e}, primal residual {s.primal_residual:.3e})", s)
    return bs


def _membership_rows(bld: sdp.ProgramBuilder, block: str, perp_herm, b_herm,
                     shift: Optional[np.ndarray]) -> None:
    """Rows forcing (X_block + shift) into the subspace orthogonal to perp_herm (x) b_herm."""
    for h in perp_herm:
        for f in b_herm:
            coeff = np.kron(h, f)
            rhs = 0.0 if shift is None else -float(np.vdot(coeff, shift).real)
            bld.eq({block: coeff}, rhs)


def _assemble_min(g: NCGraph, w: np.ndarray, form: str) -> tuple[sdp.ProgramBuilder, np.ndarray]:
    n = g.n
    perp_h = hermitian_basis(g.space.perp())
    b_h = hermitian_basis_full(n)
    eye_a = np.eye(n)

    if form in ("min_Y", "min_Y_eq"):
        rvec = linalg.vectorize(linalg.psd_sqrt(w))
        shift = np.outer(rvec, rvec.conj())
        target = eye_a
    elif form in ("min_YWT", "min_YWT_eq"):
        vvec = linalg.vectorize(w)
        shift = np.outer(vvec, vvec.conj())
        target = w.T
    elif form == "min_YWinvT":
        if linalg.min_eig(w) <= 1e-10 * max(1.0, linalg.op_norm(w)):
            raise PreconditionError("min_YWinvT requires a nonsingular weight")
        phi = linalg.max_ent_vector(n)
        shift = np.outer(phi, phi.conj())
        target = np.linalg.inv(w).T
    else:
        raise ValueError(f"unknown min form {form!r}")
    target = 0.5 * (target + linalg.dagger(target))

    slack = form in ("min_Y", "min_YWT", "min_YWinvT")
    bld = sdp.ProgramBuilder()
    bld.block("Y1", n * n)
    if slack:
        bld.block("S2", n)
    bld.block("lam", 1)

    _membership_rows(bld, "Y1", perp_h, b_h, shift)
    tra_shift = linalg.partial_trace(shift, (n, n), "a")
    for f in b_h:
        coeffs = {"Y1": np.kron(eye_a, f)}
        if slack:
            coeffs["S2"] = f
        coeffs["lam"] = np.array([[-np.vdot(f, target).real]])
        bld.eq(coeffs, -float(np.vdot(f, tra_shift).real))
    bld.objective({"lam": np.array([[1.0]])})
    return bld, shift


def _theta_min(g: NCGraph, w: np.ndarray, form: str, tol: float) -> ThetaResult:
    bld, shift = _assemble_min(g, w, form)
    bs = _expect_optimal(bld.solve(tol=tol), f"theta form {form}")
    lam = float(bs.block("lam")[0, 0].real)
    y = bs.block("Y1") + shift
    res = ThetaResult(value=lam, gap=bs.solution.relative_gap, form=form,
                      primal_y=y, solution=bs.solution)
    if form == "min_Y":
        rho = bs.dual_block("S2")
        res.dual_rho = rho
        res.dual_t = bs.dual_block("Y1") - np.kron(np.eye(g.n), rho)
    return res


def _theta_schur(g: NCGraph, w: np.ndarray, tol: float) -> ThetaResult:
    n = g.n
    perp_h = hermitian_basis(g.space.perp())

    # A singular weight pins Z to L(H_A) (x) range(conj W): the program then
    # has empty interior and its dual optimum is unattained, which stalls the
    # solver.  Reformulate on that face (where an interior point exists) and
    # expand the recovered Z afterwards.
    evals, evecs = np.linalg.eigh(w)
    keep = evals > 1e-10 * max(float(evals[-1]), 0.0)
    if not np.any(keep):
        keep = evals == evals[-1]
    nb = int(np.count_nonzero(keep))
    vb = evecs[:, keep].conj()
    wred = vb.conj().T @ w.T @ vb
    wred = 0.5 * (wred + linalg.dagger(wred))
    vvec = (w @ evecs[:, keep]).reshape(-1)

    b_h = hermitian_basis_full(nb)
    d = n * nb + 1
    bld = sdp.ProgramBuilder()
    bld.block("M", d)

    r = 1.0 / np.sqrt(2.0)
    for q in range(n * nb):
        h = np.zeros((d, d), dtype=complex)
        h[0, 1 + q] = r
        h[1 + q, 0] = r
        bld.eq({"M": h}, np.sqrt(2.0) * float(vvec[q].real))
        h = np.zeros((d, d), dtype=complex)
        h[0, 1 + q] = -1j * r
        h[1 + q, 0] = 1j * r
        bld.eq({"M": h}, np.sqrt(2.0) * float(vvec[q].imag))

    def embed(m: np.ndarray) -> np.ndarray:
        out = np.zeros((d, d), dtype=complex)
        out[1:, 1:] = m
        return out

    for h in perp_h:
        for f in b_h:
            bld.eq({"M": embed(np.kron(h, f))}, 0.0)
    for f in b_h:
        bld.eq({"M": embed(np.kron(np.eye(n), f))}, float(np.vdot(f, wred).real))
    e00 = np.zeros((d, d), dtype=complex)
    e00[0, 0] = 1.0
    bld.objective({"M": e00})
    bs = _expect_optimal(bld.solve(tol=tol), "theta form schur")
    m = bs.block("M")
    lam = float(m[0, 0].real)
    lift = np.kron(np.eye(n), vb)
    z = lift @ m[1:, 1:] @ lift.conj().T
    return ThetaResult(value=lam, gap=bs.solution.relative_gap, form="schur",
                       primal_y=lam * z, schur_z=z, solution=bs.solution)


def theta(g: NCGraph, w, form: str = DEFAULT_FORM, tol: float = SOLVER_TOL) -> ThetaResult:
    """theta(S, W) through one of the minimization forms (see module docstring)."""
    w = _check_weight(w, g.n)
    if form == "schur":
        return _theta_schur(g, w, tol)
    if form in MIN_FORMS:
        return _theta_min(g, w, form, tol)
    raise ValueError(f"unknown form {form!r}; minimization forms are {MIN_FORMS}")


def theta_dual(g: NCGraph, w, tol: float = SOLVER_TOL) -> ThetaResult:
    """The dual program max <r_W| T + I (x) rho |r_W>."""
    w = _check_weight(w, g.n)
    n = g.n
    s_h = hermitian_basis(g.space)
    b_h = hermitian_basis_full(n)
    rvec = linalg.vectorize(linalg.psd_sqrt(w))
    rw = np.outer(rvec, rvec.conj())

    bld = sdp.ProgramBuilder()
    bld.block("N", n * n)
    bld.block("rho", n)
    for gmat in s_h:
        tg = float(np.trace(gmat).real)
        for f in b_h:
            bld.eq({"N": np.kron(gmat, f), "rho": -tg * f}, 0.0)
    bld.eq({"rho": np.eye(n)}, 1.0)
    bld.objective({"N": rw}, maximize=True)
    bs = _expect_optimal(bld.solve(tol=tol), "theta dual")
    rho = bs.block("rho")
    t = bs.block("N") - np.kron(np.eye(n), rho)
    return ThetaResult(value=bs.value, gap=bs.solution.relative_gap, form="max_T",
                       dual_t=t, dual_rho=rho, solution=bs.solution)


def _theta_max_y_v2(g: NCGraph, w: np.ndarray, tol: float) -> ThetaResult:
    n = g.n
    quot_h = hermitian_basis(quotient(g.space, identity_space(n)))
    b_h = hermitian_basis_full(n)
    rvec = linalg.vectorize(linalg.psd_sqrt(w))
    rw = np.outer(rvec, rvec.conj())

    bld = sdp.ProgramBuilder()
    bld.block("Y", n * n)
    _membership_rows(bld, "Y", quot_h, b_h, None)
    bld.eq({"Y": np.eye(n * n)}, 1.0)
    bld.objective({"Y": n * rw}, maximize=True)
    bs = _expect_optimal(bld.solve(tol=tol), "theta form max_Y_v2")
    return ThetaResult(value=bs.value, gap=bs.solution.relative_gap, form="max_Y_v2",
                       primal_y=bs.block("Y"), solution=bs.solution)


def theta_max_forms(g: NCGraph, w, form: str, tol: float = SOLVER_TOL) -> ThetaResult:
    """The maximization forms (see module docstring for the recovery step)."""
    w = _check_weight(w, g.n)
    n = g.n
    if form not in MAX_FORMS:
        raise ValueError(f"unknown form {form!r}; maximization forms are {MAX_FORMS}")
    if form == "max_Y_v2":
        return _theta_max_y_v2(g, w, tol)

    sw = linalg.psd_sqrt(w)
    swi = np.kron(sw, np.eye(n))
    eye2 = np.eye(n * n)

    if form in ("max_opnorm", "max_opnorm2"):
        base = theta_dual(g, w, tol=tol)
        pin = linalg.pinv_psd(linalg.psd_sqrt(base.dual_rho))
        lift = np.kron(np.eye(n), pin)
        tn = lift @ base.dual_t @ lift
        tn = 0.5 * (tn + linalg.dagger(tn))
        if form == "max_opnorm":
            val = linalg.op_norm(swi @ (tn + eye2) @ swi)
        else:
            # tn + I can dip ~solver-tol below PSD; clamp when taking the root
            root = linalg.psd_sqrt(tn + eye2, eig_tol=1e-6)
            val = linalg.op_norm(root @ np.kron(w, np.eye(n)) @ root)
        return ThetaResult(value=val, gap=base.gap, form=form,
                           dual_t=tn, solution=base.solution)

    base = _theta_max_y_v2(g, w, tol)
    sigma = linalg.partial_trace(base.primal_y, (n, n), "a")
    ssig = linalg.psd_sqrt(sigma, eig_tol=1e-6)
    pin = linalg.pinv_psd(ssig)
    proj = ssig @ pin
    lift = np.kron(np.eye(n), pin)
    y9 = lift @ base.primal_y @ lift + (1.0 / n) * np.kron(np.eye(n), np.eye(n) - proj)
    y9 = 0.5 * (y9 + linalg.dagger(y9))
    val = n * linalg.op_norm(swi @ y9 @ swi)
    return ThetaResult(value=val, gap=base.gap, form="max_Y",
                       primal_y=y9, solution=base.solution)


def all_form_values(g: NCGraph, w, tol: float = SOLVER_TOL) -> dict[str, float]:
    """Every implemented formulation evaluated on (S, W); keys are form tags."""
    out = {}
    for f in MIN_FORMS:
        out[f] = theta(g, w, form=f, tol=tol).value
    out["max_T"] = theta_dual(g, w, tol=tol).value
    for f in MAX_FORMS:
        out[f] = theta_max_forms(g, w, f, tol=tol).value
    return out


def classical_theta(adjacency, w, tol: float = SOLVER_TOL) -> float:
    """Weighted Lovasz number of a classical graph.

    min { lam : Y >= |r><r|, Y_ii = lam, Y_ij = 0 for distinct non-adjacent
    i, j }, where r is the entrywise square root of w. Assembled directly
    from the adjacency matrix on n x n matrices; this is the reference
    oracle for the classical embedding.
    """
    from .subspace import _check_adjacency

    a = _check_adjacency(adjacency)
    n = a.shape[0]
    w = np.asarray(w, dtype=float).reshape(-1)
    if w.size != n:
        raise DimensionError(f"weight vector length {w.size} does not match {n} vertices")
    if np.any(w < -1e-12):
        raise PreconditionError("classical weights must be entrywise nonnegative")
    r = np.sqrt(np.clip(w, 0.0, None))

    bld = sdp.ProgramBuilder()
    bld.block("Y1", n)
    bld.block("lam", 1)
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        bld.eq({"Y1": e, "lam": np.array([[-1.0]])}, -float(w[i]))
    rt = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j]:
                continue
            h = np.zeros((n, n), dtype=complex)
            h[i, j] = rt
            h[j, i] = rt
            bld.eq({"Y1": h}, -np.sqrt(2.0) * float(r[i] * r[j]))
            h = np.zeros((n, n), dtype=complex)
            h[i, j] = -1j * rt
            h[j, i] = 1j * rt
            bld.eq({"Y1": h}, 0.0)
    bld.objective({"lam": np.array([[1.0]])})
    bs = _expect_optimal(bld.solve(tol=tol), "classical theta")
    return float(bs.block("lam")[0, 0].real)
