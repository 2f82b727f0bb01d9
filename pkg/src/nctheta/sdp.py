"""Dense semidefinite programming over Hermitian cone blocks.

Standard form:

    minimize    sum_j <C_j, X_j>
    subject to  sum_j <A_kj, X_j> = b_k          (k = 0..m-1)
                X_j >= 0  (Hermitian PSD)

Inequalities are modeled upstream by slack cone blocks. Every Hermitian block
is realified (linalg.realify) and the problem is solved as a real symmetric
SDP by an infeasible-start primal-dual path-following method with
Nesterov-Todd scaling and a Mehrotra predictor-corrector; normal equations
are formed densely and solved by Cholesky with 1e-12 diagonal regularization
plus iterative refinement. Solutions are mapped back to Hermitian matrices by
averaging the two real copies, which exactly enforces the Hermitian
structure. Infeasibility and unboundedness are declared through the standard
certificate inequalities (A*(y) <= 0 with <b, y> > 0, resp. A(X) = 0,
X >= 0 with <C, X> < 0) once the iterates diverge.

The method is deterministic: fixed iteration order, no randomized pivoting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla

from . import linalg
from .errors import DimensionError, NotHermitianError, PreconditionError

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITERATIONS = 200
_REG = 1e-12
_STEP = 0.98

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible"
STATUS_UNBOUNDED = "unbounded"
STATUS_MAX_ITERATIONS = "max-iterations"


@dataclass
class SdpProblem:
    """Equality-constrained SDP over Hermitian cone blocks.

    constraints[k] maps block index -> Hermitian coefficient matrix; blocks
    absent from a constraint have zero coefficient there.
    """

    block_dims: list[int]
    C: list[np.ndarray]
    constraints: list[dict[int, np.ndarray]]
    b: np.ndarray

    def __post_init__(self):
        if len(self.C) != len(self.block_dims):
            raise DimensionError("one objective matrix per block required")
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        if len(self.constraints) != self.b.size:
            raise DimensionError("one rhs entry per constraint required")
        dof = sum(d * d for d in self.block_dims)
        if self.b.size > dof:
            raise PreconditionError(
                f"{self.b.size} constraints exceed the {dof} real degrees of freedom")
        self.C = [self._check(j, c, "objective") for j, c in enumerate(self.C)]
        self.constraints = [
            {j: self._check(j, a, f"constraint {k}") for j, a in row.items()}
            for k, row in enumerate(self.constraints)
        ]
        if not np.all(np.isfinite(self.b)):
            raise PreconditionError("rhs contains non-finite entries")

    def _check(self, j: int, m, what: str) -> np.ndarray:
        if not 0 <= j < len(self.block_dims):
            raise DimensionError(f"{what} refers to unknown block {j}")
        d = self.block_dims[j]
        m = linalg.as_complex_matrix(m)
        if m.shape != (d, d):
            raise DimensionError(f"{what}: shape {m.shape} does not match block dim {d}")
        dev = linalg.herm_deviation(m)
        if dev > 1e-9:
            raise NotHermitianError(f"{what}: matrix deviates from Hermitian by {dev:.3e}")
        return 0.5 * (m + linalg.dagger(m))

    @property
    def num_constraints(self) -> int:
        return self.b.size


@dataclass
class SdpSolution:
    status: str
    X: list[np.ndarray]
    y: np.ndarray
    Z: list[np.ndarray]
    primal_objective: float
    dual_objective: float
    relative_gap: float
    primal_residual: float
    dual_residual: float
    complementarity: float
    min_eig_x: float
    min_eig_z: float
    realify_defect: float
    iterations: int
    certificate: Optional[tuple[str, object]] = None

    @property
    def optimal(self) -> bool:
        return self.status == STATUS_OPTIMAL


def dump_problem(p: SdpProblem) -> str:
    """Deterministic text serialization (17 significant digits, stable order)."""

    def num(x) -> str:
        return format(float(x), ".17g")

    def mat(m: np.ndarray) -> str:
        return "[" + "; ".join(
            ", ".join(f"({num(m[i, j].real)},{num(m[i, j].imag)})"
                      for j in range(m.shape[1]))
            for i in range(m.shape[0])) + "]"

    lines = [f"blocks {' '.join(str(d) for d in p.block_dims)}"]
    for j, c in enumerate(p.C):
        lines.append(f"C {j} {mat(c)}")
    for k, row in enumerate(p.constraints):
        for j in sorted(row):
            lines.append(f"A {k} {j} {mat(row[j])}")
        lines.append(f"b {k} {num(p.b[k])}")
    return "\n".join(lines) + "\n"


def _dense_stacks(p: SdpProblem) -> list[np.ndarray]:
    m = p.num_constraints
    stacks = []
    for j, d in enumerate(p.block_dims):
        s = np.zeros((m, d, d), dtype=complex)
        for k, row in enumerate(p.constraints):
            if j in row:
                s[k] = row[j]
        stacks.append(s)
    return stacks


def _chol(m: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        w, v = np.linalg.eigh(0.5 * (m + m.T))
        w = np.clip(w, 1e-14 * max(1.0, float(w.max(initial=1.0))), None)
        return np.linalg.cholesky((v * w) @ v.T)


def _max_step(s: np.ndarray, ds: np.ndarray) -> float:
    """Largest a with s + a*ds >= 0 (inf -> 1e30)."""
    l = _chol(s)
    t = sla.solve_triangular(l, ds, lower=True)
    n = sla.solve_triangular(l, t.T, lower=True).T
    lam = float(np.linalg.eigvalsh(0.5 * (n + n.T))[0])
    if lam >= -1e-16:
        return 1e30
    return -1.0 / lam


class _RealData:
    """Realified problem data and the linear operators A, A^*."""

    def __init__(self, p: SdpProblem):
        self.dims = [2 * d for d in p.block_dims]
        self.C = [linalg.realify(c) / 2.0 for c in p.C]
        self.b = p.b.copy()
        self.stacks = []
        for j, s in enumerate(_dense_stacks(p)):
            r = np.empty((p.num_constraints, self.dims[j], self.dims[j]))
            for k in range(p.num_constraints):
                r[k] = linalg.realify(s[k]) / 2.0
            self.stacks.append(r)
        self.m = p.num_constraints
        self.total = sum(self.dims)

    def apply_a(self, xs: list[np.ndarray]) -> np.ndarray:
        out = np.zeros(self.m)
        for s, x in zip(self.stacks, xs):
            out += np.einsum("kab,ab->k", s, x)
        return out

    def apply_at(self, y: np.ndarray) -> list[np.ndarray]:
        return [np.einsum("k,kab->ab", y, s) for s in self.stacks]


def _ipm(data: _RealData, tol: float, max_iterations: int, verbose: bool):
    dims, m = data.dims, data.m
    norm_b = float(np.linalg.norm(data.b))
    norm_c = float(np.sqrt(sum(np.linalg.norm(c) ** 2 for c in data.C)))
    xi = max(10.0, 1.0 + float(np.abs(data.b).max(initial=0.0)))
    eta = max(10.0, 1.0 + max((float(np.linalg.norm(c, 2)) for c in data.C), default=0.0))
    xs = [xi * np.eye(d) for d in dims]
    zs = [eta * np.eye(d) for d in dims]
    y = np.zeros(m)
    init_scale = max(xi, eta) * max(dims, default=1)

    best = None
    best_err = np.inf
    stall = 0
    status = STATUS_MAX_ITERATIONS
    certificate = None
    it = 0

    # factor the (constant, unscaled) constraint operator once; used to refine
    # the primal direction so A(dx) = rp holds to machine precision (errors
    # in the scaled normal solve otherwise re-inject infeasibility near a
    # pinched face, and the drift compounds)
    g0 = np.concatenate([s.reshape(m, -1) for s in data.stacks], axis=1)
    rq0 = np.linalg.qr(g0.T, mode="r")
    d0 = np.abs(np.diag(rq0))
    floor0 = 1e-13 * max(1.0, float(d0.max(initial=0.0)))
    if np.any(d0 < floor0):
        rq0 = rq0 + np.diag(np.where(d0 < floor0, floor0, 0.0))

    def lift(residual: np.ndarray) -> np.ndarray:
        u = sla.solve_triangular(rq0, residual, trans="T", lower=False)
        u = sla.solve_triangular(rq0, u, lower=False)
        u += sla.solve_triangular(
            rq0, sla.solve_triangular(
                rq0, residual - g0 @ (g0.T @ u), trans="T", lower=False),
            lower=False)
        return u

    for it in range(1, max_iterations + 1):
        aty = data.apply_at(y)
        rp = data.b - data.apply_a(xs)
        rd = [c - z - a for c, z, a in zip(data.C, zs, aty)]
        pobj = sum(float(np.vdot(c, x).real) for c, x in zip(data.C, xs))
        dobj = float(data.b @ y)
        gap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
        compl = sum(float(np.vdot(x, z).real) for x, z in zip(xs, zs))
        rel_compl = abs(compl) / (1.0 + abs(pobj) + abs(dobj))
        prires = float(np.linalg.norm(rp)) / (1.0 + norm_b)
        dures = float(np.sqrt(sum(np.linalg.norm(r) ** 2 for r in rd))) / (1.0 + norm_c)
        err = max(gap, prires, dures, rel_compl)
        if verbose:
            print(f"  it {it:3d}  pobj {pobj:+.9e}  dobj {dobj:+.9e}  "
                  f"gap {gap:.2e}  pres {prires:.2e}  dres {dures:.2e}")
        if err < best_err:
            best_err = err
            best = ([x.copy() for x in xs], y.copy(), [z.copy() for z in zs])
            stall = 0
        else:
            stall += 1
        # terminate on the weak-duality triple; rel_compl tracks gap up to
        # infeasibility cross-terms, so it only serves as a cancellation guard
        if gap <= tol and prires <= tol and dures <= tol and rel_compl <= 100 * tol:
            status = STATUS_OPTIMAL
            break

        # certificate detection on diverging iterates
        norm_y = float(np.linalg.norm(y))
        norm_x = float(np.sqrt(sum(np.linalg.norm(x) ** 2 for x in xs)))
        if it >= 4 and norm_y > 1e5 * init_scale:
            by = float(data.b @ y)
            if by > 0:
                cert = [-a / by for a in data.apply_at(y)]
                scale = max(1.0, max(np.linalg.norm(v, 2) for v in cert))
                if all(np.linalg.eigvalsh(v)[0] >= -1e-9 * scale for v in cert):
                    status = STATUS_INFEASIBLE
                    certificate = ("primal-infeasible", y / by)
                    break
        if it >= 4 and norm_x > 1e5 * init_scale:
            ct = -pobj
            if ct > 0:
                xc = [x / ct for x in xs]
                xnorm = float(np.sqrt(sum(np.linalg.norm(v) ** 2 for v in xc)))
                if float(np.linalg.norm(data.apply_a(xc))) <= 1e-9 * (1.0 + xnorm):
                    status = STATUS_UNBOUNDED
                    certificate = ("unbounded", xc)
                    break
        if stall >= 20:
            break

        mu = compl / data.total

        # Nesterov-Todd scaling per block
        rs, rits, sigs = [], [], []
        for x, z in zip(xs, zs):
            lx = _chol(x)
            lz = _chol(z)
            u, s, vt = np.linalg.svd(lz.T @ lx)
            sq = np.sqrt(s)
            rs.append(lx @ (vt.T / sq))
            rits.append(lz @ (u / sq))
            sigs.append(s)

        # a stalled endgame iterate is usually off-center (some eigenvalue
        # pairs far from mu); a pure centering step restores progress
        center_only = stall >= 6 and (stall - 6) % 7 == 0 and err <= 1e3 * tol

        # normal matrix M = A W A^* = g g^T through scaled constraints; factor
        # it as R^T R via a QR of g^T, which keeps the conditioning of g
        # instead of squaring it (decisive on pinched faces)
        gs = []
        for s, r in zip(data.stacks, rs):
            t = np.matmul(np.matmul(r.T, s), r)
            gs.append(t.reshape(m, -1))
        g = np.concatenate(gs, axis=1)
        rq = np.linalg.qr(g.T, mode="r")
        diag = np.abs(np.diag(rq))
        floor = _REG * max(1.0, float(diag.max(initial=0.0)))
        bad = diag < floor
        if np.any(bad):
            rq = rq + np.diag(np.where(bad, floor, 0.0))

        def nsolve(rhs: np.ndarray) -> np.ndarray:
            def tri(v: np.ndarray) -> np.ndarray:
                u = sla.solve_triangular(rq, v, trans="T", lower=False)
                return sla.solve_triangular(rq, u, lower=False)
            dy = tri(rhs)
            for _ in range(2):
                dy += tri(rhs - g @ (g.T @ dy))
            return dy

        w_rd_w = [r @ (r.T @ q @ r) @ r.T for r, q in zip(rs, rd)]
        a_wrdw = data.apply_a(w_rd_w)

        def directions(d_rhs):
            rdr = [r @ dd @ r.T for r, dd in zip(rs, d_rhs)]
            dy = nsolve(rp - data.apply_a(rdr) + a_wrdw)
            atdy = data.apply_at(dy)
            dz = [q - a for q, a in zip(rd, atdy)]
            dx = [rr - r @ (r.T @ v @ r) @ r.T for rr, r, v in zip(rdr, rs, dz)]
            dx = [0.5 * (v + v.T) for v in dx]
            corr = data.apply_at(lift(rp - data.apply_a(dx)))
            dx = [v + c for v, c in zip(dx, corr)]
            dz = [0.5 * (v + v.T) for v in dz]
            return dx, dy, dz

        if center_only:
            d_cen = [2.0 * (mu * np.eye(len(s)) - np.diag(s * s)) / np.add.outer(s, s)
                     for s in sigs]
            dx, dy, dz = directions(d_cen)
        else:
            # predictor (affine scaling)
            d_aff = [-np.diag(s) for s in sigs]
            dx_a, dy_a, dz_a = directions(d_aff)
            ap = min(1.0, min(_max_step(x, dx) for x, dx in zip(xs, dx_a)))
            ad = min(1.0, min(_max_step(z, dz) for z, dz in zip(zs, dz_a)))
            mu_aff = sum(
                float(np.vdot(x + ap * dx, z + ad * dz).real)
                for x, dx, z, dz in zip(xs, dx_a, zs, dz_a)) / data.total
            sigma = float(np.clip((max(mu_aff, 0.0) / mu) ** 3, 1e-10, 1.0))

            # corrector
            d_cor = []
            for r, rit, s, dx, dz in zip(rs, rits, sigs, dx_a, dz_a):
                dxt = rit.T @ dx @ rit
                dzt = r.T @ dz @ r
                h = 0.5 * (dxt @ dzt + dzt @ dxt)
                rc = sigma * mu * np.eye(len(s)) - np.diag(s * s) - h
                d_cor.append(2.0 * rc / np.add.outer(s, s))
            dx, dy, dz = directions(d_cor)
        ap = min(1.0, _STEP * min(_max_step(x, v) for x, v in zip(xs, dx)))
        ad = min(1.0, _STEP * min(_max_step(z, v) for z, v in zip(zs, dz)))
        xs = [x + ap * v for x, v in zip(xs, dx)]
        zs = [z + ad * v for z, v in zip(zs, dz)]
        y = y + ad * dy
        if not all(np.all(np.isfinite(x)) for x in xs + zs) or not np.all(np.isfinite(y)):
            xs, y, zs = best
            break

    if status not in (STATUS_INFEASIBLE, STATUS_UNBOUNDED) and best is not None \
            and status != STATUS_OPTIMAL:
        xs, y, zs = best
    return status, xs, y, zs, certificate, it


def solve(problem: SdpProblem, tol: float = DEFAULT_TOL,
          max_iterations: int = DEFAULT_MAX_ITERATIONS, verbose: bool = False) -> SdpSolution:
    """Solve the problem; never raises on non-convergence, see SdpSolution.status."""
    data = _RealData(problem)
    if data.m == 0:
        raise PreconditionError("problems must carry at least one constraint")
    status, xr, y, zr, certificate, iters = _ipm(data, tol, max_iterations, verbose)

    dims = problem.block_dims
    defect = 0.0
    for v in xr + zr:
        d = v.shape[0] // 2
        defect = max(defect, linalg.realify_defect(0.5 * (v + v.T), d))
    xs = [linalg.unrealify(0.5 * (v + v.T), d) for v, d in zip(xr, dims)]
    zs = [2.0 * linalg.unrealify(0.5 * (v + v.T), d) for v, d in zip(zr, dims)]

    stacks = _dense_stacks(problem)
    ax = np.zeros(problem.num_constraints)
    for s, x in zip(stacks, xs):
        ax += np.einsum("kab,ba->k", s, x).real
    pobj = sum(float(np.vdot(c, x).real) for c, x in zip(problem.C, xs))
    dobj = float(problem.b @ y)
    aty = [np.einsum("k,kab->ab", y, s) for s in stacks]
    dres_num = np.sqrt(sum(
        linalg.frob(c - z - a) ** 2 for c, z, a in zip(problem.C, zs, aty)))
    norm_c = np.sqrt(sum(linalg.frob(c) ** 2 for c in problem.C))
    compl = sum(float(np.vdot(x, z).real) for x, z in zip(xs, zs))
    sol = SdpSolution(
        status=status,
        X=xs, y=y, Z=zs,
        primal_objective=pobj,
        dual_objective=dobj,
        relative_gap=abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj)),
        primal_residual=float(np.linalg.norm(problem.b - ax)) / (1.0 + float(np.linalg.norm(problem.b))),
        dual_residual=float(dres_num) / (1.0 + float(norm_c)),
        complementarity=compl,
        min_eig_x=min((linalg.min_eig(x) for x in xs), default=0.0),
        min_eig_z=min((linalg.min_eig(z) for z in zs), default=0.0),
        realify_defect=defect,
        iterations=iters,
        certificate=certificate,
    )
    return sol


def solve_with_linear_objective_over_feasible_set(
        problem: SdpProblem, objective: dict[int, np.ndarray], maximize: bool = True,
        tol: float = DEFAULT_TOL, max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SdpSolution:
    """Optimize a fresh linear objective over the feasible set of ``problem``.

    The feasible set (blocks and equality constraints) is reused; the original
    objective is discarded. Objective values in the returned solution are
    reported in the requested sense.
    """
    sign = -1.0 if maximize else 1.0
    c_new = []
    for j, d in enumerate(problem.block_dims):
        if j in objective:
            c_new.append(sign * linalg.as_complex_matrix(objective[j]))
        else:
            c_new.append(np.zeros((d, d), dtype=complex))
    p2 = SdpProblem(list(problem.block_dims), c_new, problem.constraints, problem.b)
    sol = solve(p2, tol=tol, max_iterations=max_iterations)
    if maximize:
        sol.primal_objective = -sol.primal_objective
        sol.dual_objective = -sol.dual_objective
    return sol


class ProgramBuilder:
    """Incremental construction of SdpProblem instances with named blocks."""

    def __init__(self):
        self._names: list[str] = []
        self._dims: list[int] = []
        self._rows: list[dict[int, np.ndarray]] = []
        self._b: list[float] = []
        self._obj: dict[int, np.ndarray] = {}
        self._maximize = False

    def block(self, name: str, dim: int) -> str:
        if name in self._names:
            raise PreconditionError(f"duplicate block name {name!r}")
        self._names.append(name)
        self._dims.append(dim)
        return name

    def _idx(self, name: str) -> int:
        try:
            return self._names.index(name)
        except ValueError:
            raise PreconditionError(f"unknown block {name!r}") from None

    def eq(self, coeffs: dict[str, np.ndarray], rhs: float) -> None:
        self._rows.append({self._idx(k): np.asarray(v, dtype=complex)
                           for k, v in coeffs.items()})
        self._b.append(float(rhs))

    def objective(self, coeffs: dict[str, np.ndarray], maximize: bool = False) -> None:
        self._maximize = maximize
        sign = -1.0 if maximize else 1.0
        self._obj = {self._idx(k): sign * np.asarray(v, dtype=complex)
                     for k, v in coeffs.items()}

    def build(self) -> SdpProblem:
        c = [self._obj.get(j, np.zeros((d, d), dtype=complex))
             for j, d in enumerate(self._dims)]
        return SdpProblem(list(self._dims), c, list(self._rows), np.array(self._b))

    def solve(self, tol: float = DEFAULT_TOL,
              max_iterations: int = DEFAULT_MAX_ITERATIONS, verbose: bool = False
              ) -> "BuiltSolution":
        sol = solve(self.build(), tol=tol, max_iterations=max_iterations, verbose=verbose)
        return BuiltSolution(self._names, sol, self._maximize)


@dataclass
class BuiltSolution:
    names: list[str] = field(repr=False)
    solution: SdpSolution = field(repr=False)
    maximized: bool = False

    @property
    def value(self) -> float:
        v = self.solution.primal_objective
        return -v if self.maximized else v

    @property
    def status(self) -> str:
        return self.solution.status

    def block(self, name: str) -> np.ndarray:
        return self.solution.X[self.names.index(name)]

    def dual_block(self, name: str) -> np.ndarray:
        return self.solution.Z[self.names.index(name)]
