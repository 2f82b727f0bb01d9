"""Block algebras: projections, scalings, complements, twirls."""
import numpy as np
import pytest

from nctheta import cstar, linalg, rand, subspace
from nctheta.cstar import S0Algebra
from nctheta.errors import DimensionError, PreconditionError


def test_s0_algebra_dimensions():
    s0 = S0Algebra(((1, 2), (2, 1)))
    assert s0.n == 4
    assert cstar.algebra_subspace(s0).dim == 1 + 4
    assert cstar.commutant(s0).dim == 4 + 1


def test_s0_algebra_rejects_bad_blocks():
    with pytest.raises(DimensionError):
        S0Algebra(())
    with pytest.raises(DimensionError):
        S0Algebra(((0, 2),))


def test_diagonal_algebra():
    s0 = cstar.diagonal_algebra(3)
    assert s0.blocks == ((1, 1), (1, 1), (1, 1))
    assert cstar.algebra_subspace(s0).dim == 3
    assert cstar.commutant(s0).dim == 3


def test_commproj_is_orthogonal_projection():
    rng = np.random.default_rng(0)
    s0 = S0Algebra(((1, 2), (2, 1)))
    w = rand.random_hermitian(rng, 4)
    p = cstar.commproj(s0, w)
    assert linalg.frob(cstar.commproj(s0, p) - p) < 1e-12
    comm = cstar.commutant(s0)
    # the projection lands in the commutant and the difference is orthogonal
    assert comm.residual(p) < 1e-10
    for k in comm.basis:
        assert abs(linalg.hs_inner(k, w - p)) < 1e-10


def test_commutant_members_commute_with_algebra():
    s0 = S0Algebra(((1, 2), (2, 1)))
    alg = cstar.algebra_subspace(s0)
    comm = cstar.commutant(s0)
    for a in alg.basis:
        for k in comm.basis:
            assert linalg.frob(a @ k - k @ a) < 1e-10


def test_blockscale_kills_commutant_perp():
    rng = np.random.default_rng(1)
    s0 = S0Algebra(((1, 2), (2, 1)))
    w = rand.random_hermitian(rng, 4)
    perp = w - cstar.commproj(s0, w)
    assert linalg.frob(cstar.blockscale(s0, perp)) < 1e-10
    # and it acts invertibly on the commutant part
    p = cstar.commproj(s0, w)
    if linalg.frob(p) > 1e-9:
        assert linalg.frob(cstar.blockscale(s0, p)) > 1e-12


def test_scaling_matrix_worked_examples():
    n = 4
    assert np.allclose(cstar.scaling_matrix(S0Algebra(((1, n),))), n * np.eye(n))
    assert np.allclose(cstar.scaling_matrix(S0Algebra(((n, 1),))), np.eye(n) / n)
    d = cstar.scaling_matrix(S0Algebra(((1, 2), (2, 1))))
    assert np.allclose(d, np.diag([2.0, 2.0, 0.5, 0.5]))


def test_complement_requires_s0():
    g = subspace.NCGraph(subspace.identity_space(3))
    with pytest.raises(PreconditionError):
        cstar.complement(g)


def test_complement_is_involutive():
    rng = np.random.default_rng(2)
    s0 = S0Algebra(((1, 2), (2, 1)))
    g = rand.random_s0_graph(rng, s0)
    gc = cstar.complement(g)
    gcc = cstar.complement(gc)
    assert gcc.space.dim == g.space.dim
    for b in g.space.basis:
        assert gcc.space.residual(b) < 1e-8
    # the complement is S^perp + S0, so it depends on the algebra annotation:
    # the full graph over its own algebra is self-complementary, while the
    # full graph viewed as a CI-graph drops to the trivial one
    assert cstar.complement(subspace.ci_graph(3)).space.dim == 9
    assert cstar.complement(subspace.full_graph(3)).space.dim == 9
    full_over_ci = subspace.NCGraph(subspace.full_space(3), S0Algebra(((1, 3),)))
    assert cstar.complement(full_over_ci).space.dim == 1


def test_pauli_basis_unitaries_and_sum():
    for d in (2, 3):
        us = cstar.pauli_basis(d)
        assert len(us) == d * d
        for u in us:
            assert linalg.frob(u @ linalg.dagger(u) - np.eye(d)) < 1e-12
        rng = np.random.default_rng(d)
        m = rand.random_complex(rng, d)
        total = sum(u @ m @ linalg.dagger(u) for u in us)
        assert linalg.frob(total - d * np.trace(m) * np.eye(d)) < 1e-10


def test_pauli_partial_twirl():
    d, db = 3, 2
    rng = np.random.default_rng(5)
    m = rand.random_complex(rng, d * db)
    out = cstar.pauli_partial_twirl(m, d)
    target = d * np.kron(np.eye(d), linalg.partial_trace(m, (d, db), "a"))
    assert linalg.frob(out - target) < 1e-10


@pytest.mark.parametrize("blocks", [((2, 1),), ((1, 2),), ((1, 1), (1, 1))])
def test_twirl_projector_is_projector(blocks):
    s0 = S0Algebra(blocks)
    n = s0.n
    t = cstar.twirl_projector(s0)
    assert linalg.frob(t @ t - t) < 1e-10
    assert linalg.frob(t - linalg.dagger(t)) < 1e-10
    # the maximally entangled vector is always fixed
    phi = linalg.max_ent_vector(n)
    assert linalg.frob(t @ phi - phi) < 1e-10


def test_twirl_projector_closed_forms():
    n = 3
    phi = linalg.max_ent_vector(n)
    t_full = cstar.twirl_projector(S0Algebra(((n, 1),)))
    assert linalg.frob(t_full - np.outer(phi, phi.conj()) / n) < 1e-10
    t_triv = cstar.twirl_projector(S0Algebra(((1, n),)))
    assert linalg.frob(t_triv - np.eye(n * n)) < 1e-10
    t_diag = cstar.twirl_projector(cstar.diagonal_algebra(n))
    target = np.zeros((n * n, n * n))
    for i in range(n):
        e = np.zeros((n, n))
        e[i, i] = 1.0
        target += np.kron(e, e)
    assert linalg.frob(t_diag - target) < 1e-10


def test_twirl_projector_commutes_with_block_unitaries():
    rng = np.random.default_rng(7)
    s0 = S0Algebra(((1, 2), (2, 1)))
    t = cstar.twirl_projector(s0)
    # a unitary inside the algebra is U_A (x) I_Y on each block
    u = np.zeros((4, 4), dtype=complex)
    u[:2, :2] = np.kron(rand.random_unitary(rng, 1), np.eye(2))
    u[2:, 2:] = np.kron(rand.random_unitary(rng, 2), np.eye(1))
    uu = np.kron(u, u.conj())
    assert linalg.frob(t @ uu - uu @ t) < 1e-10
    assert linalg.frob(t @ uu @ t - t) < 1e-10


def test_check_phi_inequality():
    rng = np.random.default_rng(9)
    w = rand.random_pd(rng, 6, floor=0.2)
    assert cstar.check_phi_inequality(w, (2, 3))
    # explicit eigenvalue version of the same statement
    d, db = 2, 3
    winv = np.linalg.inv(w)
    trb = linalg.partial_trace(w, (d, db), "a")
    phi = linalg.max_ent_vector(d)
    lhs = np.kron(np.eye(d), winv) - np.kron(np.outer(phi, phi.conj()),
                                             np.linalg.inv(trb))
    assert linalg.min_eig(lhs) > -1e-10 * (1 + linalg.op_norm(lhs))


def test_dimension_mismatch_raises():
    s0 = S0Algebra(((1, 2), (2, 1)))
    with pytest.raises(DimensionError):
        cstar.commproj(s0, np.eye(3))
