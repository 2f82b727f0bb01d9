"""Theta bodies: membership, supports, projectors, saturating pairs."""
import math

import numpy as np
import pytest

from nctheta import bodies, cstar, linalg, rand, subspace
from nctheta.cstar import S0Algebra
from nctheta.errors import PreconditionError
from nctheta.subspace import NCGraph, from_classical_graph
from nctheta.theta import theta


def _cycle(n):
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        adj[i, (i + 1) % n] = adj[(i + 1) % n, i] = True
    return adj


def _two_by_two_example():
    """S = { [[a, b], [c, a]] }: its body caps both diagonal entries at 1/2."""
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1.0
    space = subspace.span([np.eye(2), e01, e01.conj().T], 2)
    return NCGraph(space, S0Algebra(((1, 2),)))


def test_two_by_two_membership_points():
    g = _two_by_two_example()
    inside = np.array([[0.3, 0.2], [0.2, 0.3]])
    outside = np.array([[0.6, 0.0], [0.0, 0.3]])
    indefinite = np.array([[0.4, 0.5], [0.5, 0.4]])
    assert bodies.theta_body_membership(g, inside).member
    assert not bodies.theta_body_membership(g, outside).member
    res = bodies.theta_body_membership(g, indefinite)
    assert not res.member and res.margin < 0.0


def test_two_by_two_value_is_twice_the_max_diagonal():
    g = _two_by_two_example()
    assert abs(theta(g, np.eye(2)).value - 2.0) < 1e-6
    assert abs(theta(g, np.diag([2.0, 1.0])).value - 4.0) < 1e-6


def test_membership_matches_value():
    rng = np.random.default_rng(0)
    g = rand.random_graph(rng, 3)
    w = rand.random_psd(rng, 3)
    lam = theta(g, w).value
    res = bodies.theta_body_membership(g, w / lam)
    assert res.member
    assert abs(res.margin) < 1e-6
    assert not bodies.theta_body_membership(g, 1.1 * w / lam).member


def test_zero_weight_is_interior():
    g = subspace.ci_graph(3)
    res = bodies.theta_body_membership(g, np.zeros((3, 3)))
    assert res.member and res.margin == 1.0


def test_antiblocker_support_holder_identity():
    rng = np.random.default_rng(1)
    g = rand.random_graph(rng, 3)
    x = rand.random_psd(rng, 3)
    sup = bodies.antiblocker_support(g, x)
    dual_val = theta(bodies.thin_complement(g), x).value
    assert abs(3 * sup.value - dual_val) < 1e-5 * (1 + dual_val)
    # the maximizer is a boundary point of the body
    res = bodies.theta_body_membership(g, sup.maximizer)
    assert res.value is not None and abs(res.value - 1.0) < 1e-5


def test_thin_complement_is_involutive():
    rng = np.random.default_rng(2)
    g = rand.random_graph(rng, 3)
    tc2 = bodies.thin_complement(bodies.thin_complement(g))
    assert tc2.space.dim == g.space.dim
    for b in g.space.basis:
        assert tc2.space.residual(b) < 1e-8


def test_psi_support_matches_value():
    rng = np.random.default_rng(3)
    s0 = S0Algebra(((1, 2), (2, 1)))
    g = rand.random_s0_graph(rng, s0)
    x = rand.random_psd(rng, 4)
    sup = bodies.theta_psi_support(g, x)
    val = theta(g, x).value
    assert abs(sup.value - val) < 1e-5 * (1 + val)
    # the maximizer lives in the commutant
    assert cstar.commutant(s0).residual(sup.maximizer) < 1e-6


def test_psi_support_on_pentagon():
    g = from_classical_graph(_cycle(5))
    assert abs(bodies.theta_psi_support(g, np.eye(5)).value - math.sqrt(5)) < 1e-5


def test_commutant_min_matches_value():
    rng = np.random.default_rng(4)
    s0 = S0Algebra(((1, 2), (2, 1)))
    g = rand.random_s0_graph(rng, s0)
    w = rand.random_psd(rng, 4)
    res = bodies.theta_commutant_min(g, w)
    val = theta(g, w).value
    assert abs(res.value - val) < 1e-5 * (1 + val)
    assert cstar.commutant(s0).residual(res.xstar) < 1e-5
    # X* dominates W up to solver accuracy
    assert linalg.min_eig(res.xstar - w) > -1e-6


def test_s_full_projectors_two_by_two():
    g = _two_by_two_example()
    for phi in (1.0, -1.0, 1j):
        p = 0.5 * np.array([[1.0, np.conj(phi)], [phi, 1.0]])
        assert bodies.is_s_full_projector(g, p)
    e00 = np.diag([1.0, 0.0])
    assert not bodies.is_s_full_projector(g, e00)   # E00 M E00 leaves S
    assert not bodies.is_s_full_projector(g, np.eye(2))
    assert not bodies.is_s_full_projector(g, 0.6 * np.eye(2))  # not a projector
    assert bodies.is_s_full_projector(subspace.full_graph(2), np.eye(2))


def test_s_full_projectors_are_body_points():
    g = _two_by_two_example()
    p = 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]])
    res = bodies.theta_body_membership(g, p)
    assert res.member and res.value is not None and abs(res.value - 1.0) < 1e-6


def test_clique_indicators_on_pentagon():
    g = from_classical_graph(_cycle(5))
    p = np.diag([1.0, 1.0, 0.0, 0.0, 0.0]).astype(complex)  # edge clique
    assert bodies.is_s_full_projector(g, p)
    res = bodies.theta_body_membership(g, p)
    assert res.member and abs(res.value - 1.0) < 1e-6


def test_fp_membership_classical_on_pentagon():
    adj = _cycle(5).astype(float)
    assert bodies.fp_membership_classical(adj, np.array([1.0, 1, 0, 0, 0]))
    assert bodies.fp_membership_classical(adj, np.full(5, 0.4 - 1e-9))
    # covering half the mass on every vertex needs total clique weight 5/4
    assert not bodies.fp_membership_classical(adj, np.full(5, 0.5))
    with pytest.raises(PreconditionError):
        bodies.fp_membership_classical(adj, np.array([-1.0, 0, 0, 0, 0]))


def test_clique_polytope_support_on_pentagon():
    adj = _cycle(5).astype(float)
    sup = bodies.clique_polytope_support(adj, np.eye(5))
    # a convex combination of edge indicators carries total mass 2, and the
    # boundary membership point 0.4 * ones matches (5 * 0.4 = 2)
    assert abs(sup.value - 2.0) < 1e-6


def test_compatible_pair_from_structured_instance():
    g = from_classical_graph(_cycle(5))
    v, w, z, zp = bodies.compatible_instance(g, np.eye(5))
    rep = bodies.check_compatible(g, v, w, z, zp)
    assert rep.ok
    assert max(rep.residual_w, rep.residual_v, rep.residual_outer) \
        <= bodies.RESIDUAL_TOL
    assert abs(rep.saturation_slack) <= bodies.SATURATION_TOL


def test_check_compatible_rejects_non_saturating_pairs():
    rng = np.random.default_rng(5)
    g = from_classical_graph(_cycle(5))
    v, w, z, zp = bodies.compatible_instance(g, np.eye(5))
    bad_v = rand.random_psd(rng, 5)   # generic V does not saturate the bound
    with pytest.raises(PreconditionError):
        bodies.check_compatible(g, bad_v, w, z, zp)
