"""Operator subspaces and graph invariants."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctheta import linalg, rand, subspace
from nctheta.cstar import S0Algebra
from nctheta.errors import GraphInvariantError, PreconditionError
from nctheta.subspace import NCGraph


def _cycle(n):
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        adj[i, (i + 1) % n] = adj[(i + 1) % n, i] = True
    return adj


def test_span_basis_is_orthonormal():
    rng = np.random.default_rng(0)
    mats = [rand.random_complex(rng, 3) for _ in range(4)]
    s = subspace.span(mats, 3)
    gram = np.array([[linalg.hs_inner(a, b) for b in s.basis] for a in s.basis])
    assert np.allclose(gram, np.eye(s.dim), atol=1e-12)
    for m in mats:
        assert s.residual(m) < 1e-9


def test_span_drops_linear_dependence():
    m = np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex)
    s = subspace.span([m, 2 * m, 3 * m], 2)
    assert s.dim == 1


def test_perp_is_complementary():
    rng = np.random.default_rng(1)
    s = subspace.span([np.eye(3), rand.random_complex(rng, 3)], 3)
    p = s.perp()
    assert s.dim + p.dim == 9
    for a in s.basis:
        for b in p.basis:
            assert abs(linalg.hs_inner(a, b)) < 1e-10


def test_perp_of_complex_span_is_adjoint_consistent():
    # regression: the perp must be taken in the Hermitian inner product,
    # so dagger-closing the span dagger-closes the perp
    rng = np.random.default_rng(2)
    m = rand.random_complex(rng, 3)
    s = subspace.span([np.eye(3), m, linalg.dagger(m)], 3)
    p = s.perp()
    for b in p.basis:
        assert p.residual(linalg.dagger(b)) < 1e-9


@given(st.integers(min_value=2, max_value=5))
@settings(max_examples=10, deadline=None)
def test_identity_and_full_space_dims(n):
    assert subspace.identity_space(n).dim == 1
    assert subspace.full_space(n).dim == n * n


def test_sum_spaces():
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1.0
    a = subspace.identity_space(2)
    b = subspace.span([e01, e01.conj().T], 2)
    s = subspace.sum_spaces(a, b)
    assert s.dim == 3
    assert s.residual(np.eye(2)) < 1e-12
    assert s.residual(e01) < 1e-12


def test_quotient_dimensions():
    # quotienting the classical C5 span by the diagonal removes it entirely
    g = subspace.from_classical_graph(_cycle(5))
    diag = subspace.span([np.diag(v) for v in np.eye(5)], 5)
    q = subspace.quotient(g.space, diag)
    assert q.dim == g.space.dim - 5
    for b in q.basis:
        assert all(abs(linalg.hs_inner(np.diag(v), b)) < 1e-10 for v in np.eye(5))


def test_from_classical_graph_span():
    adj = _cycle(5)
    g = subspace.from_classical_graph(adj)
    assert g.n == 5
    # diagonal matrix units plus one pair per edge
    assert g.space.dim == 5 + 2 * int(adj.sum()) // 2
    e01 = np.zeros((5, 5), dtype=complex)
    e01[0, 1] = 1.0
    assert g.space.residual(e01) < 1e-10          # edge of C5
    e02 = np.zeros((5, 5), dtype=complex)
    e02[0, 2] = 1.0
    # residual is relative to 1 + ||m||, so a fully-outside unit matrix is 1/2
    assert abs(g.space.residual(e02) - 0.5) < 1e-10
    assert g.s0 is not None and g.s0.blocks == tuple((1, 1) for _ in range(5))


def test_from_classical_graph_rejects_bad_adjacency():
    a = _cycle(4).astype(float)
    a[0, 1] = 2.0
    with pytest.raises(GraphInvariantError):
        subspace.from_classical_graph(a)
    b = np.zeros((3, 3))
    b[0, 1] = 1.0
    with pytest.raises(GraphInvariantError):
        subspace.from_classical_graph(b)          # not symmetric
    c = np.eye(3)
    with pytest.raises(GraphInvariantError):
        subspace.from_classical_graph(c)          # diagonal must be zero


def test_graph_requires_identity():
    x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    with pytest.raises(GraphInvariantError):
        NCGraph(subspace.span([x], 2))


def test_graph_requires_adjoint_closure():
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1.0
    with pytest.raises(GraphInvariantError):
        NCGraph(subspace.span([np.eye(2), e01], 2))


def test_graph_requires_s0_contained():
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1.0
    space = subspace.span([np.eye(2), e01, e01.conj().T], 2)
    # the diagonal algebra is not inside span{I, E01, E10}
    with pytest.raises(GraphInvariantError):
        NCGraph(space, S0Algebra(((1, 1), (1, 1))))


def test_graph_requires_s0_bimodule():
    units = np.zeros((4, 2, 2), dtype=complex)
    units[0, 0, 0] = units[1, 1, 1] = 1.0
    units[2, 0, 1] = units[2, 1, 0] = 1.0        # E01 + E10 but not each alone
    space = subspace.span(list(units[:3]), 2)
    with pytest.raises(GraphInvariantError):
        NCGraph(space, S0Algebra(((1, 1), (1, 1))))
    # adding the separated off-diagonal units restores the bimodule property
    units[2] = 0.0
    units[2, 0, 1] = 1.0
    units[3, 1, 0] = 1.0
    g = NCGraph(subspace.span(list(units), 2), S0Algebra(((1, 1), (1, 1))))
    assert g.dim == 4


def test_graph_from_span_adds_identity():
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1.0
    g = subspace.graph_from_span([e01, e01.conj().T], 2)
    assert g.space.residual(np.eye(2)) < 1e-10
    assert g.dim == 3


@pytest.mark.parametrize("prod", [subspace.strong_product,
                                  subspace.disjunctive_product])
def test_products_of_trivial_graphs(prod):
    a = subspace.ci_graph(2)
    b = subspace.ci_graph(2)
    g = prod(a, b)
    assert g.n == 4
    # for S = S' = CI every cross term collapses, whichever product is taken
    assert g.dim == 1
    assert g.space.residual(np.eye(4)) < 1e-10


def test_strong_product_of_classical_graphs_matches_edges():
    adj = np.array([[0, 1], [1, 0]], dtype=bool)
    k2 = subspace.from_classical_graph(adj)
    g = subspace.strong_product(k2, k2)
    # K2 strong K2 = K4: the span is all matrix units
    assert g.space.dim == 16


def test_random_s0_graph_is_valid_bimodule():
    rng = np.random.default_rng(3)
    s0 = S0Algebra(((1, 2), (2, 1)))
    g = rand.random_s0_graph(rng, s0)
    assert g.n == 4
    assert g.s0 is s0
    # NCGraph validation ran in the constructor; spot-check adjoint closure
    for b in g.space.basis:
        assert g.space.residual(linalg.dagger(b)) < 1e-8
