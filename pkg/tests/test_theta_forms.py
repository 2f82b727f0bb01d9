"""Weighted value: closed forms, form agreement, oracle cross-checks."""
import importlib
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctheta import linalg, rand, subspace
from nctheta.errors import DimensionError, NotPsdError
from nctheta.subspace import ci_graph, from_classical_graph, full_graph
from nctheta.theta import (MAX_FORMS, MIN_FORMS, all_form_values,
                           classical_theta, theta, theta_dual, theta_max_forms)

theta_mod = importlib.import_module("nctheta.theta")


def _cycle(n):
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        adj[i, (i + 1) % n] = adj[(i + 1) % n, i] = True
    return adj


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=2, max_value=4))
@settings(max_examples=10, deadline=None)
def test_trivial_graph_value_is_n_trace(seed, n):
    rng = np.random.default_rng(seed)
    w = rand.random_psd(rng, n)
    val = theta(ci_graph(n), w).value
    assert abs(val - n * np.trace(w).real) < 1e-6 * (1 + val)


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=2, max_value=4))
@settings(max_examples=10, deadline=None)
def test_full_graph_value_is_operator_norm(seed, n):
    rng = np.random.default_rng(seed)
    w = rand.random_psd(rng, n)
    val = theta(full_graph(n), w).value
    assert abs(val - linalg.op_norm(w)) < 1e-6 * (1 + val)


def test_pentagon_with_identity_weight():
    g = from_classical_graph(_cycle(5))
    assert abs(theta(g, np.eye(5)).value - math.sqrt(5)) < 1e-6


def test_classical_oracle_matches_embedding():
    rng = np.random.default_rng(3)
    for _ in range(3):
        adj = rand.random_adjacency(rng, 4)
        w = rng.uniform(0.2, 2.0, size=4)
        a = classical_theta(adj, w)
        b = theta(from_classical_graph(adj), np.diag(w)).value
        assert abs(a - b) < 1e-5 * (1 + abs(a))


def test_all_forms_agree_on_random_instance():
    rng = np.random.default_rng(5)
    g = rand.random_graph(rng, 3)
    w = rand.random_psd(rng, 3)
    vals = all_form_values(g, w)
    assert set(vals) == set(MIN_FORMS) | set(MAX_FORMS) | {"max_T"}
    ref = vals["min_Y"]
    for form, v in vals.items():
        assert abs(v - ref) < 1e-6 * (1 + ref), form


def test_dual_form_matches_primal():
    rng = np.random.default_rng(7)
    g = rand.random_graph(rng, 3)
    w = rand.random_psd(rng, 3)
    a = theta(g, w).value
    b = theta_dual(g, w).value
    assert abs(a - b) < 1e-6 * (1 + a)


def test_max_form_dispatch():
    rng = np.random.default_rng(8)
    g = rand.random_graph(rng, 3)
    w = rand.random_psd(rng, 3)
    ref = theta(g, w).value
    for form in MAX_FORMS:
        assert abs(theta_max_forms(g, w, form).value - ref) < 1e-6 * (1 + ref)
    with pytest.raises(ValueError):
        theta_max_forms(g, w, "min_Y")
    with pytest.raises(ValueError):
        theta(g, w, form="max_Y")


def test_schur_form_handles_singular_weight():
    # rank-deficient weights exercise the facial reduction path
    g = from_classical_graph(_cycle(5))
    w = np.zeros((5, 5))
    w[0, 0] = 1.0
    for form in ("min_Y", "schur"):
        assert abs(theta(g, w, form=form).value - 1.0) < 1e-6


def test_zero_weight_gives_zero():
    g = ci_graph(3)
    assert theta(g, np.zeros((3, 3))).value < 1e-8


def test_homogeneity_and_monotonicity():
    rng = np.random.default_rng(11)
    g = rand.random_graph(rng, 3)
    w = rand.random_psd(rng, 3)
    x = w + rand.random_psd(rng, 3)
    a, ax = theta(g, w).value, theta(g, x).value
    assert ax >= a - 1e-7 * (1 + ax)
    assert abs(theta(g, 2.5 * w).value - 2.5 * a) < 1e-6 * (1 + a)


def test_product_multiplicativity_small():
    rng = np.random.default_rng(13)
    g1, g2 = rand.random_graph(rng, 2), rand.random_graph(rng, 2)
    w1, w2 = rand.random_psd(rng, 2), rand.random_psd(rng, 2)
    lhs = theta(subspace.strong_product(g1, g2), np.kron(w1, w2)).value
    rhs = theta(g1, w1).value * theta(g2, w2).value
    assert abs(lhs - rhs) < 1e-4 * (1 + rhs)


def test_weight_validation():
    g = ci_graph(3)
    with pytest.raises(NotPsdError):
        theta(g, np.diag([1.0, -1.0, 0.0]))
    with pytest.raises(DimensionError):
        theta(g, np.eye(2))


def test_value_between_norm_and_n_trace():
    rng = np.random.default_rng(17)
    g = rand.random_graph(rng, 4)
    w = rand.random_psd(rng, 4)
    v = theta(g, w).value
    assert v >= linalg.op_norm(w) - 1e-6 * (1 + v)
    assert v <= 4 * np.trace(w).real + 1e-6 * (1 + v)


def test_result_carries_certificates():
    rng = np.random.default_rng(19)
    g = rand.random_graph(rng, 3)
    w = rand.random_psd(rng, 3)
    res = theta(g, w)
    assert res.form == "min_Y"
    assert res.gap <= 1e-8
    assert res.primal_y is not None and res.primal_y.shape == (9, 9)
    assert res.solution is not None and res.solution.optimal
