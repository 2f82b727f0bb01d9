"""Matrix helper sanity: round trips, partial traces, norms, square roots."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctheta import linalg
from nctheta.errors import DimensionError, NotHermitianError, NotPsdError


def _rng(seed=0):
    return np.random.default_rng(seed)


def _random_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def test_dagger_is_conjugate_transpose():
    m = _random_complex(_rng(), 3)
    assert np.allclose(linalg.dagger(m), m.conj().T)


def test_hs_inner_matches_trace():
    rng = _rng(1)
    a, b = _random_complex(rng, 4), _random_complex(rng, 4)
    assert abs(linalg.hs_inner(a, b) - np.trace(linalg.dagger(a) @ b)) < 1e-12


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=50))
@settings(max_examples=30, deadline=None)
def test_vectorize_roundtrip(n, seed):
    m = _random_complex(_rng(seed), n)
    v = linalg.vectorize(m)
    assert v.shape == (n * n,)
    assert np.allclose(linalg.unvectorize(v, n), m)


def test_vectorize_is_row_major():
    m = np.arange(9, dtype=complex).reshape(3, 3)
    v = linalg.vectorize(m)
    # entry (i, j) lands at index i * n + j
    assert v[1 * 3 + 2] == m[1, 2]


def test_max_ent_vector_is_vec_of_identity():
    n = 4
    phi = linalg.max_ent_vector(n)
    assert np.allclose(phi, linalg.vectorize(np.eye(n)))
    assert abs(np.vdot(phi, phi) - n) < 1e-12


@pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (3, 2)])
def test_partial_trace_of_kron(da, db):
    rng = _rng(7)
    a = _random_complex(rng, da)
    b = _random_complex(rng, db)
    m = np.kron(a, b)
    # side "a" removes the first factor, side "b" the second
    assert np.allclose(linalg.partial_trace(m, (da, db), "a"), np.trace(a) * b)
    assert np.allclose(linalg.partial_trace(m, (da, db), "b"), np.trace(b) * a)


def test_partial_trace_preserves_trace():
    rng = _rng(8)
    m = _random_complex(rng, 6)
    ta = linalg.partial_trace(m, (2, 3), "a")
    tb = linalg.partial_trace(m, (2, 3), "b")
    assert abs(np.trace(ta) - np.trace(m)) < 1e-12
    assert abs(np.trace(tb) - np.trace(m)) < 1e-12


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(DimensionError):
        linalg.partial_trace(np.eye(6), (2, 2), "a")


def test_norms_on_known_matrix():
    m = np.diag([3.0, -4.0, 0.0])
    assert abs(linalg.op_norm(m) - 4.0) < 1e-12
    assert abs(linalg.trace_norm(m) - 7.0) < 1e-12
    assert abs(linalg.min_eig(m) - (-4.0)) < 1e-12
    assert abs(linalg.frob(m) - 5.0) < 1e-12


def test_psd_sqrt_squares_back():
    rng = _rng(3)
    a = _random_complex(rng, 4)
    w = a @ linalg.dagger(a)
    r = linalg.psd_sqrt(w)
    assert linalg.frob(r @ r - w) < 1e-10
    assert linalg.min_eig(r) > -1e-12


def test_psd_sqrt_rejects_indefinite():
    with pytest.raises(NotPsdError):
        linalg.psd_sqrt(np.diag([1.0, -1.0]))


def test_pinv_psd_on_singular():
    w = np.diag([2.0, 0.0, 0.5])
    p = linalg.pinv_psd(w)
    assert np.allclose(p, np.diag([0.5, 0.0, 2.0]))


def test_require_hermitian():
    with pytest.raises(NotHermitianError):
        linalg.require_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    m = np.array([[1.0, 2.0 + 1e-14j], [2.0 - 1e-14j, 3.0]])
    out = linalg.require_hermitian(m)
    assert linalg.herm_deviation(out) == 0.0


def test_realify_roundtrip():
    rng = _rng(5)
    a = _random_complex(rng, 3)
    h = a + linalg.dagger(a)
    r = linalg.realify(h)
    assert r.shape == (6, 6)
    assert np.allclose(r, r.T)
    assert np.allclose(linalg.unrealify(r, 3), h)
    assert linalg.realify_defect(r, 3) < 1e-14


def test_realify_preserves_spectrum_doubled():
    rng = _rng(6)
    a = _random_complex(rng, 3)
    h = a + linalg.dagger(a)
    ev_c = np.linalg.eigvalsh(h)
    ev_r = np.linalg.eigvalsh(linalg.realify(h))
    assert np.allclose(np.sort(np.repeat(ev_c, 2)), np.sort(ev_r))
