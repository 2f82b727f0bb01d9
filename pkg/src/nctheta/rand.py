"""Seeded random instances for tests and verification suites.

Every generator takes a ``numpy.random.Generator`` so that identical seeds
reproduce identical instances (reports built on top of these are then
byte-identical across runs).  Graph generators always return spans that
satisfy the ambient invariants: adjoint-closed, containing the identity, and
-- when an S0 algebra is attached -- closed under the S0 bimodule action.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from . import cstar, subspace
from .cstar import S0Algebra
from .subspace import NCGraph, OperatorSubspace


def random_complex(rng: np.random.Generator, n: int, m: Optional[int] = None) -> np.ndarray:
    """Ginibre matrix: independent standard complex Gaussian entries."""
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = random_complex(rng, n)
    return 0.5 * (a + a.conj().T)


def random_psd(rng: np.random.Generator, n: int, rank: Optional[int] = None) -> np.ndarray:
    """PSD matrix a a^dag / n; full rank almost surely unless ``rank`` is given."""
    k = n if rank is None else rank
    assert 0 <= k <= n
    if k == 0:
        return np.zeros((n, n), dtype=complex)
    a = random_complex(rng, n, k)
    return a @ a.conj().T / n


def random_pd(rng: np.random.Generator, n: int, floor: float = 0.1) -> np.ndarray:
    """PSD matrix with smallest eigenvalue at least ``floor``."""
    return random_psd(rng, n) + floor * np.eye(n)


def random_density(rng: np.random.Generator, n: int) -> np.ndarray:
    w = random_psd(rng, n)
    return w / float(np.trace(w).real)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar unitary via QR of a Ginibre matrix with phase correction."""
    q, r = np.linalg.qr(random_complex(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_adjacency(rng: np.random.Generator, n: int, p: float = 0.5) -> np.ndarray:
    """Symmetric boolean adjacency matrix with edge probability ``p``."""
    upper = rng.random((n, n)) < p
    adj = np.triu(upper, k=1)
    adj = adj | adj.T
    return adj.astype(bool)


def random_graph(rng: np.random.Generator, n: int, generators: int = 1) -> NCGraph:
    """Random non-commutative graph: span{I, m_i, m_i^dag} for Ginibre m_i."""
    assert generators >= 0
    mats = [np.eye(n, dtype=complex)]
    for _ in range(generators):
        m = random_complex(rng, n)
        mats.append(m)
        mats.append(m.conj().T)
    return subspace.graph_from_span(np.stack(mats), n)


def random_s0_graph(rng: np.random.Generator, s0: S0Algebra,
                    generators: int = 1) -> NCGraph:
    """Random S0-graph: S0 plus the bimodule closure of random generators.

    span{a m b : a, b in an S0 basis} is itself an S0-bimodule, because
    c (a m b) d = (c a) m (b d) stays inside the span, so a single pass over
    an algebra basis closes each generator.
    """
    n = s0.n
    s0_space = cstar.algebra_subspace(s0)
    alg = list(s0_space.basis)
    mats = list(s0_space.basis)
    for _ in range(generators):
        m = random_complex(rng, n)
        for a in alg:
            for b in alg:
                amb = a @ m @ b
                mats.append(amb)
                mats.append(amb.conj().T)
    space = subspace.span(np.stack(mats), n)
    return NCGraph(space, s0)


def random_blocks(rng: np.random.Generator, n: int) -> tuple[tuple[int, int], ...]:
    """Random block structure (dA_i, dY_i) with total dimension n."""
    assert n >= 1
    blocks = []
    left = n
    while left > 0:
        da = int(rng.integers(1, left + 1))
        dy = int(rng.integers(1, left // da + 1))
        blocks.append((da, dy))
        left -= da * dy
    return tuple(blocks)


def random_in_commutant(rng: np.random.Generator, s0: S0Algebra) -> np.ndarray:
    """Random PSD element of the commutant S0'."""
    w = cstar.commproj(s0, random_psd(rng, s0.n))
    return 0.5 * (w + w.conj().T)
