"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's index arithmetic: basis
positions come from enumerating digit tuples with ``itertools.product`` and
building the actual product vector with ``np.kron``, so they check the
implementation rather than restate it.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from noumenal import System, SystemLattice


@pytest.fixture
def lat2() -> SystemLattice:
    return SystemLattice.from_dims([2])


@pytest.fixture
def lat22() -> SystemLattice:
    return SystemLattice.from_dims([2, 2])


@pytest.fixture
def lat23() -> SystemLattice:
    return SystemLattice.from_dims([2, 3])


@pytest.fixture
def lat222() -> SystemLattice:
    return SystemLattice.from_dims([2, 2, 2])


@pytest.fixture
def lat232() -> SystemLattice:
    return SystemLattice.from_dims([2, 3, 2])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


# ---------------------------------------------------------------------------
# Oracles.
# ---------------------------------------------------------------------------

def digit_tuples(system: System) -> list[tuple[int, ...]]:
    """All digit tuples of a system's basis, in index order."""
    return list(itertools.product(*[range(d) for d in system.atom_dims]))


def kron_index(a_sys: System, b_sys: System, i: int, k: int) -> int:
    """Position of |i>^A ⊗ |k>^B found by building the vector with np.kron."""
    lattice = a_sys.lattice
    digits = dict(zip(a_sys.atom_ids, digit_tuples(a_sys)[i]))
    digits.update(zip(b_sys.atom_ids, digit_tuples(b_sys)[k]))
    vec = np.array([1.0])
    for atom_id in sorted(digits):
        unit = np.zeros(lattice.dims[atom_id])
        unit[digits[atom_id]] = 1.0
        vec = np.kron(vec, unit)
    return int(np.argmax(vec))


def embed_oracle(op: np.ndarray, a_sys: System, within: System) -> np.ndarray:
    """Entrywise identity-padding: out[(i,r),(j,r)] = op[i,j]."""
    rest = within.difference(a_sys)
    out = np.zeros((within.dim, within.dim), dtype=np.complex128)
    for i in range(a_sys.dim):
        for j in range(a_sys.dim):
            for r in range(rest.dim):
                out[kron_index(a_sys, rest, i, r), kron_index(a_sys, rest, j, r)] = op[i, j]
    return out


def partial_trace_oracle(mat: np.ndarray, system: System, traced: System) -> np.ndarray:
    """Brute-force double sum over the traced indices."""
    keep = system.difference(traced)
    out = np.zeros((keep.dim, keep.dim), dtype=np.complex128)
    for i in range(keep.dim):
        for j in range(keep.dim):
            for k in range(traced.dim):
                row = kron_index(keep, traced, i, k)
                col = kron_index(keep, traced, j, k)
                out[i, j] += mat[row, col]
    return out


def evolution_oracle(w_matrix: np.ndarray, a_sys: System) -> np.ndarray:
    """Grid built the slow way: conjugate each embedded basis flip."""
    s = a_sys.lattice.global_system
    d, big_d = a_sys.dim, s.dim
    out = np.zeros((d, d, big_d, big_d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            flip = np.zeros((d, d), dtype=np.complex128)
            flip[j, i] = 1.0
            out[i, j] = w_matrix.conj().T @ embed_oracle(flip, a_sys, s) @ w_matrix
    return out
