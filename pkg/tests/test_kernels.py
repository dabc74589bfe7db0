"""Numba kernels against their numpy twins, and the backend switch."""
from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from tuttekit import kernels
from tuttekit._accel import HAVE_NUMBA
from tuttekit.families import random_corpus

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
CORPUS = [g for g in random_corpus(40, seed=31, n_max=6, m_max=9)]


def _arrays(g):
    eu, ev = g.arrays()
    return np.ascontiguousarray(eu), np.ascontiguousarray(ev)


@needs_numba
def test_subset_histogram():
    nb, npy = kernels.KERNELS["subset_histogram"]
    for g in CORPUS:
        eu, ev = _arrays(g)
        assert np.array_equal(nb(g.n, eu, ev), npy(g.n, eu, ev))


@needs_numba
def test_acyclic():
    nb, npy = kernels.KERNELS["acyclic_count"]
    for g in CORPUS:
        eu, ev = _arrays(g)
        assert nb(g.n, eu, ev) == npy(g.n, eu, ev)


@needs_numba
def test_coloring():
    nb, npy = kernels.KERNELS["coloring_count"]
    for g in CORPUS:
        eu, ev = _arrays(g)
        for q in (1, 2, 3):
            assert nb(g.n, eu, ev, q) == npy(g.n, eu, ev, q)


@needs_numba
def test_flow():
    nb, npy = kernels.KERNELS["flow_count"]
    for g in CORPUS:
        M = kernels._cycle_matrix(g.n, *g.arrays())
        if M.shape[1] == 0:
            continue
        for q in (2, 3, 4):
            assert nb(M, q) == npy(M, q)


@needs_numba
def test_aberth():
    nb, npy = kernels.KERNELS["aberth"]
    rng = np.random.default_rng(0)
    for deg in (3, 8, 20):
        c = (rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)).astype(complex)
        z0 = 1.3 * np.exp(2j * np.pi * np.arange(deg) / deg + 0.4)
        za, _, oka = nb(c, z0.copy(), 1e-14, 500)
        zb, _, okb = npy(c, z0.copy(), 1e-14, 500)
        assert oka and okb
        assert np.allclose(np.sort_complex(za), np.sort_complex(zb), atol=1e-9)


@needs_numba
def test_batched_roots():
    nb, npy = kernels.KERNELS["batched_roots"]
    rng = np.random.default_rng(1)
    C = rng.normal(size=(50, 5)) + 1j * rng.normal(size=(50, 5))
    a, b = nb(C), npy(C)
    for ra, rb in zip(a, b):
        d = np.abs(ra[:, None] - rb[None, :]).min(axis=1)
        assert d.max() < 1e-8


def test_env_flag_selects_numpy():
    env = dict(os.environ, TUTTEKIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from tuttekit._accel import backend; print(backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_numpy_backend_end_to_end():
    code = ("from tuttekit.families import clan_cyclic;"
            "from tuttekit.tutte import tutte_oracle, tutte_dc;"
            "g = clan_cyclic(2, 3);"
            "print(tutte_oracle(g).polynomial == tutte_dc(g).polynomial)")
    env = dict(os.environ, TUTTEKIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "True"
