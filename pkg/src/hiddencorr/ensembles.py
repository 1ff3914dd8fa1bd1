"""Random inputs for property sweeps."""
from __future__ import annotations

import numpy as np


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_simplex(n: int, seed=None) -> np.ndarray:
    """Uniform point on the probability simplex (normalized exponentials)."""
    e = _rng(seed).exponential(size=n)
    return e / e.sum()


def random_density_matrix(n: int, seed=None, rank: int | None = None) -> np.ndarray:
    """``G G^dag / Tr(G G^dag)`` with ``G`` complex Gaussian, ``n x rank``."""
    rng = _rng(seed)
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_diagonal_state(n: int, seed=None) -> np.ndarray:
    return np.diag(random_simplex(n, seed)).astype(complex)


def random_hermitian(n: int, seed=None, bound: float = 2.0) -> np.ndarray:
    """Hermitian matrix whose entries have modulus at most ``bound``."""
    rng = _rng(seed)
    half = bound / np.sqrt(2)
    g = rng.uniform(-half, half, (n, n)) + 1j * rng.uniform(-half, half, (n, n))
    h = (g + g.conj().T) / 2
    return h
