"""Classical distributions over N outcomes read as joint distributions.

A probability vector ``P(y)`` is reinterpreted, through the index map of
:mod:`hiddencorr.indexmap`, as a joint distribution of several virtual random
variables. Entropies are in nats.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError, InvalidStateError
from .indexmap import MarginalSpec, as_shape, check_dimension

PROB_TOL = 1e-9
ZERO_CUTOFF = 1e-15


def as_probs(p, tol: float = PROB_TOL) -> np.ndarray:
    """Return ``p`` as a float array after checking it is a distribution."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidStateError("probability vector must be a nonempty 1-d array")
    if not np.all(np.isfinite(p)):
        raise InvalidStateError("probability vector has non-finite entries")
    if p.min() < 0:
        raise InvalidStateError(f"negative probability {p.min():.3g}")
    total = p.sum()
    if abs(total - 1.0) > tol:
        raise InvalidStateError(f"probabilities sum to {total!r}, defect {abs(total - 1.0):.3g}")
    return p


def normalize(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.min() < 0:
        raise InvalidStateError("cannot normalize a vector with negative entries")
    total = p.sum()
    if total <= 0:
        raise InvalidStateError("cannot normalize a vector with zero mass")
    return p / total


def _as_tensor(p: np.ndarray, shape) -> np.ndarray:
    # axis 1 varies fastest, so in C order it is the last tensor axis
    return p.reshape(shape.factors[::-1])


def marginal(p, spec: MarginalSpec) -> np.ndarray:
    """Sum ``p`` over the axes not listed in ``spec.keep_axes``.

    The result is ordered by the index map over the kept axes.
    """
    p = as_probs(p)
    shape = check_dimension(p.size, spec.shape)
    n = shape.n
    dropped = tuple(n - a for a in spec.drop_axes)
    out = _as_tensor(p, shape).sum(axis=dropped) if dropped else _as_tensor(p, shape)
    return np.ascontiguousarray(out).reshape(-1)


def shannon_entropy(p) -> float:
    """``-sum p ln p`` with ``0 ln 0 = 0``."""
    p = as_probs(p)
    p = p[p > ZERO_CUTOFF]
    return float(max(-np.sum(p * np.log(p)), 0.0))


def _require_arity(shape, n: int) -> None:
    if shape.n != n:
        raise DomainError(f"shape must have exactly {n} factors, got {shape.n}")


def mutual_information(p, shape) -> float:
    """``H(1) + H(2) - H(1,2)`` for a two-factor shape."""
    shape = as_shape(shape)
    _require_arity(shape, 2)
    p = as_probs(p)
    check_dimension(p.size, shape)
    h1 = shannon_entropy(marginal(p, MarginalSpec(shape, (1,))))
    h2 = shannon_entropy(marginal(p, MarginalSpec(shape, (2,))))
    return h1 + h2 - shannon_entropy(p)


def conditional_information(p, shape) -> float:
    """``H(1,2) + H(2,3) - H(2) - H(1,2,3)`` for a three-factor shape."""
    shape = as_shape(shape)
    _require_arity(shape, 3)
    p = as_probs(p)
    check_dimension(p.size, shape)
    h12 = shannon_entropy(marginal(p, MarginalSpec(shape, (1, 2))))
    h23 = shannon_entropy(marginal(p, MarginalSpec(shape, (2, 3))))
    h2 = shannon_entropy(marginal(p, MarginalSpec(shape, (2,))))
    return h12 + h23 - h2 - shannon_entropy(p)


def correlation_defect(p, shape) -> np.ndarray:
    """Matrix ``D[x1-1, x2-1] = P1(x1) P2(x2) - P(y(x1, x2))``."""
    shape = as_shape(shape)
    _require_arity(shape, 2)
    p = as_probs(p)
    check_dimension(p.size, shape)
    p1 = marginal(p, MarginalSpec(shape, (1,)))
    p2 = marginal(p, MarginalSpec(shape, (2,)))
    joint = _as_tensor(p, shape).T  # rows x1, columns x2
    return np.outer(p1, p2) - joint


def product_distribution(parts) -> np.ndarray:
    """Joint distribution ``P(y(x1..xn)) = prod_i P_i(x_i)``."""
    parts = [as_probs(q) for q in parts]
    if not parts:
        raise DomainError("product of an empty list of distributions")
    out = parts[0]
    for q in parts[1:]:
        # later axes vary slower
        out = np.kron(q, out)
    return out
