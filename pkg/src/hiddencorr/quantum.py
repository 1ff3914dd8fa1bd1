"""Density matrices of a single qudit viewed as several artificial qudits.

Matrices are plain complex ``numpy`` arrays. Row/column index ``y - 1`` is
split into virtual coordinates with the same mixed-radix map as
:mod:`hiddencorr.indexmap` (first axis fastest), so an ``N x N`` matrix with
shape ``(X1, ..., Xn)`` is handled as a tensor of shape
``(Xn, ..., X1, Xn, ..., X1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .classical import as_probs
from .errors import DomainError, InvalidStateError
from .indexmap import FactorShape, MarginalSpec, as_shape, check_dimension

STATE_TOL = 1e-9
PPT_CONCLUSIVE_SHAPES = {(2, 2), (2, 3), (3, 2)}


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    tol: float = STATE_TOL

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_defect <= self.tol

    @property
    def unit_trace(self) -> bool:
        return self.trace_defect <= self.tol

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def __bool__(self):
        return self.ok

    def failures(self) -> list[tuple[str, float]]:
        """``(field, defect)`` pairs for every violated invariant."""
        out = []
        if not self.hermitian:
            out.append(("hermiticity", self.hermiticity_defect))
        if not self.unit_trace:
            out.append(("trace", self.trace_defect))
        if not self.positive:
            out.append(("min_eigenvalue", -self.min_eigenvalue))
        return out


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns


def as_square(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {rho.shape}")
    return rho


def validate(rho, tol: float = STATE_TOL) -> ValidationReport:
    """Measure how far ``rho`` is from being a density matrix."""
    rho = as_square(rho)
    herm = float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0
    trace_defect = float(abs(np.trace(rho) - 1.0))
    hpart = (rho + rho.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(hpart)[0])
    return ValidationReport(herm, trace_defect, min_eig, tol)


def as_density(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array, raising if it is not a valid state."""
    rho = as_square(rho)
    report = validate(rho, tol)
    if not report:
        field, defect = report.failures()[0]
        raise InvalidStateError(f"{field} defect {defect:.3g} exceeds {tol:g}")
    return rho


def spectrum(h) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending."""
    h = as_square(h)
    w, v = np.linalg.eigh(h)
    return Spectrum(w[::-1], v[:, ::-1])


def _entropy_of_spectrum(w: np.ndarray, tol: float) -> float:
    if w.min() < -tol:
        raise InvalidStateError(f"negative eigenvalue {w.min():.3g}")
    w = np.clip(w, 0.0, 1.0)
    w = w[w > 1e-15]
    return float(max(-np.sum(w * np.log(w)), 0.0))


def von_neumann_entropy(rho, tol: float = STATE_TOL) -> float:
    """``-Tr rho ln rho`` in nats, evaluated on the spectrum."""
    rho = as_density(rho, tol)
    return _entropy_of_spectrum(np.linalg.eigvalsh(rho), tol)


def _tensor(rho: np.ndarray, shape: FactorShape) -> np.ndarray:
    rev = shape.factors[::-1]
    return rho.reshape(rev + rev)


def artificial_reduce(rho, spec: MarginalSpec, tol: float = STATE_TOL) -> np.ndarray:
    """Partial trace over the axes not kept by ``spec``."""
    rho = as_density(rho, tol)
    shape = check_dimension(rho.shape[0], spec.shape)
    n = shape.n
    t = _tensor(rho, shape)
    # tensor position of axis a: n - a for rows, 2n - a for columns
    row = list(range(n))
    col = list(range(n, 2 * n))
    for a in spec.drop_axes:
        col[n - a] = row[n - a]
    keep_pos = sorted(n - a for a in spec.keep_axes)
    out_idx = [row[p] for p in keep_pos] + [col[p] for p in keep_pos]
    reduced = np.einsum(t, row + col, out_idx)
    d = spec.kept_shape.dimension
    return reduced.reshape(d, d)


def tensor_product(parts) -> np.ndarray:
    """Product state with the first factor as axis 1 (fastest index)."""
    parts = [as_density(r) for r in parts]
    if not parts:
        raise DomainError("product of an empty list of states")
    out = parts[0]
    for r in parts[1:]:
        out = np.kron(r, out)
    return out


def _require_arity(shape: FactorShape, n: int) -> None:
    if shape.n != n:
        raise DomainError(f"shape must have exactly {n} factors, got {shape.n}")


def _entropy_after(rho, shape, keep, tol) -> float:
    return von_neumann_entropy(artificial_reduce(rho, MarginalSpec(shape, keep), tol), tol)


def mutual_quantum_information(rho, shape, tol: float = STATE_TOL) -> float:
    """``S(1) + S(2) - S(1,2)`` over a two-factor shape."""
    shape = as_shape(shape)
    _require_arity(shape, 2)
    rho = as_density(rho, tol)
    check_dimension(rho.shape[0], shape)
    return (
        _entropy_after(rho, shape, (1,), tol)
        + _entropy_after(rho, shape, (2,), tol)
        - von_neumann_entropy(rho, tol)
    )


def conditional_quantum_information(rho, shape, tol: float = STATE_TOL) -> float:
    """``S(1,2) + S(2,3) - S(2) - S(1,2,3)`` over a three-factor shape."""
    shape = as_shape(shape)
    _require_arity(shape, 3)
    rho = as_density(rho, tol)
    check_dimension(rho.shape[0], shape)
    return (
        _entropy_after(rho, shape, (1, 2), tol)
        + _entropy_after(rho, shape, (2, 3), tol)
        - _entropy_after(rho, shape, (2,), tol)
        - von_neumann_entropy(rho, tol)
    )


def correlation_defect_matrix(rho, shape) -> np.ndarray:
    """``rho - rho(1) (x) rho(2)`` where ``rho(i)`` are the single-axis reductions."""
    shape = as_shape(shape)
    _require_arity(shape, 2)
    rho = as_density(rho)
    check_dimension(rho.shape[0], shape)
    r1 = artificial_reduce(rho, MarginalSpec(shape, (1,)))
    r2 = artificial_reduce(rho, MarginalSpec(shape, (2,)))
    return rho - tensor_product([r1, r2])


def separable_mixture(weights, pairs) -> np.ndarray:
    """Convex combination ``sum_k p_k rho1_k (x) rho2_k``."""
    weights = as_probs(weights)
    pairs = list(pairs)
    if len(pairs) != weights.size:
        raise DomainError(f"{weights.size} weights for {len(pairs)} state pairs")
    out = None
    for p, (r1, r2) in zip(weights, pairs):
        term = p * tensor_product([r1, r2])
        out = term if out is None else out + term
    return out


def partial_transpose(rho, shape, axis: int) -> np.ndarray:
    """Transpose the row/column indices belonging to one axis of a bipartition."""
    shape = as_shape(shape)
    _require_arity(shape, 2)
    if axis not in (1, 2):
        raise DomainError(f"axis must be 1 or 2, got {axis}")
    rho = as_square(rho)
    check_dimension(rho.shape[0], shape)
    t = _tensor(rho, shape)
    t = np.swapaxes(t, 2 - axis, 4 - axis)
    return t.reshape(rho.shape)


@dataclass(frozen=True)
class PPTVerdict:
    min_pt_eigenvalue: float
    ppt: bool
    conclusive: bool

    @property
    def verdict(self) -> str:
        if not self.ppt:
            return "entangled"
        return "separable" if self.conclusive else "inconclusive"


def is_ppt(rho, shape, tol: float = STATE_TOL) -> PPTVerdict:
    """Peres-Horodecki test on the artificial bipartition ``shape``.

    A negative partial-transpose eigenvalue certifies entanglement for any
    shape; a positive partial transpose implies separability only for
    2x2 and 2x3 splits.
    """
    shape = as_shape(shape)
    _require_arity(shape, 2)
    rho = as_density(rho, tol)
    pt = partial_transpose(rho, shape, 2)
    lam = float(np.linalg.eigvalsh(pt)[0])
    ppt = lam >= -tol
    conclusive = (not ppt) or shape.factors in PPT_CONCLUSIVE_SHAPES
    return PPTVerdict(lam, ppt, conclusive)


def embed_pad(rho, k: int, tol: float = STATE_TOL) -> np.ndarray:
    """Append ``k`` zero rows and columns."""
    if k < 0:
        raise DomainError(f"padding k must be >= 0, got {k}")
    rho = as_density(rho, tol)
    n = rho.shape[0]
    out = np.zeros((n + k, n + k), dtype=complex)
    out[:n, :n] = rho
    return out


def pure_state(psi) -> np.ndarray:
    """Projector onto the normalized vector ``psi``."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())
