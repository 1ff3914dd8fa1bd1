"""Gibbs-like states ``exp(-beta H) / Tr exp(-beta H)`` and their thermodynamics.

Everything is dimensionless; temperature and inverse temperature are related
by ``T = 1 / beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .indexmap import MarginalSpec, as_shape, check_dimension
from .quantum import (
    STATE_TOL,
    as_square,
    artificial_reduce,
    as_density,
    mutual_quantum_information,
    von_neumann_entropy,
)


def as_hermitian(h, tol: float = STATE_TOL) -> np.ndarray:
    h = as_square(h)
    defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if defect > tol:
        raise DomainError(f"matrix is not Hermitian, defect {defect:.3g}")
    return (h + h.conj().T) / 2


def _boltzmann(h: np.ndarray, beta: float):
    """Eigenvectors, normalized weights and ``ln Z`` at inverse temperature beta."""
    lam, vecs = np.linalg.eigh(h)
    a = -beta * lam
    shift = a.max()
    e = np.exp(a - shift)
    total = e.sum()
    return vecs, e / total, shift + math.log(total)


def gibbs_state(h, beta: float) -> np.ndarray:
    """``exp(-beta H) / Tr exp(-beta H)``, evaluated in the eigenbasis of ``H``."""
    if not np.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta}")
    h = as_hermitian(h)
    vecs, w, _ = _boltzmann(h, beta)
    rho = (vecs * w) @ vecs.conj().T
    return (rho + rho.conj().T) / 2


def log_partition(h, temperature: float) -> float:
    """``ln Tr exp(-H / T)``; ``T`` may be negative but not zero."""
    if temperature == 0:
        raise DomainError("temperature T = 0 is not allowed")
    h = as_hermitian(h)
    return _boltzmann(h, 1.0 / temperature)[2]


@dataclass(frozen=True)
class ThermoReport:
    beta: float
    energy: float
    entropy: float
    free_energy: Optional[float]  # undefined at beta = 0
    log_partition: float
    mutual_information: Optional[float] = None


def thermo_report(h, beta: float, shape=None) -> ThermoReport:
    """Energy, entropy, free energy and ``ln Z`` of the Gibbs state at ``beta``.

    With a two-factor ``shape`` the report also carries the mutual information
    between the two artificial subsystems of the Gibbs state.
    """
    h = as_hermitian(h)
    rho = gibbs_state(h, beta)
    _, _, log_z = _boltzmann(h, beta)
    energy = float(np.real(np.trace(h @ rho)))
    entropy = von_neumann_entropy(rho)
    free = energy - entropy / beta if beta != 0 else None
    mutual = None
    if shape is not None:
        shape = check_dimension(h.shape[0], as_shape(shape))
        mutual = mutual_quantum_information(rho, shape)
    return ThermoReport(beta, energy, entropy, free, log_z, mutual)


def check_energy_entropy_inequality(rho, h, tol: float = STATE_TOL) -> float:
    """Slack of ``Tr(H rho) + S(rho) <= ln Tr exp(H)``.

    The slack equals the relative entropy of ``rho`` to ``exp(H)/Tr exp(H)``,
    so it is nonnegative and vanishes only at that state.
    """
    rho = as_density(rho, tol)
    h = as_hermitian(h, tol)
    if rho.shape != h.shape:
        raise DomainError(f"state is {rho.shape[0]}-dimensional, observable {h.shape[0]}")
    energy = float(np.real(np.trace(h @ rho)))
    return log_partition(h, -1.0) - energy - von_neumann_entropy(rho, tol)


def artificial_qubit_pair(rho) -> tuple[np.ndarray, np.ndarray]:
    """Both single-qubit reductions of a 4-level state under shape ``(2, 2)``.

    The first element traces out axis 2, the second traces out axis 1.
    """
    rho = as_density(rho)
    if rho.shape[0] != 4:
        raise DomainError(f"expected a 4-level state, got dimension {rho.shape[0]}")
    return (
        artificial_reduce(rho, MarginalSpec((2, 2), (1,))),
        artificial_reduce(rho, MarginalSpec((2, 2), (2,))),
    )
