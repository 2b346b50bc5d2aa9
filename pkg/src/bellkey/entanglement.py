"""Two-qubit entanglement diagnostics: PPT test, Bell-diagonal form, rank."""

from __future__ import annotations

import math

import numpy as np

from bellkey.linalg import check_density_matrix, hermitian_eigenvalues, hermitize, ket, partial_transpose

ENTANGLEMENT_TOL = 1e-10
BELL_OFFDIAG_TOL = 1e-10
RANK_TOL = 1e-10

# columns: Phi+, Phi-, Psi+, Psi-
BELL_BASIS = np.column_stack(
    [
        (ket("00") + ket("11")) / math.sqrt(2),
        (ket("00") - ket("11")) / math.sqrt(2),
        (ket("01") + ket("10")) / math.sqrt(2),
        (ket("01") - ket("10")) / math.sqrt(2),
    ]
)
BELL_LABELS = ("Phi+", "Phi-", "Psi+", "Psi-")


def _two_qubit(rho) -> np.ndarray:
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"two-qubit density matrix required, got shape {rho.shape}")
    return rho


def ppt_min_eigenvalue(rho) -> float:
    """Smallest eigenvalue of the partial transpose on Bob's qubit."""
    rho = _two_qubit(rho)
    return hermitian_eigenvalues(partial_transpose(rho, (2, 2), 1)).min


def is_entangled(rho) -> bool:
    # PPT is necessary and sufficient for separability of two qubits
    return ppt_min_eigenvalue(rho) < -ENTANGLEMENT_TOL


def bell_diagonal_check(rho) -> tuple[bool, np.ndarray]:
    """Whether ``rho`` is diagonal in the Bell basis, plus its Bell-basis diagonal.

    Weights are ordered (Phi+, Phi-, Psi+, Psi-) and are returned even when
    the state is not Bell-diagonal.
    """
    rho = _two_qubit(rho)
    m = BELL_BASIS.conj().T @ rho @ BELL_BASIS
    off = m - np.diag(np.diag(m))
    return bool(np.max(np.abs(off)) < BELL_OFFDIAG_TOL), np.diag(m).real.copy()


def numerical_rank(rho, tol: float = RANK_TOL) -> int:
    w = hermitian_eigenvalues(hermitize(rho)).eigenvalues
    return int(np.sum(w > tol))
