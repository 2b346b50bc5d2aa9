"""Dense complex linear algebra on small multi-qubit spaces.

Conventions
-----------
- Subsystem 0 is the leftmost tensor factor.
- Basis index ``k`` of a ``2**N`` vector is the big-endian bit string, so the
  bit of subsystem 0 is the most significant one (``|001>`` is index 1).
- Pauli matrices follow ``sigma_1 = X``, ``sigma_2 = Y``, ``sigma_3 = Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

Array = np.ndarray

HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


def as_cmatrix(m) -> Array:
    """Return ``m`` as a finite 2-D complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized state vector of ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: Array

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        if amps.size != 2**self.num_qubits:
            raise ValueError(
                f"{self.num_qubits} qubits need {2**self.num_qubits} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.size)))
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    def density_matrix(self) -> Array:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: Array  # descending

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[0])


def tensor_product(*ops) -> Array:
    """Kronecker product of matrices (or column vectors), leftmost factor first."""
    if not ops:
        raise ValueError("need at least one factor")
    arrs = [np.asarray(op, dtype=complex) for op in ops]
    if all(a.ndim == 1 for a in arrs):
        # np.kron is slow on tiny vectors
        return reduce(lambda u, v: np.outer(u, v).ravel(), arrs)
    return reduce(np.kron, arrs)


def _check_dims(rho: Array, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive: {dims}")
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"matrix of shape {rho.shape} does not match subsystem dims {dims}")
    return dims


def partial_trace(rho, dims: Sequence[int], keep: Sequence[int]) -> Array:
    """Trace out every subsystem not listed in ``keep``.

    The kept subsystems stay in their original order. An empty ``keep``
    returns the full trace as a 1x1 matrix.
    """
    rho = as_cmatrix(rho)
    dims = _check_dims(rho, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    traced = [i for i in range(n) if i not in keep]

    t = rho.reshape(dims + dims)
    # trace from the highest index down so remaining axis numbers stay valid
    for count, i in enumerate(sorted(traced, reverse=True)):
        m = n - count
        t = np.trace(t, axis1=i, axis2=i + m)
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)


def partial_transpose(rho, dims: Sequence[int], subsystem: int) -> Array:
    """Transpose the indices of one subsystem; a pure index permutation."""
    rho = as_cmatrix(rho)
    dims = _check_dims(rho, dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise ValueError(f"subsystem {subsystem} out of range for {n} subsystems")
    t = rho.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[subsystem + n] = axes[subsystem + n], axes[subsystem]
    return t.transpose(axes).reshape(rho.shape)


def hermitize(m, tol: float = HERMITIAN_TOL) -> Array:
    """Check Hermiticity to ``tol`` and return the symmetrized matrix."""
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"square matrix required, got {m.shape}")
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return (m + m.conj().T) / 2


def hermitian_eigh(m) -> tuple[Array, Array]:
    """Eigenvalues (descending) and matching eigenvector columns."""
    h = hermitize(m)
    w, v = np.linalg.eigh(h)
    return w[::-1].copy(), v[:, ::-1].copy()


def hermitian_eigenvalues(m) -> HermitianSpectrum:
    w, _ = hermitian_eigh(m)
    return HermitianSpectrum(w)


def singular_values(m) -> Array:
    """Descending singular values of a real 3x3 matrix."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return np.linalg.svd(m, compute_uv=False)


def check_density_matrix(rho, tol: float = HERMITIAN_TOL) -> Array:
    """Validate unit trace, Hermiticity and positivity; return the symmetrized matrix."""
    h = hermitize(rho, tol)
    tr = np.trace(h).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix must have unit trace, got {tr!r}")
    lo = np.linalg.eigvalsh(h)[0]
    if lo < -tol:
        raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {lo:.3e})")
    return h


def ket(bits: str) -> Array:
    """Computational-basis vector for a bit string such as ``'010'``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def bloch_operator(n) -> Array:
    """``n . sigma`` for a real 3-vector ``n``."""
    n = np.asarray(n, dtype=float)
    return n[0] * SX + n[1] * SY + n[2] * SZ


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> Array:
    """Ginibre-distributed density matrix, for tests and oracle runs."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(dim: int, rng: np.random.Generator) -> Array:
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
