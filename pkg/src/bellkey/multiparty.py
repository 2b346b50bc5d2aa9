"""N-qubit full-correlation Bell inequalities with two settings per site.

Every functional is normalized so that local hidden variables reach at most 1
and quantum states at most ``2**((N-1)/2)``. Setting strings ``k`` in
``{0,1}^N`` are indexed big-endian: party 1 is the most significant bit.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from bellkey.linalg import PAULIS, PureState, check_density_matrix
from bellkey.optimize import OptimizerConfig, angles_to_unit_vectors, multistart_maximize, sample_sphere_angles

Functional = Literal["mk", "wwzb"]
FUNCTIONALS = ("mk", "wwzb")

MAX_QUBITS = 6
MAX_EXHAUSTIVE_QUBITS = 4
_UNIT_TOL = 1e-12
_CEILING_TOL = 1e-9

_PAULI_STACK = np.stack(PAULIS)


def quantum_max(n: int) -> float:
    return 2.0 ** ((n - 1) / 2)


def full_distillability_threshold(n: int) -> float:
    return 2.0 ** ((n - 2) / 2)


@dataclass(frozen=True)
class PartySettings:
    """``vectors[j, s]`` is party j's Bloch direction for setting s in {0, 1}."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 3 or v.shape[1:] != (2, 3):
            raise ValueError(f"settings must have shape (N, 2, 3), got {v.shape}")
        if np.max(np.abs(np.linalg.norm(v, axis=2) - 1)) > _UNIT_TOL:
            raise ValueError("every setting must be a unit Bloch vector")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def num_parties(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def from_angles(cls, angles) -> "PartySettings":
        v = angles_to_unit_vectors(angles)
        v = v / np.linalg.norm(v, axis=-1, keepdims=True)
        return cls(v.reshape(-1, 2, 3))

    @classmethod
    def uniform(cls, n: int, first, second) -> "PartySettings":
        return cls(np.tile(np.array([first, second], dtype=float), (n, 1, 1)))


@dataclass(frozen=True)
class CorrelationTensor:
    """Full correlations ``E(k)``, flattened in big-endian order of ``k``."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        if self.n < 1 or v.size != 2**self.n:
            raise ValueError(f"{self.n} parties need {2**self.n} correlations, got {v.size}")
        if np.max(np.abs(v)) > 1 + 1e-10:
            raise ValueError("correlations must lie in [-1, 1]")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, k: tuple[int, ...]) -> float:
        return float(self.values[int("".join(str(b) for b in k), 2)])


class DistillabilityDegree(enum.Enum):
    NO_CONCLUSION = "NoConclusion"
    SOME_DISTILLABLE = "SomeDistillable"
    FULL_DISTILLABILITY = "FullDistillability"


@dataclass(frozen=True)
class DistillabilityResult:
    degree: DistillabilityDegree
    violation: float
    n: int


def ghz_state(n: int) -> PureState:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"GHZ state needs 1 <= N <= {MAX_QUBITS}, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return PureState(n, amps)


def _as_density(state) -> np.ndarray:
    if isinstance(state, PureState):
        return state.density_matrix()
    return check_density_matrix(state)


def _observables(vectors: np.ndarray) -> np.ndarray:
    """``vectors`` of shape (..., 3) -> ``n . sigma`` of shape (..., 2, 2)."""
    return np.einsum("...c,cij->...ij", vectors, _PAULI_STACK)


def _correlations_batch(rho: np.ndarray, n: int, vectors: np.ndarray) -> np.ndarray:
    """E(k) for a batch of settings ``vectors`` (m, N, 2, 3); returns (m, 2**N)."""
    ops = _observables(vectors)  # (m, N, 2 settings, row, col)
    m = ops.shape[0]
    rest = 2**n
    kk = 1
    x = np.broadcast_to(rho, (m,) + rho.shape)
    for j in range(n):
        rest //= 2
        # axes: batch, settings so far, row of party j, remaining rows, col of party j, remaining cols
        x = x.reshape(m, kk, 2, rest, 2, rest).transpose(0, 1, 3, 5, 2, 4).reshape(m, -1, 4)
        # Tr(rho O) pairs rho[a, b] with O[b, a]
        o = ops[:, j].transpose(0, 3, 2, 1).reshape(m, 4, 2)
        x = np.matmul(x, o).reshape(m, kk, rest, rest, 2).transpose(0, 1, 4, 2, 3)
        kk *= 2
    return x.reshape(m, 2**n).real


def correlation_tensor(state, settings: PartySettings) -> CorrelationTensor:
    rho = _as_density(state)
    n = int(round(math.log2(rho.shape[0])))
    if settings.num_parties != n:
        raise ValueError(f"settings for {settings.num_parties} parties given for an {n}-qubit state")
    e = _correlations_batch(rho, n, settings.vectors[None])[0]
    return CorrelationTensor(n, e)


def mermin_klyshko_coefficients(n: int) -> np.ndarray:
    """Coefficients ``c(k)`` of the MK polynomial ``B_N = sum_k c(k) prod_j A_j^{k_j}``.

    ``B_j = (B_{j-1}(A_j + A_j') + B_{j-1}'(A_j - A_j')) / 2`` with the primed
    polynomial obtained by exchanging primed and unprimed settings.
    """
    if n < 1:
        raise ValueError("need at least one party")
    b, bp = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    plus, minus = np.array([1.0, 1.0]), np.array([1.0, -1.0])
    for _ in range(1, n):
        b, bp = (
            0.5 * (np.kron(b, plus) + np.kron(bp, minus)),
            0.5 * (np.kron(bp, plus) - np.kron(b, minus)),
        )
    return b


def mermin_klyshko_value(tensor: CorrelationTensor) -> float:
    if tensor.n < 2:
        raise ValueError("Mermin-Klyshko functional needs N >= 2")
    return float(mermin_klyshko_coefficients(tensor.n) @ tensor.values)


def _hadamard(n: int) -> np.ndarray:
    h = np.array([[1.0]])
    for _ in range(n):
        h = np.kron(h, np.array([[1.0, 1.0], [1.0, -1.0]]))
    return h


def wwzb_max_fixed_settings(tensor: CorrelationTensor) -> float:
    """Best WWZB inequality for fixed correlations: ``2^-N sum_s |sum_k (-1)^{s.k} E(k)|``."""
    return float(np.sum(np.abs(_hadamard(tensor.n) @ tensor.values)) / 2**tensor.n)


def wwzb_exhaustive(tensor: CorrelationTensor) -> float:
    """Brute-force maximum over all ``2^(2^N)`` sign functions; N <= 4 only."""
    n = tensor.n
    if n > MAX_EXHAUSTIVE_QUBITS:
        raise ValueError(f"exhaustive WWZB scan is limited to N <= {MAX_EXHAUSTIVE_QUBITS}")
    size = 2**n
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=size)))
    # coefficient of E(k) in the inequality selected by sign function S
    coeffs = signs @ _hadamard(n) / size
    return float(np.max(coeffs @ tensor.values))


def _functional_batch(functional: str, n: int):
    if functional == "mk":
        c = mermin_klyshko_coefficients(n)
        return lambda e: e @ c
    if functional == "wwzb":
        h = _hadamard(n)
        return lambda e: np.sum(np.abs(e @ h), axis=1) / 2**n
    raise ValueError(f"unknown functional {functional!r}; expected one of {FUNCTIONALS}")


def functional_value(tensor: CorrelationTensor, functional: Functional) -> float:
    if functional == "mk":
        return mermin_klyshko_value(tensor)
    if functional == "wwzb":
        return wwzb_max_fixed_settings(tensor)
    raise ValueError(f"unknown functional {functional!r}; expected one of {FUNCTIONALS}")


def settings_optimizer(n: int) -> OptimizerConfig:
    return OptimizerConfig(n_starts=32 if n >= 4 else 16, maxiter=1500, xatol=1e-9, restarts=0)


def optimize_settings(
    state, functional: Functional = "mk", seed: int = 0, config: OptimizerConfig | None = None
) -> tuple[PartySettings, float]:
    """Maximize a Bell functional over the 4N setting angles."""
    rho = _as_density(state)
    n = int(round(math.log2(rho.shape[0])))
    if n < 2:
        raise ValueError("need at least two parties")
    value_of = _functional_batch(functional, n)

    def objective(x: np.ndarray) -> np.ndarray:
        vecs = angles_to_unit_vectors(x).reshape(x.shape[0], n, 2, 3)
        return value_of(_correlations_batch(rho, n, vecs))

    res = multistart_maximize(objective, sample_sphere_angles(2 * n), seed, config or settings_optimizer(n))
    settings = PartySettings.from_angles(res.x)
    # re-evaluate on the normalized settings so the value matches the returned settings
    value = functional_value(correlation_tensor(rho, settings), functional)
    return settings, value


def distillability_classify(n: int, violation: float) -> DistillabilityResult:
    """Map a violation to one of the three published bands.

    Band edges carry a 1e-9 slack so that an optimizer landing on the local
    bound (or a threshold) from rounding noise is not promoted.
    """
    if n < 2:
        raise ValueError("need at least two parties")
    if violation > quantum_max(n) + _CEILING_TOL:
        raise ValueError(f"violation {violation!r} exceeds the quantum maximum {quantum_max(n)!r} for N={n}")
    if violation <= 1 + _CEILING_TOL:
        degree = DistillabilityDegree.NO_CONCLUSION
    elif violation <= full_distillability_threshold(n) + _CEILING_TOL:
        degree = DistillabilityDegree.SOME_DISTILLABLE
    else:
        degree = DistillabilityDegree.FULL_DISTILLABILITY
    return DistillabilityResult(degree, float(violation), n)
