"""CHSH violation of two-qubit states, normalized so the local bound is 1.

The closed form uses the two largest singular values of the Pauli
correlation matrix; :func:`chsh_optimize` searches the measurement settings
directly and serves as an independent check of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from bellkey.attack import AttackParams
from bellkey.linalg import PAULIS, check_density_matrix, singular_values
from bellkey.optimize import (
    OptimizerConfig,
    angles_to_unit_vectors,
    multistart_maximize,
    sample_sphere_angles,
)

TSIRELSON = math.sqrt(2)
BOUNDARY_BAND = 1e-9
_UNIT_TOL = 1e-12
_CORR_TOL = 1e-10

CHSH_OPTIMIZER = OptimizerConfig(n_starts=16, maxiter=1000, xatol=1e-10)


@dataclass(frozen=True)
class CorrelationMatrix:
    """``r[i, j] = Tr(sigma_i x sigma_j rho)`` with i, j over x, y, z."""

    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.shape != (3, 3):
            raise ValueError(f"correlation matrix must be 3x3, got {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValueError("correlation matrix entries must be finite")
        if np.max(np.abs(r)) > 1 + _CORR_TOL:
            raise ValueError("correlation matrix entries must lie in [-1, 1]")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @property
    def xx(self) -> float:
        return float(self.r[0, 0])

    @property
    def yy(self) -> float:
        return float(self.r[1, 1])

    @property
    def zz(self) -> float:
        return float(self.r[2, 2])


@dataclass(frozen=True)
class ChshSettings:
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            v = np.array(getattr(self, name), dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1) > _UNIT_TOL:
                raise ValueError(f"setting {name} must be a unit 3-vector")
            object.__setattr__(self, name, v)

    @classmethod
    def from_angles(cls, angles) -> "ChshSettings":
        v = angles_to_unit_vectors(angles)
        # renormalize to absorb the ~1e-16 error of sin/cos products
        v = v / np.linalg.norm(v, axis=1, keepdims=True)
        return cls(*v)


@dataclass(frozen=True)
class ChshResult:
    value: float
    settings: ChshSettings | None = field(default=None, compare=False)

    @property
    def violates(self) -> bool:
        return self.value > 1 + BOUNDARY_BAND


def correlation_matrix(rho) -> CorrelationMatrix:
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"two-qubit density matrix required, got shape {rho.shape}")
    r = np.empty((3, 3))
    for i, si in enumerate(PAULIS):
        for j, sj in enumerate(PAULIS):
            r[i, j] = np.trace(np.kron(si, sj) @ rho).real
    return CorrelationMatrix(r)


def chsh_max(r: CorrelationMatrix) -> ChshResult:
    s = singular_values(r.r)
    return ChshResult(float(math.sqrt(s[0] ** 2 + s[1] ** 2)))


def chsh_value(r: CorrelationMatrix, s: ChshSettings) -> float:
    m = r.r
    return float((s.a @ m @ (s.b + s.b_prime) + s.a_prime @ m @ (s.b - s.b_prime)) / 2)


def _chsh_batch(m: np.ndarray, angles: np.ndarray) -> np.ndarray:
    v = angles_to_unit_vectors(angles)
    a, ap, b, bp = v[:, 0], v[:, 1], v[:, 2], v[:, 3]
    return (np.einsum("si,ij,sj->s", a, m, b + bp) + np.einsum("si,ij,sj->s", ap, m, b - bp)) / 2


def chsh_optimize(r: CorrelationMatrix, seed: int = 0, config: OptimizerConfig | None = None) -> ChshResult:
    """Maximize the CHSH value over the 8 setting angles by multi-start simplex search."""
    m = r.r
    res = multistart_maximize(
        lambda x: _chsh_batch(m, x), sample_sphere_angles(4), seed, config or CHSH_OPTIMIZER
    )
    return ChshResult(res.value, ChshSettings.from_angles(res.x))


def attack_correlation_matrix(params: AttackParams) -> CorrelationMatrix:
    d = math.cos(params.alpha - params.beta)
    s = math.cos(params.alpha + params.beta)
    return CorrelationMatrix(np.diag([d, s, -s * d]))


def attack_chsh(params: AttackParams) -> float:
    """Closed-form violation on the attack family: ``sqrt(R_xx^2 + R_yy^2)``."""
    return math.hypot(math.cos(params.alpha - params.beta), math.cos(params.alpha + params.beta))


def violates_chsh(params: AttackParams) -> bool:
    """Region test: both angles strictly below pi/4, or both strictly above.

    Points with either angle exactly at pi/4 sit on the boundary where the
    violation equals 1 and count as non-violating.
    """
    q = math.pi / 4
    a, b = params.alpha, params.beta
    return (a < q and b < q) or (a > q and b > q)
