"""Tripartite states produced by Eve's attack on half of |Phi+>.

Alice keeps one qubit of ``(|00>+|11>)/sqrt(2)``; Eve couples Bob's qubit to
her own ancilla. Up to local unitaries the one-qubit attack is fixed by two
angles ``alpha, beta`` in ``[0, pi/2]``. Qubit order is always A, B, E (and
E1, E2 for the symmetric two-qubit attack).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from bellkey.linalg import I2, PureState, ket, partial_trace, tensor_product

Variant = Literal["one-qubit", "symmetric"]
VARIANTS: tuple[str, ...] = ("one-qubit", "symmetric")

_HALF_PI = math.pi / 2
_ANGLE_TOL = 1e-12

PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / math.sqrt(2)
X_BASIS = {"+": PLUS, "-": MINUS}
OUTCOMES = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class AttackParams:
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < -_ANGLE_TOL or v > _HALF_PI + _ANGLE_TOL:
                raise ValueError(f"{name}={v!r} outside [0, pi/2]")
            object.__setattr__(self, name, min(max(v, 0.0), _HALF_PI))

    def swapped(self) -> "AttackParams":
        return AttackParams(self.beta, self.alpha)


def check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown attack variant {variant!r}; expected one of {VARIANTS}")
    return variant


@dataclass(frozen=True)
class EveEnsemble:
    """Eve's unnormalized conditional states keyed by (Alice, Bob) x-basis outcome.

    ``states['+-']`` is Eve's state when Alice gets ``+`` and Bob ``-``; its
    squared norm is the probability of that joint outcome.
    """

    states: dict[str, np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.states["++"])

    @property
    def probabilities(self) -> dict[str, float]:
        return {k: float(np.vdot(v, v).real) for k, v in self.states.items()}

    def joint_table(self) -> np.ndarray:
        """2x2 table ``p[a, b]`` with index 0 for ``+`` and 1 for ``-``."""
        p = self.probabilities
        return np.array([[p["++"], p["+-"]], [p["-+"], p["--"]]])

    def conditional_states(self, party: Literal["A", "B"]) -> tuple[np.ndarray, np.ndarray]:
        """Eve's normalized states given one honest party's outcome (+, -).

        Each is ``2 * sum`` of the projectors over the other party's outcome,
        which has unit trace because every marginal outcome has probability 1/2.
        """
        out = []
        for i in "+-":
            keys = (i + "+", i + "-") if party == "A" else ("+" + i, "-" + i)
            out.append(2 * sum(np.outer(self.states[k], self.states[k].conj()) for k in keys))
        return out[0], out[1]


def attack_isometry(params: AttackParams) -> np.ndarray:
    """4x2 isometry ``|b'> -> U_BE |b'>|E>`` in the B,E basis."""
    a, b = params.alpha, params.beta
    v = np.zeros((4, 2), dtype=complex)
    v[:, 0] = math.sin(a) * ket("01") + math.cos(a) * ket("10")
    v[:, 1] = math.cos(b) * ket("00") + math.sin(b) * ket("11")
    return v


def one_qubit_attack_state(params: AttackParams) -> PureState:
    a, b = params.alpha, params.beta
    amps = np.zeros(8, dtype=complex)
    amps[0b001] = math.sin(a)
    amps[0b010] = math.cos(a)
    amps[0b100] = math.cos(b)
    amps[0b111] = math.sin(b)
    return PureState(3, amps / math.sqrt(2))


def attack_state_via_isometry(params: AttackParams) -> PureState:
    """Same state as :func:`one_qubit_attack_state`, built as ``(1 x V)|Phi+>``."""
    phi_plus = (ket("00") + ket("11")) / math.sqrt(2)
    op = tensor_product(I2, attack_isometry(params))
    return PureState(3, op @ phi_plus)


def _eve_one_qubit(params: AttackParams) -> dict[str, np.ndarray]:
    a, b = params.alpha, params.beta
    ca, cb, sa, sb = math.cos(a), math.cos(b), math.sin(a), math.sin(b)
    k = 1 / (2 * math.sqrt(2))
    return {
        "++": k * np.array([ca + cb, sa + sb], dtype=complex),
        "+-": k * np.array([-ca + cb, sa - sb], dtype=complex),
        "-+": k * np.array([ca - cb, sa - sb], dtype=complex),
        "--": k * np.array([-(ca + cb), sa + sb], dtype=complex),
    }


# second ancilla records whether Alice's and Bob's symbols coincide
_PARITY_FLAG = {"++": PLUS, "--": PLUS, "+-": MINUS, "-+": MINUS}


def eve_conditional_states(params: AttackParams, variant: Variant = "one-qubit") -> EveEnsemble:
    check_variant(variant)
    states = _eve_one_qubit(params)
    if variant == "symmetric":
        states = {k: np.outer(v, _PARITY_FLAG[k]).ravel() for k, v in states.items()}
    return EveEnsemble(states)


def symmetric_attack_state(params: AttackParams) -> PureState:
    """Four-qubit state ``sum_ij |i>_A |j>_B (x) e_ij`` of the symmetric attack."""
    ens = eve_conditional_states(params, "symmetric")
    amps = sum(
        tensor_product(X_BASIS[k[0]], X_BASIS[k[1]], ens.states[k]) for k in OUTCOMES
    )
    return PureState(4, amps)


def attack_state(params: AttackParams, variant: Variant = "one-qubit") -> PureState:
    check_variant(variant)
    if variant == "symmetric":
        return symmetric_attack_state(params)
    return one_qubit_attack_state(params)


def alice_bob_state(params: AttackParams, variant: Variant = "one-qubit") -> np.ndarray:
    """rho_AB after tracing out Eve."""
    psi = attack_state(params, variant)
    dims = (2,) * psi.num_qubits
    return partial_trace(psi.density_matrix(), dims, keep=(0, 1))
