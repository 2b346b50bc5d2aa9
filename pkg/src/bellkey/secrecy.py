"""Information shared by Alice, Bob and Eve, and the one-way key criterion.

All informations are in bits. Alice and Bob measure in the x basis; Eve
tries to learn one honest party's bit from her conditional states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlog1py, xlogy

from bellkey.attack import AttackParams, Variant, check_variant, eve_conditional_states
from bellkey.chsh import BOUNDARY_BAND, attack_chsh
from bellkey.linalg import SX, SY, SZ, hermitian_eigh, hermitize
from bellkey.optimize import OptimizerConfig, angles_to_unit_vectors, multistart_maximize

_LN2 = math.log(2)
_X_TOL = 1e-12
_TRACE_TOL = 1e-10

ACCESSIBLE_INFO_OPTIMIZER = OptimizerConfig(n_starts=16, maxiter=500, xatol=1e-9)
ACCESSIBLE_INFO_OPTIMIZER_4D = OptimizerConfig(n_starts=8, maxiter=1000, xatol=1e-9, restarts=1)


def binary_mutual_info(x: float) -> float:
    """Mutual information of a binary symmetric channel with correlation ``x``.

    Equals ``1 - h((1 - x)/2)``; written with ``log1p`` so that small ``x``
    keeps full relative precision.
    """
    x = float(x)
    if not abs(x) <= 1 + _X_TOL:
        raise ValueError(f"correlation {x!r} outside [-1, 1]")
    x = min(1.0, abs(x))
    return float((xlog1py(1 + x, x) + xlog1py(1 - x, -x)) / (2 * _LN2))


def mutual_information(joint) -> float:
    """Mutual information in bits of a joint probability table."""
    p = np.asarray(joint, dtype=float)
    if np.any(p < -_TRACE_TOL) or abs(p.sum() - 1) > _TRACE_TOL:
        raise ValueError("joint table must be a probability distribution")
    p = np.clip(p, 0.0, None)
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = xlogy(p, p) - xlogy(p, px) - xlogy(p, py)
    return max(0.0, float(terms.sum() / _LN2))


def info_ab(params: AttackParams) -> float:
    return binary_mutual_info(math.cos(params.alpha - params.beta))


def info_ae(params: AttackParams) -> float:
    return binary_mutual_info(math.sin(params.alpha + params.beta))


def info_be(params: AttackParams) -> float:
    a, b = params.alpha, params.beta
    return binary_mutual_info(math.sin(a) * math.cos(a) + math.sin(b) * math.cos(b))


def info_ab_from_table(params: AttackParams, variant: Variant = "one-qubit") -> float:
    """I(A:B) recomputed from the norms of Eve's conditional states."""
    return mutual_information(eve_conditional_states(params, variant).joint_table())


def _check_ensemble(sigma0, sigma1) -> tuple[np.ndarray, np.ndarray]:
    s0, s1 = hermitize(sigma0), hermitize(sigma1)
    if s0.shape != s1.shape:
        raise ValueError("ensemble members must have the same dimension")
    total = np.trace(s0).real + np.trace(s1).real
    if abs(total - 1) > _TRACE_TOL:
        raise ValueError(f"ensemble traces must sum to 1, got {total!r}")
    return s0, s1


def _binary_channel_info(s0: np.ndarray, s1: np.ndarray, projectors: np.ndarray) -> np.ndarray:
    """Mutual information for a batch of two-outcome measurements ``{P, 1 - P}``."""
    q0 = np.einsum("mij,ji->m", projectors, s0).real
    q1 = np.einsum("mij,ji->m", projectors, s1).real
    t0, t1 = np.trace(s0).real, np.trace(s1).real
    joint = np.stack([np.stack([q0, t0 - q0], -1), np.stack([q1, t1 - q1], -1)], axis=1)
    joint = np.clip(joint, 0.0, None)
    px = joint.sum(axis=2, keepdims=True)
    py = joint.sum(axis=1, keepdims=True)
    terms = xlogy(joint, joint) - xlogy(joint, px) - xlogy(joint, py)
    return np.clip(terms.sum(axis=(1, 2)) / _LN2, 0.0, None)


def helstrom_info(sigma0, sigma1) -> float:
    """Information delivered by the minimum-error (Helstrom) measurement.

    ``sigma0``, ``sigma1`` carry their priors as traces. The measurement
    projects onto the positive eigenspace of ``sigma0 - sigma1``.
    """
    s0, s1 = _check_ensemble(sigma0, sigma1)
    w, v = hermitian_eigh(s0 - s1)
    pos = v[:, w > 0]
    proj = pos @ pos.conj().T
    return float(_binary_channel_info(s0, s1, proj[None])[0])


def _qubit_projectors(x: np.ndarray) -> np.ndarray:
    n = angles_to_unit_vectors(x)[:, 0]
    return 0.5 * (np.eye(2) + n[:, 0, None, None] * SX + n[:, 1, None, None] * SY + n[:, 2, None, None] * SZ)


def _rank1_projectors(x: np.ndarray, dim: int) -> np.ndarray:
    v = x[:, :dim] + 1j * x[:, dim:]
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    return np.einsum("mi,mj->mij", v, v.conj())


def _rank2_projectors(x: np.ndarray, dim: int) -> np.ndarray:
    z = (x[:, : 2 * dim] + 1j * x[:, 2 * dim :]).reshape(-1, dim, 2)
    u = z[:, :, 0] / np.linalg.norm(z[:, :, 0], axis=1, keepdims=True)
    w = z[:, :, 1] - np.einsum("mi,mi->m", u.conj(), z[:, :, 1])[:, None] * u
    w = w / np.linalg.norm(w, axis=1, keepdims=True)
    return np.einsum("mi,mj->mij", u, u.conj()) + np.einsum("mi,mj->mij", w, w.conj())


def accessible_info(sigma0, sigma1, seed: int = 0) -> float:
    """Largest mutual information over two-outcome projective measurements.

    Found by seeded multi-start simplex search. On a qubit the projector is
    ``(1 + n.sigma)/2`` with ``n`` given by two angles; on a 4-dimensional
    space both rank-1 and rank-2 projectors are searched (rank 3 repeats
    rank 1 with the outcomes relabelled).
    """
    s0, s1 = _check_ensemble(sigma0, sigma1)
    dim = s0.shape[0]
    if dim == 2:
        res = multistart_maximize(
            lambda x: _binary_channel_info(s0, s1, _qubit_projectors(x)),
            lambda rng: np.array([np.arccos(rng.uniform(-1, 1)), rng.uniform(0, 2 * np.pi)]),
            seed,
            ACCESSIBLE_INFO_OPTIMIZER,
        )
        return res.value
    if dim == 4:
        rank1 = multistart_maximize(
            lambda x: _binary_channel_info(s0, s1, _rank1_projectors(x, dim)),
            lambda rng: rng.normal(size=2 * dim),
            seed,
            ACCESSIBLE_INFO_OPTIMIZER_4D,
        )
        rank2 = multistart_maximize(
            lambda x: _binary_channel_info(s0, s1, _rank2_projectors(x, dim)),
            lambda rng: rng.normal(size=4 * dim),
            seed + 1,
            ACCESSIBLE_INFO_OPTIMIZER_4D,
        )
        return max(rank1.value, rank2.value)
    raise ValueError(f"accessible_info supports dimensions 2 and 4, got {dim}")


def eve_ensemble_for(params: AttackParams, variant: Variant, party: str) -> tuple[np.ndarray, np.ndarray]:
    """Eve's states conditioned on ``party``'s bit, weighted by their priors (1/2 each)."""
    rho_plus, rho_minus = eve_conditional_states(params, variant).conditional_states(party)
    return rho_plus / 2, rho_minus / 2


@dataclass(frozen=True)
class InfoTriple:
    iab: float
    iae: float
    ibe: float

    def __post_init__(self):
        for name in ("iab", "iae", "ibe"):
            v = getattr(self, name)
            if not -_X_TOL <= v <= 1 + _X_TOL:
                raise ValueError(f"{name}={v!r} outside [0, 1] bits")


@dataclass(frozen=True)
class CkVerdict:
    ck_holds: bool
    one_way_direct: bool
    reverse_ok: bool


def csiszar_korner(info: InfoTriple) -> CkVerdict:
    return CkVerdict(
        ck_holds=info.iab > min(info.iae, info.ibe),
        one_way_direct=info.iab > info.iae,
        reverse_ok=info.iab > info.ibe,
    )


def info_triple(params: AttackParams, variant: Variant = "one-qubit") -> InfoTriple:
    """Closed forms for the one-qubit attack; Helstrom measurements on Eve's two qubits otherwise."""
    check_variant(variant)
    if variant == "one-qubit":
        return InfoTriple(info_ab(params), info_ae(params), info_be(params))
    iae = helstrom_info(*eve_ensemble_for(params, variant, "A"))
    ibe = helstrom_info(*eve_ensemble_for(params, variant, "B"))
    return InfoTriple(info_ab(params), iae, ibe)


@dataclass(frozen=True)
class SecurityReport:
    params: AttackParams
    variant: str
    info: InfoTriple
    chsh: float
    one_way_direct: bool
    reverse_ok: bool
    ck_holds: bool
    equivalence_consistent: bool

    @property
    def violates(self) -> bool:
        return self.chsh > 1 + BOUNDARY_BAND

    @property
    def in_boundary_band(self) -> bool:
        return abs(self.chsh - 1) < BOUNDARY_BAND

    def key_condition(self) -> bool:
        """The information inequality that should coincide with CHSH violation.

        One-qubit attacks compare I(A:B) with the larger of Eve's informations;
        symmetric attacks with the smaller one, which equals the larger.
        """
        i = self.info
        if self.variant == "symmetric":
            return i.iab > min(i.iae, i.ibe)
        return i.iab > max(i.iae, i.ibe)

    def as_dict(self) -> dict:
        return {
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "variant": self.variant,
            "chsh": self.chsh,
            "iab": self.info.iab,
            "iae": self.info.iae,
            "ibe": self.info.ibe,
            "violates": self.violates,
            "one_way_direct": self.one_way_direct,
            "reverse_ok": self.reverse_ok,
            "ck_holds": self.ck_holds,
            "equivalence_consistent": self.equivalence_consistent,
        }


def security_report(params: AttackParams, variant: Variant = "one-qubit") -> SecurityReport:
    info = info_triple(params, variant)
    chsh = attack_chsh(params)
    verdict = csiszar_korner(info)
    report = SecurityReport(
        params=params,
        variant=variant,
        info=info,
        chsh=chsh,
        one_way_direct=verdict.one_way_direct,
        reverse_ok=verdict.reverse_ok,
        ck_holds=verdict.ck_holds,
        equivalence_consistent=True,
    )
    if report.in_boundary_band:
        return report
    consistent = report.key_condition() == report.violates
    return SecurityReport(**{**report.__dict__, "equivalence_consistent": consistent})
