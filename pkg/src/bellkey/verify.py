"""Cross-checks of every closed form against an independent numeric route.

Each suite returns the worst deviation seen and the tolerance it must stay
under. Sample sizes are kept small so that ``bellkey verify`` finishes in
well under a minute; the test suite runs the same comparisons at full size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from bellkey.attack import AttackParams, alice_bob_state
from bellkey.chsh import attack_chsh, attack_correlation_matrix, chsh_max, chsh_optimize, correlation_matrix
from bellkey.linalg import random_density_matrix
from bellkey.multiparty import CorrelationTensor, wwzb_exhaustive, wwzb_max_fixed_settings
from bellkey.secrecy import accessible_info, eve_ensemble_for, info_ae, info_be, security_report


@dataclass(frozen=True)
class Check:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation < self.tolerance)


def _random_params(rng: np.random.Generator) -> AttackParams:
    a, b = rng.uniform(0, math.pi / 2, size=2)
    return AttackParams(float(a), float(b))


def check_correlation_matrix(seed: int, samples: int = 200) -> Check:
    rng = np.random.default_rng([seed, 1])
    worst = 0.0
    for _ in range(samples):
        p = _random_params(rng)
        r = correlation_matrix(alice_bob_state(p)).r
        worst = max(worst, float(np.max(np.abs(r - attack_correlation_matrix(p).r))))
    return Check("correlation matrix: trace formula vs closed form", worst, 1e-12)


def check_chsh_optimizer(seed: int, samples: int = 8) -> Check:
    rng = np.random.default_rng([seed, 2])
    worst = 0.0
    for i in range(samples):
        for r in (
            attack_correlation_matrix(_random_params(rng)),
            correlation_matrix(random_density_matrix(4, rng)),
        ):
            worst = max(worst, abs(chsh_max(r).value - chsh_optimize(r, seed=seed + i).value))
    return Check("CHSH: singular-value closed form vs settings search", worst, 1e-6)


def check_eve_information(seed: int, grid: int = 5) -> Check:
    angles = np.linspace(0.05, math.pi / 2 - 0.05, grid)
    worst = 0.0
    for a in angles:
        for b in angles:
            p = AttackParams(float(a), float(b))
            worst = max(
                worst,
                abs(accessible_info(*eve_ensemble_for(p, "one-qubit", "A"), seed=seed) - info_ae(p)),
                abs(accessible_info(*eve_ensemble_for(p, "one-qubit", "B"), seed=seed) - info_be(p)),
            )
    return Check("Eve's information: closed forms vs measurement search", worst, 1e-6)


def check_wwzb(seed: int, n3: int = 20, n4: int = 2) -> Check:
    rng = np.random.default_rng([seed, 3])
    worst = 0.0
    for n, count in ((3, n3), (4, n4)):
        for _ in range(count):
            t = CorrelationTensor(n, rng.uniform(-1, 1, size=2**n))
            worst = max(worst, abs(wwzb_max_fixed_settings(t) - wwzb_exhaustive(t)))
    return Check("WWZB: Fourier closed form vs sign-function scan", worst, 1e-12)


def check_equivalence(seed: int, grid: int = 61) -> Check:
    """Fraction of grid points where Bell violation and the key condition disagree."""
    angles = np.linspace(0.0, math.pi / 2, grid)
    bad = total = 0
    for variant in ("one-qubit", "symmetric"):
        for a in angles:
            for b in angles:
                r = security_report(AttackParams(float(a), float(b)), variant)
                total += 1
                bad += not r.equivalence_consistent
    return Check("Bell violation <=> key condition (fraction violated)", bad / total, 1e-12)


def check_chsh_region(seed: int, samples: int = 2000) -> Check:
    from bellkey.chsh import violates_chsh

    rng = np.random.default_rng([seed, 4])
    bad = 0
    for _ in range(samples):
        p = _random_params(rng)
        b = attack_chsh(p)
        if abs(b - 1) >= 1e-9:
            bad += violates_chsh(p) != (b > 1)
    return Check("violation region predicate vs closed-form CHSH (fraction)", bad / samples, 1e-12)


def run_all(seed: int = 0) -> list[Check]:
    return [
        check_correlation_matrix(seed),
        check_chsh_optimizer(seed),
        check_chsh_region(seed),
        check_eve_information(seed),
        check_wwzb(seed),
        check_equivalence(seed),
    ]
