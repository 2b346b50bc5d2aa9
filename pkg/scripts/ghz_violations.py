"""Optimized MK and WWZB violations of noisy GHZ states.

For rho = v |GHZ_N><GHZ_N| + (1 - v) I / 2^N the optimal violation scales
linearly in the visibility v, so the distillability bands are crossed at
v = 2^(-(N-1)/2) (no conclusion -> some) and v = 2^(-1/2) (some -> full).
The script prints the optimized value and the resulting degree.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

import numpy as np

from bellkey.multiparty import distillability_classify, ghz_state, optimize_settings, quantum_max


@dataclass
class NoisyGhzConfig:
    sizes: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    visibilities: list[float] = field(default_factory=lambda: [1.0, 0.9, 0.75, 0.6, 0.45])
    functional: str = "mk"
    seed: int = 0


def noisy_ghz(n: int, v: float) -> np.ndarray:
    d = 2**n
    return v * ghz_state(n).density_matrix() + (1 - v) * np.eye(d) / d


def run(cfg: NoisyGhzConfig) -> None:
    print(f"functional={cfg.functional} seed={cfg.seed}")
    print(f"{'N':>2} {'v':>5} {'value':>10} {'v * max':>10}  degree")
    for n in cfg.sizes:
        for v in cfg.visibilities:
            _, value = optimize_settings(noisy_ghz(n, v), cfg.functional, cfg.seed)
            degree = distillability_classify(n, value).degree.value
            print(f"{n:2d} {v:5.2f} {value:10.6f} {v * quantum_max(n):10.6f}  {degree}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--functional", choices=("mk", "wwzb"), default="mk")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=5)
    args = p.parse_args()
    run(NoisyGhzConfig(sizes=list(range(2, args.max_n + 1)), functional=args.functional, seed=args.seed))


if __name__ == "__main__":
    main()
