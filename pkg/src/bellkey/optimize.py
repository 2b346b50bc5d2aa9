"""Seeded multi-start Nelder-Mead maximization, batched across starts.

One engine serves every numeric oracle in the package (CHSH settings,
multiparty settings, Eve's measurements). All simplices advance in lockstep
so the objective is called on a whole batch of points at once; objectives
take an ``(m, n)`` array and return ``m`` values.

Starts come from ``numpy.random.default_rng(seed)``, so results are
reproducible bit-for-bit for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

BatchObjective = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class OptimizerConfig:
    n_starts: int = 16
    maxiter: int = 500
    xatol: float = 1e-9  # simplex diameter (max vertex distance to the best vertex)
    fatol: float = 1e-14
    initial_step: float = 0.25
    # fresh simplex around the best vertex; counters premature collapse in high dims
    restarts: int = 0


@dataclass(frozen=True)
class OptimizationResult:
    x: np.ndarray
    value: float
    n_evals: int
    values: np.ndarray  # best value reached by each start


def _coefficients(n: int) -> tuple[float, float, float, float]:
    if n > 2:
        # dimension-adapted coefficients (Gao & Han)
        return 1.0, 1.0 + 2.0 / n, 0.75 - 1.0 / (2 * n), 1.0 - 1.0 / n
    return 1.0, 2.0, 0.5, 0.5


def _initial_simplices(x0: np.ndarray, step: float) -> np.ndarray:
    s, n = x0.shape
    simplex = np.repeat(x0[:, None, :], n + 1, axis=1)
    idx = np.arange(n)
    simplex[:, idx + 1, idx] += step
    return simplex


def nelder_mead_batch(
    f: BatchObjective, x0: np.ndarray, config: OptimizerConfig
) -> tuple[np.ndarray, np.ndarray, int]:
    """Minimize ``f`` from every row of ``x0``; returns best points, values, evaluation count."""
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    s, n = x0.shape
    alpha, gamma, rho, sigma = _coefficients(n)

    simplex = _initial_simplices(x0, config.initial_step)
    fvals = np.asarray(f(simplex.reshape(-1, n)), dtype=float).reshape(s, n + 1)
    n_evals = s * (n + 1)
    active = np.ones(s, dtype=bool)

    for _ in range(config.maxiter):
        order = np.argsort(fvals, axis=1, kind="stable")
        simplex = np.take_along_axis(simplex, order[:, :, None], axis=1)
        fvals = np.take_along_axis(fvals, order, axis=1)

        diam = np.max(np.abs(simplex[:, 1:] - simplex[:, :1]), axis=(1, 2))
        spread = np.max(np.abs(fvals[:, 1:] - fvals[:, :1]), axis=1)
        active &= ~((diam <= config.xatol) & (spread <= config.fatol))
        ids = np.flatnonzero(active)
        if ids.size == 0:
            break

        sx, fx = simplex[ids], fvals[ids]
        worst = sx[:, -1]
        centroid = sx[:, :-1].mean(axis=1)
        xr = centroid + alpha * (centroid - worst)
        xe = centroid + alpha * gamma * (centroid - worst)
        xc = centroid + rho * alpha * (centroid - worst)
        xcc = centroid - rho * (centroid - worst)
        cand = np.stack([xr, xe, xc, xcc], axis=1)
        fc = np.asarray(f(cand.reshape(-1, n)), dtype=float).reshape(-1, 4)
        n_evals += cand.shape[0] * 4
        f_r, f_e, f_c, f_cc = fc.T

        best, second_worst, worst_f = fx[:, 0], fx[:, -2], fx[:, -1]
        new_x = np.empty_like(xr)
        new_f = np.empty_like(f_r)

        expand = f_r < best
        take_e = expand & (f_e < f_r)
        take_r = (expand & ~take_e) | (~expand & (f_r < second_worst))
        outside = ~expand & ~take_r & (f_r < worst_f)
        inside = ~expand & ~take_r & ~outside
        take_c = outside & (f_c <= f_r)
        take_cc = inside & (f_cc < worst_f)
        shrink = (outside & ~take_c) | (inside & ~take_cc)

        for mask, xs, fs in ((take_e, xe, f_e), (take_r, xr, f_r), (take_c, xc, f_c), (take_cc, xcc, f_cc)):
            new_x[mask] = xs[mask]
            new_f[mask] = fs[mask]

        keep = ~shrink
        sx[keep, -1] = new_x[keep]
        fx[keep, -1] = new_f[keep]
        if shrink.any():
            sh = sx[shrink]
            sh[:, 1:] = sh[:, :1] + sigma * (sh[:, 1:] - sh[:, :1])
            fsh = np.asarray(f(sh[:, 1:].reshape(-1, n)), dtype=float).reshape(-1, n)
            n_evals += sh.shape[0] * n
            sx[shrink] = sh
            fx[shrink, 1:] = fsh
        simplex[ids], fvals[ids] = sx, fx

    i = np.argmin(fvals, axis=1)
    rows = np.arange(s)
    return simplex[rows, i], fvals[rows, i], n_evals


def multistart_maximize(
    f: BatchObjective,
    sample_start: Callable[[np.random.Generator], np.ndarray],
    seed: int,
    config: OptimizerConfig | None = None,
) -> OptimizationResult:
    """Maximize the batch objective ``f`` from ``config.n_starts`` seeded starts.

    Ties between starts keep the earliest one.
    """
    cfg = config or OptimizerConfig()
    if cfg.n_starts < 1:
        raise ValueError("need at least one start")
    rng = np.random.default_rng(seed)
    x0 = np.stack([np.asarray(sample_start(rng), dtype=float) for _ in range(cfg.n_starts)])

    def neg(x):
        return -np.asarray(f(x), dtype=float)

    x, fx, n_evals = nelder_mead_batch(neg, x0, cfg)
    for _ in range(cfg.restarts):
        x, fx, extra = nelder_mead_batch(neg, x, cfg)
        n_evals += extra
    values = -fx
    k = int(np.argmax(values))
    return OptimizationResult(x[k].copy(), float(values[k]), n_evals, values)


def angles_to_unit_vectors(angles: np.ndarray) -> np.ndarray:
    """Map trailing ``(theta_0, phi_0, theta_1, phi_1, ...)`` to unit Bloch vectors.

    Shape ``(..., 2k)`` becomes ``(..., k, 3)``.
    """
    t = np.asarray(angles, dtype=float)
    t = t.reshape(t.shape[:-1] + (-1, 2))
    theta, phi = t[..., 0], t[..., 1]
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def sample_sphere_angles(n_vectors: int) -> Callable[[np.random.Generator], np.ndarray]:
    """Start sampler: ``n_vectors`` isotropic directions as (theta, phi) pairs."""

    def sample(rng: np.random.Generator) -> np.ndarray:
        theta = np.arccos(rng.uniform(-1.0, 1.0, size=n_vectors))
        phi = rng.uniform(0.0, 2 * np.pi, size=n_vectors)
        return np.column_stack([theta, phi]).reshape(-1)

    return sample
