import numpy as np
import pytest

from bellkey.optimize import OptimizerConfig, angles_to_unit_vectors, multistart_maximize, nelder_mead_batch


def rosenbrock(x):
    return np.sum(100 * (x[:, 1:] - x[:, :-1] ** 2) ** 2 + (1 - x[:, :-1]) ** 2, axis=1)


def test_batch_minimizes_quadratic():
    shifts = np.arange(1.0, 6.0)
    f = lambda x: np.sum(np.arange(1, 6) * (x - shifts) ** 2, axis=1)
    x, fx, _ = nelder_mead_batch(f, np.zeros((3, 5)), OptimizerConfig(maxiter=5000, xatol=1e-10))
    np.testing.assert_allclose(x, np.tile(shifts, (3, 1)), atol=1e-7)
    assert np.all(fx < 1e-12)


def test_batch_rosenbrock():
    x, fx, _ = nelder_mead_batch(rosenbrock, np.array([[-1.2, 1.0], [0.0, 0.0]]), OptimizerConfig(maxiter=5000, xatol=1e-10))
    np.testing.assert_allclose(x, np.ones((2, 2)), atol=1e-6)


def test_multistart_finds_global_maximum():
    # two bumps, the taller at x = 2
    f = lambda x: np.exp(-((x[:, 0] + 2) ** 2)) + 2 * np.exp(-((x[:, 0] - 2) ** 2))
    res = multistart_maximize(f, lambda rng: rng.uniform(-4, 4, size=1), seed=0, config=OptimizerConfig(n_starts=8))
    assert res.x[0] == pytest.approx(2.0, abs=1e-6)
    # the small bump still contributes exp(-16) at the top of the tall one
    assert res.value == pytest.approx(2 + np.exp(-16), abs=1e-12)
    assert res.values.shape == (8,)


def test_multistart_deterministic():
    f = lambda x: -rosenbrock(x)
    cfg = OptimizerConfig(n_starts=4, maxiter=300)
    a = multistart_maximize(f, lambda rng: rng.normal(size=3), seed=5, config=cfg)
    b = multistart_maximize(f, lambda rng: rng.normal(size=3), seed=5, config=cfg)
    assert a.value == b.value and a.n_evals == b.n_evals
    np.testing.assert_array_equal(a.x, b.x)


def test_zero_starts_rejected():
    with pytest.raises(ValueError):
        multistart_maximize(lambda x: x[:, 0], lambda rng: rng.normal(size=1), 0, OptimizerConfig(n_starts=0))


def test_angles_to_unit_vectors():
    v = angles_to_unit_vectors(np.array([0.0, 0.0, np.pi / 2, 0.0, np.pi / 2, np.pi / 2]))
    np.testing.assert_allclose(v, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], atol=1e-15)
