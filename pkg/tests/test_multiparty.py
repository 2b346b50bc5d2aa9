import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellkey.linalg import PureState, ket, tensor_product
from bellkey.multiparty import (
    CorrelationTensor,
    DistillabilityDegree,
    PartySettings,
    correlation_tensor,
    distillability_classify,
    ghz_state,
    mermin_klyshko_coefficients,
    mermin_klyshko_value,
    optimize_settings,
    quantum_max,
    wwzb_exhaustive,
    wwzb_max_fixed_settings,
)

X, Y, Z = np.eye(3)


def test_ghz_state():
    psi = ghz_state(3)
    assert psi.amplitudes[0] == psi.amplitudes[7] == pytest.approx(1 / math.sqrt(2))
    with pytest.raises(ValueError):
        ghz_state(7)


def test_ghz_correlations_in_xy_plane():
    # E for GHZ_3 with settings x, y: cos(phi_1 + phi_2 + phi_3)
    t = correlation_tensor(ghz_state(3), PartySettings.uniform(3, X, Y))
    expected = [math.cos(math.pi / 2 * sum(k)) for k in np.ndindex(2, 2, 2)]
    np.testing.assert_allclose(t.values, expected, atol=1e-15)
    assert t[(0, 0, 0)] == pytest.approx(1)


def test_correlations_match_direct_expectation(rng):
    from bellkey.linalg import bloch_operator, random_density_matrix

    rho = random_density_matrix(8, rng)
    v = rng.normal(size=(3, 2, 3))
    s = PartySettings(v / np.linalg.norm(v, axis=2, keepdims=True))
    t = correlation_tensor(rho, s)
    for k in np.ndindex(2, 2, 2):
        op = tensor_product(*(bloch_operator(s.vectors[j, k[j]]) for j in range(3)))
        assert t[k] == pytest.approx(np.trace(rho @ op).real, abs=1e-14)


def test_mk_coefficients():
    # N=2: CHSH / 2
    np.testing.assert_allclose(mermin_klyshko_coefficients(2), [0.5, 0.5, 0.5, -0.5])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mk_local_bound_is_one(n):
    # deterministic strategies: party j outputs a[j, s] = +-1 for setting s
    c = mermin_klyshko_coefficients(n)
    ks = np.array(list(np.ndindex(*(2,) * n)))
    best = 0.0
    for flat in itertools.product((1.0, -1.0), repeat=2 * n):
        a = np.array(flat).reshape(n, 2)
        e = a[np.arange(n), ks].prod(axis=1)
        best = max(best, abs(c @ e))
    assert best == pytest.approx(1.0, abs=1e-12)


def test_mk_ghz3_reference_settings():
    t = correlation_tensor(ghz_state(3), PartySettings.uniform(3, Y, -X))
    assert mermin_klyshko_value(t) == pytest.approx(2.0, abs=1e-14)


def test_mk_needs_two_parties():
    with pytest.raises(ValueError):
        mermin_klyshko_value(CorrelationTensor(1, [1.0, 0.0]))


def _product_state(rng, n):
    qubits = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(n)]
    return PureState.from_amplitudes(tensor_product(*qubits), normalize=True)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_product_states_never_violate(seed, n):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n, 2, 3))
    s = PartySettings(v / np.linalg.norm(v, axis=2, keepdims=True))
    t = correlation_tensor(_product_state(rng, n), s)
    assert wwzb_max_fixed_settings(t) <= 1 + 1e-12
    assert abs(mermin_klyshko_value(t)) <= 1 + 1e-12


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_fourier_form_equals_exhaustive(seed, n):
    t = CorrelationTensor(n, np.random.default_rng(seed).uniform(-1, 1, size=2**n))
    assert abs(wwzb_max_fixed_settings(t) - wwzb_exhaustive(t)) <= 1e-12
    # WWZB contains MK and its negation
    if n >= 2:
        assert wwzb_max_fixed_settings(t) >= abs(mermin_klyshko_value(t)) - 1e-12


def test_exhaustive_limited_to_four_parties():
    with pytest.raises(ValueError):
        wwzb_exhaustive(CorrelationTensor(5, np.zeros(32)))


@pytest.mark.parametrize(
    "n, value, degree",
    [
        (3, 2.0, DistillabilityDegree.FULL_DISTILLABILITY),
        (3, 1.0, DistillabilityDegree.NO_CONCLUSION),
        (3, 1.2, DistillabilityDegree.SOME_DISTILLABLE),
        (3, math.sqrt(2), DistillabilityDegree.SOME_DISTILLABLE),
        (2, 1.2, DistillabilityDegree.FULL_DISTILLABILITY),
        (5, 2.5, DistillabilityDegree.SOME_DISTILLABLE),
    ],
)
def test_classifier(n, value, degree):
    assert distillability_classify(n, value).degree is degree


def test_classifier_rejects_impossible_values():
    with pytest.raises(ValueError):
        distillability_classify(3, 2.01)
    with pytest.raises(ValueError):
        distillability_classify(1, 0.5)


@pytest.mark.parametrize("functional", ["mk", "wwzb"])
def test_optimize_ghz3(functional):
    s, value = optimize_settings(ghz_state(3), functional, seed=0)
    assert value == pytest.approx(quantum_max(3), abs=1e-6)
    assert s.num_parties == 3


def test_optimize_product_state(rng):
    _, value = optimize_settings(_product_state(rng, 3), "wwzb", seed=3)
    assert value <= 1 + 1e-6
    assert value >= 1 - 1e-6  # aligned settings always reach the local bound


def test_optimize_w_state():
    w = PureState.from_amplitudes(ket("001") + ket("010") + ket("100"), normalize=True)
    _, value = optimize_settings(w, "mk", seed=0)
    # W violates MK but less than GHZ does
    assert 1 < value < 2 - 1e-3


def test_optimize_rejects_bad_functional():
    with pytest.raises(ValueError):
        optimize_settings(ghz_state(3), "uffink")


def test_classifier_band_edges_tolerate_rounding():
    assert distillability_classify(3, 1 + 1e-15).degree is DistillabilityDegree.NO_CONCLUSION
    assert distillability_classify(4, 2 + 1e-15).degree is DistillabilityDegree.SOME_DISTILLABLE
