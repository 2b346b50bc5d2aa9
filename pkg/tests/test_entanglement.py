import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellkey.attack import AttackParams, alice_bob_state
from bellkey.entanglement import bell_diagonal_check, is_entangled, numerical_rank, ppt_min_eigenvalue
from bellkey.linalg import ket, random_density_matrix, random_unitary, tensor_product

from conftest import attack_params

PHI_PLUS = (ket("00") + ket("11")) / math.sqrt(2)


def test_ppt_reference_states():
    assert ppt_min_eigenvalue(np.outer(PHI_PLUS, PHI_PLUS)) == pytest.approx(-0.5, abs=1e-15)
    assert ppt_min_eigenvalue(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-15)
    assert is_entangled(np.outer(PHI_PLUS, PHI_PLUS))
    assert not is_entangled(np.eye(4) / 4)


def test_separable_line():
    p = AttackParams(0.4, math.pi / 2 - 0.4)
    rho = alice_bob_state(p)
    assert ppt_min_eigenvalue(rho) >= -1e-12
    assert not is_entangled(rho)


def test_invalid_input_rejected():
    with pytest.raises(ValueError):
        ppt_min_eigenvalue(np.eye(4))
    with pytest.raises(ValueError):
        is_entangled(np.eye(8) / 8)


@given(st.integers(0, 2**32 - 1))
def test_ppt_lower_bound_and_lu_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(4, rng)
    m = ppt_min_eigenvalue(rho)
    assert m >= -0.5 - 1e-12
    u = tensor_product(random_unitary(2, rng), random_unitary(2, rng))
    assert abs(ppt_min_eigenvalue(u @ rho @ u.conj().T) - m) <= 1e-10


def test_bell_diagonal_reference_states():
    ok, w = bell_diagonal_check(np.outer(PHI_PLUS, PHI_PLUS))
    assert ok
    np.testing.assert_allclose(w, [1, 0, 0, 0], atol=1e-15)
    ok, _ = bell_diagonal_check(np.outer(ket("00"), ket("00")))
    assert not ok


@given(attack_params)
def test_symmetric_attack_is_bell_diagonal(p):
    ok, w = bell_diagonal_check(alice_bob_state(p, "symmetric"))
    assert ok
    assert abs(w.sum() - 1) < 1e-12


def test_ranks():
    generic = AttackParams(0.3, 0.7)
    assert numerical_rank(alice_bob_state(generic)) == 2
    assert numerical_rank(alice_bob_state(generic, "symmetric")) == 4
    assert numerical_rank(np.outer(PHI_PLUS, PHI_PLUS)) == 1
