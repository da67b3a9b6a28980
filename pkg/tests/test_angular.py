import math

import numpy as np
import pytest

from powerforce import angular
from powerforce.angular import (
    check_angular_algebra,
    check_mixed_commutator,
    check_torque_algebra,
    levi_civita,
    multiplet,
    torque_magnitude,
    torque_magnitude_from_matrices,
)
from powerforce.constants import Constants
from powerforce.diffops import apply_torque_grid
from powerforce.errors import DomainError
from powerforce.grid import expectation
from powerforce.verify import TORQUE_GRID, l1_state, s_state


def test_levi_civita():
    assert levi_civita(0, 1, 2) == 1
    assert levi_civita(1, 0, 2) == -1
    assert levi_civita(2, 0, 1) == 1
    assert levi_civita(0, 0, 2) == 0


def test_spin_half_like_l1_matrices():
    M = multiplet(1)
    assert M.dimension == 3
    np.testing.assert_allclose(np.diag(M.Lz).real, [-1, 0, 1])
    for a in M.L:
        np.testing.assert_allclose(a, a.conj().T, atol=0)


@pytest.mark.parametrize("l", [0, 1, 2, 5, 10])
def test_algebra_residuals(l, consts):
    M = multiplet(l, consts)
    scale = max(1.0, consts.epsilon) ** 2
    assert check_torque_algebra(M) < 1e-13 * scale
    assert check_mixed_commutator(M) < 1e-13 * scale
    assert check_angular_algebra(M) < 1e-13 * max(1.0, l)


@pytest.mark.parametrize("l", range(0, 11))
def test_casimir(l, consts):
    M = multiplet(l, consts)
    target = consts.epsilon**2 * l * (l + 1)
    assert np.max(np.abs(M.casimir_T() - target * np.eye(2 * l + 1))) < 1e-12 * max(1.0, target)
    assert torque_magnitude_from_matrices(M) == pytest.approx(torque_magnitude(l, consts), abs=1e-12 * max(1, l))


def test_torque_is_ratio_times_l(consts):
    M = multiplet(4, consts)
    for t, a in zip(M.T, M.L):
        np.testing.assert_allclose(t, consts.ratio * a, rtol=0, atol=0)


@pytest.mark.parametrize("l", [-1, 51, 1.5, True])
def test_multiplet_domain(l):
    with pytest.raises(DomainError):
        multiplet(l)


def test_matrices_read_only():
    M = multiplet(2)
    with pytest.raises(ValueError):
        M.Tx[0, 0] = 1.0


def test_torque_magnitude_values():
    assert torque_magnitude(1, Constants(epsilon=2.0)) == pytest.approx(2 * math.sqrt(2))
    assert torque_magnitude(0) == 0.0


@pytest.mark.parametrize("sign", [1, -1])
def test_grid_torque_l1_state(sign, consts):
    psi = l1_state(TORQUE_GRID, sign)
    tz = apply_torque_grid(psi, consts)[2]
    assert (tz - (sign * consts.epsilon) * psi).max_abs() < 1e-8 * max(1.0, consts.epsilon)
    t2 = sum(expectation(lambda s, a=a: apply_torque_grid(apply_torque_grid(s, consts)[a], consts)[a], psi).real
             for a in range(3))
    assert t2 == pytest.approx(2 * consts.epsilon**2, rel=1e-8)


def test_grid_torque_s_state_vanishes():
    psi = s_state()
    for comp in apply_torque_grid(psi):
        assert comp.max_abs() < 1e-8


def test_max_l_constant():
    assert angular.MAX_L == 50
    assert multiplet(50).dimension == 101
