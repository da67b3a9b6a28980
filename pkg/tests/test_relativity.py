import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from powerforce.constants import Constants
from powerforce.errors import DomainError, EdgeLeakage
from powerforce.relativity import (
    FourVector,
    four_force,
    four_force_operator_check,
    four_momentum,
    power_from_force,
    power_via_four_force,
    rest_power,
)


def test_three_four_five():
    assert power_from_force((3.0, 4.0, 0.0), 0.0) == 5.0
    assert power_via_four_force((3.0, 4.0, 0.0), 0.0) == pytest.approx(5.0, rel=1e-15)


def test_rest_case(consts):
    c = Constants(1.0, consts.epsilon, 3.0)
    m = 1.7
    expected = c.epsilon * c.c**2 * m / c.hbar
    assert power_from_force((0, 0, 0), m, c) == pytest.approx(expected, rel=1e-15)
    assert rest_power(m, c) == pytest.approx(expected, rel=1e-15)


@settings(max_examples=300, deadline=None)
@given(st.floats(0, 10), st.tuples(*[st.floats(-10, 10)] * 3),
       st.floats(0.01, 100), st.floats(0.1, 10))
def test_routes_agree(m, F, eps, c):
    k = Constants(1.0, eps, c)
    a = power_from_force(F, m, k)
    b = power_via_four_force(F, m, k)
    assert abs(a - b) <= 1e-12 * max(a, 1e-300)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 10), st.tuples(*[st.floats(-10, 10)] * 3))
def test_mass_shell(m, p):
    pmu = four_momentum(m, p)
    assert pmu.norm2() == pytest.approx(m * m, rel=1e-9, abs=1e-9)


def test_four_force_scales(consts):
    pmu = four_momentum(1.0, (0.3, 0.0, -0.2), consts)
    np.testing.assert_allclose(four_force(pmu, consts).as_array(), consts.ratio * pmu.as_array())


def test_four_vector_ops():
    v = FourVector(2.0, (1.0, 0.0, 1.0))
    assert v.norm2() == 2.0
    np.testing.assert_array_equal((3 * v).as_array(), [6.0, 3.0, 0.0, 3.0])


def test_negative_mass():
    with pytest.raises(DomainError):
        power_from_force((1, 0, 0), -1.0)


@pytest.mark.parametrize("omega, k", [(1.0, 2.0), (3.0, -1.0), (0.0, 0.0)])
def test_operator_check(omega, k, consts):
    eig, res = four_force_operator_check(omega, k, consts)
    assert res < 1e-10 * max(1.0, consts.epsilon)
    assert eig[0] == pytest.approx(consts.epsilon * omega / consts.c, abs=1e-10)
    assert eig[1] == pytest.approx(consts.epsilon * k, abs=1e-10)


def test_operator_check_non_periodic():
    with pytest.raises(EdgeLeakage):
        four_force_operator_check(0.5, 1.0)
