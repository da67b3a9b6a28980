import math

import pytest
from hypothesis import given, strategies as st

from powerforce.constants import Constants, from_config, natural_units, to_config
from powerforce.errors import DomainError, ParseError


def test_natural_units():
    c = natural_units()
    assert (c.hbar, c.epsilon, c.c) == (1.0, 1.0, 1.0)
    assert c.tau0 == 1.0


def test_tau0_with_epsilon_two():
    assert Constants(epsilon=2).tau0 == 0.5


@pytest.mark.parametrize("text, expected", [
    ("epsilon = 0.5", (1.0, 0.5, 1.0)),
    ("", (1.0, 1.0, 1.0)),
    ("# comment only\n\nhbar=2  # trailing\n c = 3e8\n", (2.0, 1.0, 3e8)),
])
def test_from_config(text, expected):
    c = from_config(text)
    assert (c.hbar, c.epsilon, c.c) == expected


@pytest.mark.parametrize("text", ["epsilon = -1", "c = 0", "hbar = inf", "epsilon = nan"])
def test_from_config_rejects_nonpositive(text):
    with pytest.raises(DomainError):
        from_config(text)


@pytest.mark.parametrize("text", ["epsilon", "epsilon = abc", "mass = 1", "c = 1\nc = 2", "= 3"])
def test_from_config_parse_errors(text):
    with pytest.raises(ParseError):
        from_config(text)


def test_constants_reject_non_numbers():
    with pytest.raises(DomainError):
        Constants(hbar="1")
    with pytest.raises(DomainError):
        Constants(epsilon=True)


def test_config_roundtrip():
    c = Constants(1.054571817e-34, 0.37, 299792458.0)
    assert from_config(to_config(c)) == c


def test_immutable():
    c = natural_units()
    with pytest.raises(AttributeError):
        c.epsilon = 2.0


@given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e6))
def test_tau0_times_epsilon_is_hbar(hbar, eps):
    c = Constants(hbar, eps, 1.0)
    assert math.isclose(c.tau0 * c.epsilon, c.hbar, rel_tol=4e-16)
