"""Mechanical power, force and torque as position-space operators.

The constant ``epsilon`` (units of energy) plays for power and force the role
``hbar`` plays for energy and momentum: ``F = -i eps grad``,
``P = -(hbar eps / 2m) lap`` and ``tau = -i eps (r x grad)``.
"""

from .constants import Constants, from_config, natural_units
from .errors import (
    DomainError,
    EdgeLeakage,
    EmptyHistory,
    GridMismatch,
    IdentityMismatch,
    IncommensurateWavevector,
    ModeMismatch,
    ParseError,
    PowerForceError,
    UnsupportedBackend,
)
from .grid import GridSpec, SampledWaveFunction, expectation, inner_product, variance

__all__ = [
    "Constants", "natural_units", "from_config",
    "GridSpec", "SampledWaveFunction", "inner_product", "expectation", "variance",
    "PowerForceError", "DomainError", "ParseError", "GridMismatch", "UnsupportedBackend",
    "EdgeLeakage", "IncommensurateWavevector", "IdentityMismatch", "EmptyHistory", "ModeMismatch",
]
