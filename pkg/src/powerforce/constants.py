"""Fundamental constants (hbar, epsilon, c) and their plain-text config format.

All quantities in the package are plain floats in whatever unit system the
caller picks; ``natural_units()`` sets all three constants to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParseError

_KEYS = ("hbar", "epsilon", "c")


@dataclass(frozen=True)
class Constants:
    """Immutable (hbar, epsilon, c) triple.

    ``epsilon`` carries units of energy, so ``tau0 = hbar / epsilon`` is the
    duration of a single energy/momentum transfer event.
    """

    hbar: float = 1.0
    epsilon: float = 1.0
    c: float = 1.0

    def __post_init__(self) -> None:
        for key in _KEYS:
            value = getattr(self, key)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DomainError(f"{key} must be a real number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"{key} must be positive and finite, got {value!r}")
            object.__setattr__(self, key, float(value))
        if not math.isfinite(self.tau0) or self.tau0 <= 0:
            raise DomainError("hbar/epsilon overflows or underflows")

    @property
    def tau0(self) -> float:
        """Transfer interval hbar/epsilon."""
        return self.hbar / self.epsilon

    @property
    def ratio(self) -> float:
        """epsilon/hbar, the factor mapping energy to power and momentum to force."""
        return self.epsilon / self.hbar

    def with_epsilon(self, epsilon: float) -> "Constants":
        return Constants(self.hbar, epsilon, self.c)

    def as_dict(self) -> dict[str, float]:
        return {"hbar": self.hbar, "epsilon": self.epsilon, "c": self.c}


def natural_units() -> Constants:
    return Constants(1.0, 1.0, 1.0)


def from_config(text: str) -> Constants:
    """Parse a ``key = value`` document into :class:`Constants`.

    Blank lines and ``#`` comments are ignored; keys not given default to 1.
    Raises :class:`ParseError` for malformed lines, unknown or duplicate keys
    and non-numeric values, :class:`DomainError` for non-positive values.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rhs = line.partition("=")
        key, rhs = key.strip(), rhs.strip()
        if not sep or not key or not rhs:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in _KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        try:
            value = float(rhs)
        except ValueError:
            raise ParseError(f"line {lineno}: {key} is not a number: {rhs!r}") from None
        values[key] = value
    return Constants(**values)


def to_config(consts: Constants) -> str:
    return "".join(f"{k} = {v!r}\n" for k, v in consts.as_dict().items())
