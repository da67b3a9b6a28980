"""Truncated multimode photon space with number-diagonal power and force operators.

    P = sum eps omega_k n_{k,s}        F = sum eps k n_{k,s}

Both operators are diagonal in the occupation basis, so they are stored as
eigenvalue tables rather than as ladder-operator products.  No zero-point
term is included.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, TextIO

import numpy as np

from .constants import Constants, natural_units
from .errors import DomainError, ModeMismatch, ParseError

_NATURAL = natural_units()


@dataclass(frozen=True)
class Mode:
    k: tuple[float, float, float]
    sigma: int

    def __post_init__(self):
        k = tuple(float(v) for v in self.k)
        if len(k) != 3 or not all(math.isfinite(v) for v in k):
            raise DomainError(f"mode wavevector must be a finite 3-vector, got {self.k}")
        if self.sigma not in (1, 2):
            raise DomainError(f"polarization index must be 1 or 2, got {self.sigma}")
        object.__setattr__(self, "k", k)

    def omega(self, c: float) -> float:
        return c * math.sqrt(sum(v * v for v in self.k))


@dataclass(frozen=True)
class ModeSet:
    modes: tuple[Mode, ...]
    cutoff: int

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if len(set(self.modes)) != len(self.modes):
            raise DomainError("modes must be distinct (k, sigma) pairs")
        if int(self.cutoff) != self.cutoff or self.cutoff < 0:
            raise DomainError(f"cutoff must be a non-negative integer, got {self.cutoff}")

    def __len__(self) -> int:
        return len(self.modes)

    def frequencies(self, consts: Constants = _NATURAL) -> np.ndarray:
        return np.array([m.omega(consts.c) for m in self.modes])

    def wavevectors(self) -> np.ndarray:
        return np.array([m.k for m in self.modes]).reshape(len(self.modes), 3)

    def basis(self) -> Iterator["FockState"]:
        for occ in itertools.product(range(self.cutoff + 1), repeat=len(self.modes)):
            yield FockState(occ)

    @property
    def dimension(self) -> int:
        return (self.cutoff + 1) ** len(self.modes)


@dataclass(frozen=True)
class FockState:
    """Number state; ``occupations[i]`` photons in mode ``i``."""

    occupations: tuple[int, ...]

    def __post_init__(self):
        occ = tuple(int(n) for n in self.occupations)
        if any(n < 0 for n in occ):
            raise DomainError(f"occupations must be non-negative, got {occ}")
        object.__setattr__(self, "occupations", occ)


def vacuum(ms: ModeSet) -> FockState:
    return FockState((0,) * len(ms))


def _validate(s: FockState, ms: ModeSet) -> np.ndarray:
    if len(s.occupations) != len(ms):
        raise ModeMismatch(f"state has {len(s.occupations)} modes, mode set has {len(ms)}")
    if any(n > ms.cutoff for n in s.occupations):
        raise DomainError(f"occupation {max(s.occupations)} exceeds cutoff {ms.cutoff}")
    return np.array(s.occupations, dtype=float)


def apply_em_power(s: FockState, ms: ModeSet, consts: Constants = _NATURAL) -> tuple[float, FockState]:
    n = _validate(s, ms)
    return consts.epsilon * float(ms.frequencies(consts) @ n), s


def apply_em_force(s: FockState, ms: ModeSet, consts: Constants = _NATURAL) -> tuple[np.ndarray, FockState]:
    n = _validate(s, ms)
    return consts.epsilon * (n @ ms.wavevectors()), s


def apply_em_hamiltonian(s: FockState, ms: ModeSet, consts: Constants = _NATURAL) -> tuple[float, FockState]:
    n = _validate(s, ms)
    return consts.hbar * float(ms.frequencies(consts) @ n), s


def apply_em_momentum(s: FockState, ms: ModeSet, consts: Constants = _NATURAL) -> tuple[np.ndarray, FockState]:
    n = _validate(s, ms)
    return consts.hbar * (n @ ms.wavevectors()), s


def power_matrix(ms: ModeSet, consts: Constants = _NATURAL) -> np.ndarray:
    """Dense matrix of the power operator in the occupation basis."""
    return np.diag([apply_em_power(s, ms, consts)[0] for s in ms.basis()])


def force_matrices(ms: ModeSet, consts: Constants = _NATURAL) -> list[np.ndarray]:
    values = np.array([apply_em_force(s, ms, consts)[0] for s in ms.basis()])
    return [np.diag(values[:, a]) for a in range(3)]


@dataclass(frozen=True)
class EMConsistencyRow:
    state: FockState
    power: float
    hamiltonian: float
    force: tuple[float, float, float]
    momentum: tuple[float, float, float]
    residual: float


@dataclass(frozen=True)
class EMConsistencyReport:
    rows: tuple[EMConsistencyRow, ...]
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def em_consistency_check(ms: ModeSet, consts: Constants = _NATURAL,
                         tolerance: float = 0.0) -> EMConsistencyReport:
    """Compare ``P`` with ``(eps/hbar) H`` and ``F`` with ``(eps/hbar) p`` on every basis state.

    The default tolerance is zero: with ``hbar = 1`` both sides are computed
    by the same floating-point operations.
    """
    if len(ms) > 4 or ms.cutoff > 5:
        raise DomainError("exhaustive check limited to 4 modes with cutoff <= 5")
    ratio = consts.ratio
    rows = []
    for s in ms.basis():
        power, _ = apply_em_power(s, ms, consts)
        energy, _ = apply_em_hamiltonian(s, ms, consts)
        force, _ = apply_em_force(s, ms, consts)
        mom, _ = apply_em_momentum(s, ms, consts)
        res = max(abs(power - ratio * energy), float(np.max(np.abs(force - ratio * mom))))
        rows.append(EMConsistencyRow(s, power, energy, tuple(force), tuple(mom), res))
    return EMConsistencyReport(tuple(rows), tolerance)


def parse_modes(stream: TextIO | Sequence[str]) -> list[Mode]:
    """Read ``kx ky kz sigma`` lines; ``#`` starts a comment."""
    modes = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(f"line {lineno}: expected 'kx ky kz sigma'")
        try:
            k = tuple(float(v) for v in fields[:3])
            sigma = int(fields[3])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        modes.append(Mode(k, sigma))
    return modes


def format_modes(modes: Sequence[Mode]) -> str:
    return "".join(f"{m.k[0]!r} {m.k[1]!r} {m.k[2]!r} {m.sigma}\n" for m in modes)
