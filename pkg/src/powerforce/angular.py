"""Exact (2l+1)-dimensional matrices for orbital angular momentum and torque."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .constants import Constants, natural_units
from .errors import DomainError

MAX_L = 50


def levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


@dataclass(frozen=True, eq=False)
class Multiplet:
    """Angular momentum ``L`` (units of hbar) and torque ``T = (eps/hbar) L``.

    Basis ordered by ascending weight ``m = -l, ..., l``.
    """

    l: int
    L: tuple[np.ndarray, np.ndarray, np.ndarray]
    T: tuple[np.ndarray, np.ndarray, np.ndarray]
    consts: Constants

    @property
    def dimension(self) -> int:
        return 2 * self.l + 1

    @property
    def Lx(self):
        return self.L[0]

    @property
    def Ly(self):
        return self.L[1]

    @property
    def Lz(self):
        return self.L[2]

    @property
    def Tx(self):
        return self.T[0]

    @property
    def Ty(self):
        return self.T[1]

    @property
    def Tz(self):
        return self.T[2]

    def casimir_L(self) -> np.ndarray:
        return sum(a @ a for a in self.L)

    def casimir_T(self) -> np.ndarray:
        return sum(a @ a for a in self.T)


def multiplet(l: int, consts: Constants | None = None) -> Multiplet:
    """Ladder-operator construction of the spin-``l`` matrices, ``0 <= l <= 50``."""
    consts = consts or natural_units()
    if isinstance(l, bool) or int(l) != l or not 0 <= l <= MAX_L:
        raise DomainError(f"l must be an integer in [0, {MAX_L}], got {l}")
    l = int(l)
    m = np.arange(-l, l + 1, dtype=float)
    # <m+1| L+ |m> = sqrt(l(l+1) - m(m+1))
    raising = np.diag(np.sqrt(l * (l + 1) - m[:-1] * (m[:-1] + 1)), k=-1).astype(complex)
    lowering = raising.conj().T
    hbar = consts.hbar
    Lx = hbar * 0.5 * (raising + lowering)
    Ly = hbar * -0.5j * (raising - lowering)
    Lz = hbar * np.diag(m).astype(complex)
    L = (Lx, Ly, Lz)
    T = tuple(consts.ratio * a for a in L)
    for arr in L + T:
        arr.flags.writeable = False
    return Multiplet(l, L, T, consts)


def _structure_residual(left, right, target, scale: complex) -> float:
    worst = 0.0
    for g, b in itertools.product(range(3), repeat=2):
        comm = left[g] @ right[b] - right[b] @ left[g]
        expected = np.zeros_like(comm)
        for nu in range(3):
            eps = levi_civita(g, b, nu)
            if eps:
                expected = expected + scale * eps * target[nu]
        worst = max(worst, float(np.max(np.abs(comm - expected))))
    return worst


def check_torque_algebra(M: Multiplet) -> float:
    """max ``|[T_g, T_b] - i eps e_gbn T_n|``, entrywise over all index pairs."""
    return _structure_residual(M.T, M.T, M.T, 1j * M.consts.epsilon)


def check_mixed_commutator(M: Multiplet) -> float:
    """max ``|[L_g, T_b] - i hbar e_gbn T_n|``."""
    return _structure_residual(M.L, M.T, M.T, 1j * M.consts.hbar)


def check_angular_algebra(M: Multiplet) -> float:
    return _structure_residual(M.L, M.L, M.L, 1j * M.consts.hbar)


def torque_magnitude(l: int, consts: Constants | None = None) -> float:
    """``eps sqrt(l(l+1))``."""
    consts = consts or natural_units()
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    return consts.epsilon * math.sqrt(l * (l + 1))


def torque_magnitude_from_matrices(M: Multiplet) -> float:
    return math.sqrt(max(float(np.linalg.eigvalsh(M.casimir_T()).max()), 0.0))
