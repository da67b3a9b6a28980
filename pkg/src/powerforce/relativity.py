"""Four-vectors, the four-force ``(P/c, F) = (eps/hbar) p^mu`` and its power identity.

Metric signature is (+, -, -, -).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import Constants, natural_units
from .errors import DomainError, EdgeLeakage

_NATURAL = natural_units()


@dataclass(frozen=True, eq=False)
class FourVector:
    t_component: float
    spatial: np.ndarray

    def __post_init__(self):
        arr = np.array(self.spatial, dtype=float).reshape(3)
        arr.flags.writeable = False
        object.__setattr__(self, "spatial", arr)
        object.__setattr__(self, "t_component", float(self.t_component))

    def norm2(self) -> float:
        """Minkowski square ``t^2 - |x|^2``."""
        return self.t_component**2 - float(self.spatial @ self.spatial)

    def __mul__(self, scalar: float) -> "FourVector":
        return FourVector(scalar * self.t_component, scalar * self.spatial)

    __rmul__ = __mul__

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.t_component], self.spatial))


def _check_mass(m: float) -> None:
    if not m >= 0 or not math.isfinite(m):
        raise DomainError(f"rest mass must be non-negative, got {m}")


def four_momentum(m: float, p, consts: Constants = _NATURAL) -> FourVector:
    """``(E/c, p)`` with ``E = sqrt(p^2 c^2 + m^2 c^4)``."""
    _check_mass(m)
    p = np.asarray(p, dtype=float).reshape(3)
    c = consts.c
    energy = math.hypot(float(np.linalg.norm(p)) * c, m * c * c)
    return FourVector(energy / c, p)


def four_force(pmu: FourVector, consts: Constants = _NATURAL) -> FourVector:
    return consts.ratio * pmu


def power_from_force(F, m: float, consts: Constants = _NATURAL) -> float:
    """Power a particle of rest mass ``m`` applies under force ``F``:
    ``sqrt(F^2 c^2 + (eps/hbar)^2 m^2 c^4)``.
    """
    _check_mass(m)
    magnitude = float(np.linalg.norm(np.asarray(F, dtype=float)))
    c = consts.c
    return math.hypot(magnitude * c, consts.ratio * m * c * c)


def power_via_four_force(F, m: float, consts: Constants = _NATURAL) -> float:
    """Same quantity by the four-vector route: time component of the four-force, times c."""
    p = consts.tau0 * np.asarray(F, dtype=float)
    return consts.c * four_force(four_momentum(m, p, consts), consts).t_component


def rest_power(m: float, consts: Constants = _NATURAL) -> float:
    _check_mass(m)
    return consts.epsilon * consts.c**2 * m / consts.hbar


def four_force_operator_check(omega: float, k: float, consts: Constants = _NATURAL,
                              n_t: int = 64, n_x: int = 64, period: float = 2 * math.pi,
                              length: float = 2 * math.pi) -> tuple[np.ndarray, float]:
    """Apply ``i eps d^mu`` to ``exp(i(kx - omega t))`` on a periodic (t, x) lattice.

    Returns the eigenvalue pair ``(P/c, F_x)`` extracted by Rayleigh quotient
    and the largest pointwise residual of both components.  Derivatives are
    spectral in t and x, so ``omega`` and ``k`` must be commensurate with the
    lattice periods.
    """
    for name, value, span, n in (("omega", omega, period, n_t), ("k", k, length, n_x)):
        q = value * span / (2 * math.pi)
        if abs(q - round(q)) > 1e-9 * max(1.0, abs(q)) or abs(round(q)) >= n // 2:
            raise EdgeLeakage(f"{name} = {value} is not periodic on the lattice")
    t = period * np.arange(n_t) / n_t
    x = -0.5 * length + length * np.arange(n_x) / n_x
    tt, xx = np.meshgrid(t, x, indexing="ij")
    psi = np.exp(1j * (k * xx - omega * tt))

    def spectral_d(arr, axis, span, n):
        freqs = 2 * np.pi * np.fft.fftfreq(n, d=span / n)
        freqs[n // 2] = 0.0
        shape = [1, 1]
        shape[axis] = n
        return np.fft.ifft(np.fft.fft(arr, axis=axis) * (1j * freqs).reshape(shape), axis=axis)

    eps, c = consts.epsilon, consts.c
    # d^mu = (d_0, -grad) with d_0 = (1/c) d_t
    time_part = 1j * eps * spectral_d(psi, 0, period, n_t) / c
    space_part = -1j * eps * spectral_d(psi, 1, length, n_x)
    norm2 = np.vdot(psi, psi)
    eig = np.array([(np.vdot(psi, time_part) / norm2).real, (np.vdot(psi, space_part) / norm2).real])
    residual = max(float(np.max(np.abs(time_part - eig[0] * psi))),
                   float(np.max(np.abs(space_part - eig[1] * psi))))
    return eig, residual
