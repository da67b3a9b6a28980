"""Derivative backends, position-space operators and test-state constructors.

Operators act on :class:`~powerforce.grid.SampledWaveFunction` and return a
fresh state.  The catalog:

=================  =================================  ==========================
operator           position representation            plane-wave eigenvalue
=================  =================================  ==========================
momentum           ``-i hbar grad``                   ``hbar k``
force              ``-i eps grad``                    ``eps k``
hamiltonian_free   ``-(hbar^2 / 2m) lap``             ``hbar^2 k^2 / 2m``
power_free         ``-(hbar eps / 2m) lap``           ``eps hbar k^2 / 2m``
angular_momentum   ``-i hbar (r x grad)``
torque             ``-i eps (r x grad)``
=================  =================================  ==========================

The spectral backend is the reference.  ``fd2``/``fd4`` are periodic central
differences of order 2 and 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .constants import Constants, natural_units
from .errors import DomainError, EdgeLeakage, IncommensurateWavevector, UnsupportedBackend
from .grid import (
    EDGE_TOLERANCE,
    GridSpec,
    SampledWaveFunction,
    edge_density_ratio,
    inner_product,
    require_localized,
)

BACKENDS = ("spectral", "fd2", "fd4")

_NATURAL = natural_units()


def _check_backend(backend: str) -> None:
    if backend not in BACKENDS:
        raise UnsupportedBackend(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def _spectral_multiplier(grid: GridSpec, axis: int, order: int) -> np.ndarray:
    k = grid.axis_wavenumbers.copy()
    if order == 1:
        # Nyquist mode has no odd derivative on a real periodic grid.
        k[grid.points // 2] = 0.0
    mult = (1j * k) ** order
    shape = [1] * grid.dim
    shape[axis] = grid.points
    return mult.reshape(shape)


def _fd(values: np.ndarray, h: float, axis: int, order: int, backend: str) -> np.ndarray:
    def s(n):
        return np.roll(values, -n, axis=axis)

    if order == 1:
        if backend == "fd2":
            return (s(1) - s(-1)) / (2 * h)
        return (-s(2) + 8 * s(1) - 8 * s(-1) + s(-2)) / (12 * h)
    if backend == "fd2":
        return (s(1) - 2 * values + s(-1)) / h**2
    return (-s(2) + 16 * s(1) - 30 * values + 16 * s(-1) - s(-2)) / (12 * h**2)


def derivative(values: np.ndarray, grid: GridSpec, axis: int, order: int = 1,
               backend: str = "spectral") -> np.ndarray:
    """Raw-array ``d^order/dx_axis^order`` with order 1 or 2."""
    _check_backend(backend)
    grid._check_axis(axis)
    if order not in (1, 2):
        raise DomainError(f"derivative order must be 1 or 2, got {order}")
    if backend == "spectral":
        coeffs = np.fft.fft(values, axis=axis)
        return np.fft.ifft(coeffs * _spectral_multiplier(grid, axis, order), axis=axis)
    return _fd(values, grid.spacing, axis, order, backend)


def gradient(psi: SampledWaveFunction, backend: str = "spectral") -> list[SampledWaveFunction]:
    return [psi.with_values(derivative(psi.values, psi.grid, a, 1, backend))
            for a in range(psi.grid.dim)]


def laplacian(psi: SampledWaveFunction, backend: str = "spectral") -> SampledWaveFunction:
    total = sum(derivative(psi.values, psi.grid, a, 2, backend) for a in range(psi.grid.dim))
    return psi.with_values(total)


def apply_momentum(psi, consts: Constants = _NATURAL, backend="spectral"):
    return [(-1j * consts.hbar) * g for g in gradient(psi, backend)]


def apply_force(psi, consts: Constants = _NATURAL, backend="spectral"):
    """``F = -i eps grad``, one component per axis."""
    return [(-1j * consts.epsilon) * g for g in gradient(psi, backend)]


def _check_mass(m: float) -> None:
    if not m > 0 or not math.isfinite(m):
        raise DomainError(f"mass must be positive, got {m}")


def apply_hamiltonian_free(psi, m: float, consts: Constants = _NATURAL, backend="spectral"):
    _check_mass(m)
    return (-consts.hbar**2 / (2 * m)) * laplacian(psi, backend)


def apply_power_free(psi, m: float, consts: Constants = _NATURAL, backend="spectral"):
    """Kinetic power operator ``-(hbar eps / 2m) lap``."""
    _check_mass(m)
    return (-consts.hbar * consts.epsilon / (2 * m)) * laplacian(psi, backend)


def _r_cross_grad(psi: SampledWaveFunction, backend: str) -> list[SampledWaveFunction]:
    if psi.grid.dim != 3:
        raise DomainError("r x grad needs a 3D grid")
    grads = [g.values for g in gradient(psi, backend)]
    r = [psi.grid.coordinates(a) for a in range(3)]
    out = []
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        out.append(psi.with_values(r[b] * grads[c] - r[c] * grads[b]))
    return out


def apply_angular_momentum(psi, consts: Constants = _NATURAL, backend="spectral"):
    require_localized(psi)
    return [(-1j * consts.hbar) * v for v in _r_cross_grad(psi, backend)]


def apply_torque_grid(psi, consts: Constants = _NATURAL, backend="spectral"):
    """``tau = -i eps (r x grad)`` on a localized 3D state.

    Raises :class:`EdgeLeakage` when the state reaches the box edge, where
    multiplication by ``r`` breaks periodicity.
    """
    require_localized(psi)
    return [(-1j * consts.epsilon) * v for v in _r_cross_grad(psi, backend)]


# ---------------------------------------------------------------------------
# Operator handles


@dataclass(frozen=True)
class OperatorHandle:
    """A labelled linear map on sampled wavefunctions.

    Handles compose with ``@``, add/subtract with ``+``/``-`` and scale by
    numbers; ``hermitian`` records whether the operator is declared
    self-adjoint on the periodic grid.
    """

    label: str
    action: Callable[[SampledWaveFunction], SampledWaveFunction]
    backend: str = "spectral"
    hermitian: bool = True

    def __call__(self, psi: SampledWaveFunction) -> SampledWaveFunction:
        return self.action(psi)

    def __matmul__(self, other: "OperatorHandle") -> "OperatorHandle":
        return OperatorHandle(f"{self.label}.{other.label}",
                              lambda psi: self(other(psi)), self.backend, False)

    def __add__(self, other: "OperatorHandle") -> "OperatorHandle":
        return OperatorHandle(f"({self.label} + {other.label})",
                              lambda psi: self(psi) + other(psi), self.backend,
                              self.hermitian and other.hermitian)

    def __sub__(self, other: "OperatorHandle") -> "OperatorHandle":
        return OperatorHandle(f"({self.label} - {other.label})",
                              lambda psi: self(psi) - other(psi), self.backend,
                              self.hermitian and other.hermitian)

    def __rmul__(self, scalar: complex) -> "OperatorHandle":
        herm = self.hermitian and complex(scalar).imag == 0
        return OperatorHandle(f"{scalar!r}*{self.label}",
                              lambda psi: scalar * self(psi), self.backend, herm)


def commutator(a: OperatorHandle, b: OperatorHandle) -> OperatorHandle:
    return OperatorHandle(f"[{a.label}, {b.label}]",
                          lambda psi: a(b(psi)) - b(a(psi)), a.backend, False)


_AXES = "xyz"


def position(axis: int) -> OperatorHandle:
    def act(psi):
        return psi.with_values(psi.grid.coordinates(axis) * psi.values)
    return OperatorHandle(f"x_{_AXES[axis]}", act, "exact")


def _component(label, fn, axis, backend):
    _check_backend(backend)

    def act(psi):
        return fn(psi)[axis]
    return OperatorHandle(f"{label}_{_AXES[axis]}", act, backend)


def momentum(axis: int, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    return _component("p", lambda psi: apply_momentum(psi, consts, backend), axis, backend)


def force(axis: int, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    return _component("F", lambda psi: apply_force(psi, consts, backend), axis, backend)


def angular_momentum(axis: int, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    return _component("l", lambda psi: apply_angular_momentum(psi, consts, backend), axis, backend)


def torque(axis: int, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    return _component("tau", lambda psi: apply_torque_grid(psi, consts, backend), axis, backend)


def hamiltonian_free(m: float, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    _check_mass(m)
    _check_backend(backend)
    return OperatorHandle("H_free", lambda psi: apply_hamiltonian_free(psi, m, consts, backend), backend)


def power_free(m: float, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    _check_mass(m)
    _check_backend(backend)
    return OperatorHandle("P_free", lambda psi: apply_power_free(psi, m, consts, backend), backend)


def hamiltonian_ho(m: float, omega: float, consts: Constants = _NATURAL,
                   backend="spectral") -> OperatorHandle:
    """Isotropic oscillator ``-(hbar^2/2m) lap + m omega^2 r^2 / 2``."""
    _check_mass(m)
    _check_backend(backend)
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")

    def act(psi):
        r2 = sum(psi.grid.coordinates(a) ** 2 for a in range(psi.grid.dim))
        kinetic = apply_hamiltonian_free(psi, m, consts, backend)
        return kinetic + psi.with_values(0.5 * m * omega**2 * r2 * psi.values)
    return OperatorHandle("H_ho", act, backend)


def power_ho(m: float, omega: float, consts: Constants = _NATURAL, backend="spectral") -> OperatorHandle:
    """``(eps/hbar) H_ho``: the oscillator's power operator, kept apart from the kinetic form."""
    h = hamiltonian_ho(m, omega, consts, backend)
    ratio = consts.ratio
    return OperatorHandle("P_ho", lambda psi: ratio * h(psi), backend)


def eigen_estimate(op: Callable, psi: SampledWaveFunction) -> tuple[complex, float]:
    """Rayleigh quotient of ``op`` on ``psi`` and the max pointwise residual."""
    out = op(psi)
    lam = inner_product(psi, out) / inner_product(psi, psi)
    return lam, float(np.max(np.abs(out.values - lam * psi.values)))


# ---------------------------------------------------------------------------
# State constructors


def lattice_wavevector(n: Sequence[int], grid: GridSpec) -> np.ndarray:
    """Wavevector ``2 pi n / L`` for integer mode numbers ``n``."""
    return 2 * np.pi * np.asarray(n, dtype=float) / grid.length


def plane_wave(k: Sequence[float], grid: GridSpec, t: float = 0.0, omega: float = 0.0
               ) -> SampledWaveFunction:
    """Normalized ``exp(i(k.r - omega t)) / sqrt(L^dim)``.

    ``k`` must lie on the ``2 pi / L`` lattice with every mode number strictly
    below ``N/2`` in magnitude, so that it is an exact eigenfunction of all
    spectral derivatives.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if k.shape != (grid.dim,):
        raise DomainError(f"wavevector must have {grid.dim} components")
    n = k * grid.length / (2 * np.pi)
    nearest = np.round(n)
    if np.any(np.abs(n - nearest) > 1e-9 * np.maximum(1.0, np.abs(n))):
        raise IncommensurateWavevector(f"k = {k} is not on the 2*pi/L lattice")
    if np.any(np.abs(nearest) >= grid.points // 2):
        raise IncommensurateWavevector(f"mode numbers {nearest} reach the Nyquist limit")
    # Integer mode numbers keep the phase exactly periodic.
    phase = sum(2 * np.pi * nearest[a] * grid.coordinates(a) / grid.length for a in range(grid.dim))
    values = np.exp(1j * (phase - omega * t)) / math.sqrt(grid.length**grid.dim)
    return SampledWaveFunction(grid, np.broadcast_to(values, grid.shape), t)


def free_frequency(k: Sequence[float], m: float, consts: Constants = _NATURAL) -> float:
    _check_mass(m)
    k = np.asarray(k, dtype=float)
    return consts.hbar * float(k @ k) / (2 * m)


def hermite_functions(n_max: int, xi: np.ndarray) -> np.ndarray:
    """Normalized Hermite functions ``h_0..h_n_max`` of the scaled coordinate ``xi``.

    Built with the three-term recurrence on the normalized functions, which
    stays finite far beyond where raw Hermite polynomials overflow.
    """
    out = np.empty((n_max + 1,) + np.shape(xi))
    out[0] = np.pi**-0.25 * np.exp(-0.5 * xi**2)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * xi * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def ho_eigenstate(n, omega: float, m: float, grid: GridSpec,
                  consts: Constants = _NATURAL) -> SampledWaveFunction:
    """Oscillator eigenstate; ``n`` is an int (1D) or one quantum number per axis.

    Energy is ``hbar omega (sum(n) + dim/2)``.
    """
    ns = (n,) if np.isscalar(n) else tuple(n)
    if len(ns) != grid.dim:
        raise DomainError(f"need {grid.dim} quantum numbers, got {ns}")
    if any(int(q) != q or not 0 <= q <= 20 for q in ns):
        raise DomainError(f"quantum numbers must be integers in [0, 20], got {ns}")
    _check_mass(m)
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    alpha = math.sqrt(m * omega / consts.hbar)
    xi = alpha * grid.axis_coordinates
    table = hermite_functions(max(ns), xi) * math.sqrt(alpha)
    values = np.ones(grid.shape)
    for axis, q in enumerate(ns):
        shape = [1] * grid.dim
        shape[axis] = grid.points
        values = values * table[int(q)].reshape(shape)
    psi = SampledWaveFunction(grid, values)
    require_localized(psi)
    return psi.normalize()


def gaussian_packet(x0, k0, sigma: float, grid: GridSpec) -> SampledWaveFunction:
    """Normalized Gaussian with position spread ``sigma`` per axis and carrier ``k0``.

    ``|psi|^2`` is a normal density of standard deviation ``sigma``, so
    ``Delta x = sigma`` and ``Delta p = hbar / (2 sigma)``.  Requires
    ``sigma >= 4h`` and at least ``8 sigma`` between the centre and each edge.
    """
    x0 = np.broadcast_to(np.asarray(x0, dtype=float), (grid.dim,))
    k0 = np.broadcast_to(np.asarray(k0, dtype=float), (grid.dim,))
    if not sigma >= 4 * grid.spacing:
        raise DomainError(f"sigma = {sigma} is below 4h = {4 * grid.spacing}")
    lo, hi = grid.axis_coordinates[0], grid.axis_coordinates[-1]
    if np.any(x0 - lo < 8 * sigma) or np.any(hi - x0 < 8 * sigma):
        raise EdgeLeakage(f"centre {x0} is within 8 sigma of the box edge")
    exponent = 0
    for a in range(grid.dim):
        x = grid.coordinates(a)
        exponent = exponent - (x - x0[a]) ** 2 / (4 * sigma**2) + 1j * k0[a] * (x - x0[a])
    psi = SampledWaveFunction(grid, np.broadcast_to(np.exp(exponent), grid.shape))
    if edge_density_ratio(psi) > EDGE_TOLERANCE:
        raise EdgeLeakage("packet leaks across the periodic boundary")
    return psi.normalize()


def evolve_free(psi: SampledWaveFunction, t: float, m: float,
                consts: Constants = _NATURAL) -> SampledWaveFunction:
    """Exact free evolution generated by the power operator: ``exp(-i P t / eps)``.

    Each Fourier mode picks up the phase of its power eigenvalue
    ``eps hbar k^2 / 2m``, which is the Schrodinger phase ``exp(-i E t / hbar)``.
    """
    _check_mass(m)
    if t == 0:
        return psi.with_values(psi.values)
    grid = psi.grid
    k2 = sum((grid.axis_wavenumbers**2).reshape([-1 if a == b else 1 for b in range(grid.dim)])
             for a in range(grid.dim))
    power_eig = consts.epsilon * consts.hbar * k2 / (2 * m)
    coeffs = np.fft.fftn(psi.values)
    out = np.fft.ifftn(coeffs * np.exp(-1j * power_eig * t / consts.epsilon))
    return SampledWaveFunction(grid, out, psi.time_tag + t)


def oscillator_grid(n_max: int, omega: float, m: float, consts: Constants = _NATURAL,
                    points: int = 256) -> GridSpec:
    """1D grid wide enough for oscillator states up to ``n_max`` to decay at the edges."""
    ell = math.sqrt(consts.hbar / (m * omega))
    return GridSpec(1, points, 2 * (math.sqrt(2 * n_max + 1) + 7) * ell)
