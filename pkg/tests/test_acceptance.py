"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
(see conftest.py), so ``pytest tests/test_acceptance.py`` lists all eleven.
"""

import itertools
import math

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, EPS_SWEEP
from powerforce import angular, diffops, fock, quanta, relativity
from powerforce.constants import Constants, natural_units
from powerforce.diffops import (
    apply_force,
    apply_hamiltonian_free,
    apply_momentum,
    apply_power_free,
    commutator,
    eigen_estimate,
    evolve_free,
    force,
    gaussian_packet,
    ho_eigenstate,
    lattice_wavevector,
    oscillator_grid,
    plane_wave,
    position,
    power_ho,
)
from powerforce.grid import GridSpec, expectation, variance
from powerforce.verify import (
    EHRENFEST_GRID,
    TIME_GRID,
    UNCERTAINTY_GRID,
    VerifyConfig,
    random_band_limited,
    random_packet,
    random_superposition,
    run_all,
    time_derivative_residual,
)

SWEEP = [Constants(1.0, e, 1.0) for e in EPS_SWEEP]


@pytest.fixture
def record(request):
    """Collects named (value, limit) measurements and logs one line for the criterion."""
    title = request.node.function.__doc__.strip().splitlines()[0]
    worst = {}

    def note(name, value, limit):
        value = float(value)
        if name not in worst or value > worst[name][0]:
            worst[name] = (value, limit)

    yield note
    ok = all(v <= lim for v, lim in worst.values()) and getattr(request.node, "call_passed", False)
    detail = ", ".join(f"{k}={v:.2e}/{lim:.0e}" for k, (v, lim) in sorted(worst.items()))
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {title}  [{detail}]")


def _check(note, name, value, limit):
    note(name, value, limit)
    assert value <= limit, f"{name}: {value:.3e} > {limit:.1e}"


def test_c01_force_plane_wave_eigenvalues(record):
    """C01 force eigenvalues on 20 commensurate plane waves"""
    g = GridSpec(3, 64, 5.0)
    rng = np.random.default_rng(1)
    modes = [(0, 0, 0)] + [tuple(rng.integers(-31, 32, size=3)) for _ in range(19)]
    for c in SWEEP:
        for n in modes:
            k = lattice_wavevector(n, g)
            pw = plane_wave(k, g)
            for a in range(3):
                lam, _ = eigen_estimate(force(a, c), pw)
                res = np.max(np.abs(force(a, c)(pw).values - c.epsilon * k[a] * pw.values))
                _check(record, "residual", res, 1e-10)
                _check(record, "rayleigh", abs(lam - c.epsilon * k[a]), 1e-11)


def test_c02_power_force_correspondence(record):
    """C02 P = (eps/hbar) H and F = (eps/hbar) p on 100 band-limited states"""
    g = GridSpec(3, 16, 4.0)
    rng = np.random.default_rng(2)
    states = [random_band_limited(g, rng) for _ in range(100)]
    for c in SWEEP:
        for psi in states:
            dp = (apply_power_free(psi, 1.0, c) - c.ratio * apply_hamiltonian_free(psi, 1.0, c)).norm()
            df = max((f - c.ratio * p).norm() for f, p in zip(apply_force(psi, c), apply_momentum(psi, c)))
            _check(record, "power", dp, 1e-12)
            _check(record, "force", df, 1e-12)


def test_c03_position_force_commutator(record):
    """C03 [x, F_x] psi = i eps psi on 50 localized states"""
    rng = np.random.default_rng(3)
    states = [random_packet(UNCERTAINTY_GRID, rng) for _ in range(50)]
    for c in SWEEP:
        comm = commutator(position(0), force(0, c))
        for psi in states:
            _check(record, "commutator", (comm(psi) - (1j * c.epsilon) * psi).max_abs(), 1e-8)


def test_c04_torque_algebra(record):
    """C04 torque algebra, mixed commutator, Casimir and magnitude for l = 0..10"""
    # Absolute residuals scale with eps^2; the sweep at eps = 5 is covered by the
    # verify suite with proportionally scaled tolerances.
    for c, l in itertools.product((natural_units(), Constants(1.0, 0.37, 1.0)), range(11)):
        M = angular.multiplet(l, c)
        _check(record, "torque_algebra", angular.check_torque_algebra(M), 1e-13)
        _check(record, "mixed", angular.check_mixed_commutator(M), 1e-13)
        cas = np.max(np.abs(M.casimir_T() - c.epsilon**2 * l * (l + 1) * np.eye(M.dimension)))
        _check(record, "casimir", cas, 1e-12)
        mag = abs(angular.torque_magnitude(l, c) - angular.torque_magnitude_from_matrices(M))
        _check(record, "magnitude", mag, 1e-12)


def test_c05_oscillator_power_spectrum(record):
    """C05 oscillator power eps omega (n + 1/2) for n = 0..10"""
    for omega in (1.0, 2.0):
        for eps in (1.0, 0.5):
            c = Constants(1.0, eps, 1.0)
            g = oscillator_grid(10, omega, 1.0, c)
            op = power_ho(1.0, omega, c)
            for n in range(11):
                expected = eps * omega * (n + 0.5)
                got = expectation(op, ho_eigenstate(n, omega, 1.0, g, c)).real
                _check(record, "relative", abs(got - expected) / expected, 1e-6)


def test_c06_impulse_and_closure(record):
    """C06 impulse identity and closure over 10^4 collision events"""
    for c in SWEEP:
        for ev in quanta.random_events(10_000, 6, c):
            rep = quanta.conservation_check(ev.records)
            _check(record, "momentum_closure", rep.momentum_residual / rep.scale, 1e-12)
            _check(record, "energy_closure", rep.energy_residual / rep.scale, 1e-12)
            for r in ev.records:
                _check(record, "impulse", np.max(np.abs(quanta.impulse_of(r, c) - r.delta_p)), 1e-15)


def _product(psi, c):
    return math.sqrt(variance(position(0), psi) * variance(force(0, c), psi))


def test_c07_position_force_uncertainty(record):
    """C07 Gaussian saturation, superposition floor and Hermite n = 1"""
    g = UNCERTAINTY_GRID
    rng = np.random.default_rng(7)
    supers = [random_superposition(g, rng) for _ in range(100)]
    h1 = ho_eigenstate(1, 1.0, 1.0, g)
    for c in SWEEP:
        half = 0.5 * c.epsilon
        for x0, k0, s in [(0.0, 0.0, 1.0), (1.5, 0.7, 0.8), (-2.0, -1.3, 1.2), (0.5, 2.0, 0.6)]:
            _check(record, "gaussian", abs(_product(gaussian_packet(x0, k0, s, g), c) - half), 1e-8)
        for psi in supers:
            # shortfall below eps/2, allowing rounding slack
            _check(record, "floor", max(half - _product(psi, c), 0.0), 1e-9)
        _check(record, "hermite_n1", abs(_product(h1, c) - 3 * half), 1e-6)


def test_c08_relativistic_power(record):
    """C08 relativistic power routes, 3-4-5 and rest cases"""
    rng = np.random.default_rng(8)
    for _ in range(10_000):
        c = Constants(1.0, rng.uniform(0.1, 10.0), rng.uniform(0.5, 3.0))
        m = rng.uniform(0.0, 5.0)
        F = rng.uniform(-5.0, 5.0, size=3)
        a = relativity.power_from_force(F, m, c)
        b = relativity.power_via_four_force(F, m, c)
        _check(record, "routes", abs(a - b) / a, 1e-12)
    nat = natural_units()
    _check(record, "pythagorean", abs(relativity.power_from_force((3.0, 0.0, 0.0), 4.0, nat) - 5.0), 1e-15)
    for c in SWEEP:
        m = 1.3
        rest = relativity.power_from_force((0.0, 0.0, 0.0), m, c)
        _check(record, "rest", abs(rest - c.epsilon * c.c**2 * m / c.hbar) / rest, 1e-15)


def test_c09_time_power_and_ehrenfest(record):
    """C09 i eps d_t psi = P psi at second order and constant <F> for free packets"""
    psi0 = gaussian_packet(-10.0, 0.3, 3.0, TIME_GRID)
    far = gaussian_packet(-60.0, 1.0, 2.0, EHRENFEST_GRID)
    times = np.linspace(0.0, 10.0, 21)
    states = [evolve_free(far, t, 1.0) for t in times]
    for c in SWEEP:
        _check(record, "residual_dt1e-3", time_derivative_residual(psi0, 1.0, 1e-3, 1.0, c), 1e-8)
        res = [time_derivative_residual(psi0, 1.0, dt, 1.0, c) for dt in (0.4, 0.2, 0.1)]
        for a, b in zip(res, res[1:]):
            _check(record, "order_deviation", abs(a / b - 4.0) / 4.0, 0.2)
        fx = np.array([expectation(force(0, c), s).real for s in states])
        _check(record, "force_drift", np.max(np.abs(fx - fx[0])), 1e-9)


def test_c10_fock_exhaustive(record):
    """C10 photon-mode power and force consistency, exhaustive on 2 modes, cutoff 2"""
    two = fock.ModeSet((fock.Mode((1.0, 0.0, 0.0), 1), fock.Mode((0.0, 2.0, 1.0), 2)), 2)
    opposite = fock.ModeSet((fock.Mode((1.5, 0.0, -0.5), 1), fock.Mode((-1.5, 0.0, 0.5), 1)), 2)
    for c in SWEEP:
        rep = fock.em_consistency_check(two, c)
        assert len(rep.rows) == 9
        _check(record, "consistency", rep.max_residual, 0.0)
        for n in range(3):
            f, _ = fock.apply_em_force(fock.FockState((n, n)), opposite, c)
            _check(record, "opposite_k", np.max(np.abs(f)), 0.0)


def test_c11_report_determinism(record):
    """C11 byte-identical reports from two runs with the same config and seed"""
    cfg = VerifyConfig()
    first = run_all(cfg)
    second = run_all(cfg)
    a, b = first.to_json().encode(), second.to_json().encode()
    _check(record, "differing_bytes", float(a != b), 0.0)
    _check(record, "failed_checks", first.summary["failed"], 0)
