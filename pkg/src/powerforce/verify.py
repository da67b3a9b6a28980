"""Identity suites and the structured verification report.

Every suite is a function ``suite(config) -> list[CheckResult]``; they are
registered in :data:`SUITES` in execution order.  A check records the largest
residual it observed and the tolerance it was held to, never just a flag.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import angular, diffops, fock, quanta, relativity
from .constants import Constants, natural_units
from .diffops import (
    commutator,
    eigen_estimate,
    evolve_free,
    force,
    gaussian_packet,
    ho_eigenstate,
    lattice_wavevector,
    momentum,
    plane_wave,
    position,
)
from .grid import (
    GridSpec,
    SampledWaveFunction,
    dump,
    expectation,
    inner_product,
    load,
    spectral_norm2,
    variance,
)

# Tolerance tiers.
TOL_MATRIX = 1e-13
TOL_SPECTRAL = 1e-10
TOL_LOCAL = 1e-8
TOL_HO = 1e-6

DEFAULT_SWEEP = (1.0, 0.37, 5.0)
DEFAULT_SEED = 42


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    anchor: str
    residual: float
    tolerance: float
    metadata: dict = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        residual = float(self.residual)
        object.__setattr__(self, "residual", residual)
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "passed", bool(math.isfinite(residual) and residual <= self.tolerance))

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "metadata": dict(sorted(self.metadata.items())),
        }


@dataclass
class VerifyConfig:
    """Knobs for :func:`run_all`.

    ``points`` overrides the resolution of the plane-wave and finite-difference
    checks only; localized-state checks keep their own grids.
    """

    constants: Constants = field(default_factory=natural_units)
    epsilons: tuple[float, ...] = DEFAULT_SWEEP
    seed: int = DEFAULT_SEED
    suites: tuple[str, ...] | None = None
    points: int | None = None
    events: int = 10_000
    samples: int = 10_000
    superpositions: int = 100

    def sweep(self) -> list[Constants]:
        return [self.constants.with_epsilon(e) for e in self.epsilons]


@dataclass
class VerificationReport:
    constants: Constants
    checks: list[CheckResult]
    seed: int

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: c.check_id)

    @property
    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": n_pass,
                "failed": len(self.checks) - n_pass, "seed": self.seed}

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        doc = {
            "constants": self.constants.as_dict(),
            "checks": [c.as_dict() for c in self.checks],
            "summary": self.summary,
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_table(self) -> str:
        width = max([len(c.check_id) for c in self.checks] + [8])
        lines = [f"{'status':6}  {'check':{width}}  {'residual':>12}  {'tolerance':>10}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status:6}  {c.check_id:{width}}  {c.residual:12.3e}  {c.tolerance:10.1e}")
        s = self.summary
        lines.append(f"# {s['passed']}/{s['total']} passed, seed {s['seed']}")
        return "\n".join(lines) + "\n"


def _tag(consts: Constants) -> str:
    return f"eps={consts.epsilon:g}"


def _meta(consts: Constants, **extra) -> dict:
    meta = {"epsilon": consts.epsilon, "hbar": consts.hbar, "c": consts.c}
    meta.update(extra)
    return meta


def _max_abs(arr) -> float:
    return float(np.max(np.abs(arr))) if np.size(arr) else 0.0


# ---------------------------------------------------------------------------
# Shared state ensembles


def random_band_limited(grid: GridSpec, rng: np.random.Generator, max_mode: int = 4
                        ) -> SampledWaveFunction:
    """Random normalized superposition of plane waves with ``|n| <= max_mode`` per axis."""
    max_mode = min(max_mode, grid.points // 2 - 1)
    shape = (2 * max_mode + 1,) * grid.dim
    coeffs = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    spectrum = np.zeros(grid.shape, dtype=complex)
    idx = np.r_[0:max_mode + 1, -max_mode:0]
    src = np.r_[max_mode:2 * max_mode + 1, 0:max_mode]
    spectrum[np.ix_(*[idx] * grid.dim)] = coeffs[np.ix_(*[src] * grid.dim)]
    return SampledWaveFunction(grid, np.fft.ifftn(spectrum)).normalize()


def random_packet(grid: GridSpec, rng: np.random.Generator) -> SampledWaveFunction:
    """Gaussian with random width, centre and carrier, at least 12 sigma from each edge."""
    half = 0.5 * grid.length
    while True:
        sigma = rng.uniform(0.6, 1.4)
        x0 = rng.uniform(-0.15 * half, 0.15 * half, size=grid.dim)
        if np.all(half - np.abs(x0) > 12 * sigma + grid.spacing):
            break
    k0 = rng.uniform(-2.0, 2.0, size=grid.dim)
    return gaussian_packet(x0, k0, sigma, grid)


def random_superposition(grid: GridSpec, rng: np.random.Generator, n_max: int = 5
                         ) -> SampledWaveFunction:
    """Random complex combination of the lowest oscillator states (omega = m = hbar = 1)."""
    coeffs = rng.normal(size=n_max + 1) + 1j * rng.normal(size=n_max + 1)
    total = sum((c * ho_eigenstate(n, 1.0, 1.0, grid) for n, c in enumerate(coeffs)),
                SampledWaveFunction(grid, np.zeros(grid.shape)))
    return total.normalize()


UNCERTAINTY_GRID = GridSpec(1, 256, 32.0)
COMMUTATOR_GRID = GridSpec(1, 256, 32.0)
TORQUE_GRID = GridSpec(3, 64, 16.0)


def l1_state(grid: GridSpec = TORQUE_GRID, sign: int = 1, sigma: float = 1.0) -> SampledWaveFunction:
    """``(x +/- iy) exp(-r^2 / 2 sigma^2)``: an ``m = +/-1`` eigenfunction of ``l_z``."""
    x, y, z = grid.mesh()
    return SampledWaveFunction(grid, (x + sign * 1j * y) * np.exp(-(x * x + y * y + z * z) / (2 * sigma**2))).normalize()


def s_state(grid: GridSpec = TORQUE_GRID, sigma: float = 1.0) -> SampledWaveFunction:
    x, y, z = grid.mesh()
    return SampledWaveFunction(grid, np.exp(-(x * x + y * y + z * z) / (2 * sigma**2))).normalize()


# ---------------------------------------------------------------------------
# Suites


def constants_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for c in cfg.sweep():
        res = abs(c.tau0 * c.epsilon - c.hbar)
        out.append(CheckResult(f"constants.tau0_times_eps[{_tag(c)}]", "tau0 * eps = hbar",
                               res, 4 * np.finfo(float).eps * c.hbar, _meta(c)))
    return out


def grid_suite(cfg: VerifyConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed)
    out = []
    for g in (GridSpec(1, 64, 2 * math.pi), GridSpec(3, 16, 4.0)):
        tag = f"{g.dim}d"
        meta = {"dim": g.dim, "points": g.points, "length": g.length, "seed": cfg.seed}
        raw = SampledWaveFunction(g, rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape))
        a = raw.normalize()
        b = random_band_limited(g, rng)
        out.append(CheckResult(f"grid.normalize_unit[{tag}]", "||psi|| = 1",
                               abs(a.norm() - 1), 1e-12, meta))
        out.append(CheckResult(f"grid.normalize_idempotent[{tag}]", "normalize twice",
                               _max_abs(a.normalize().values - a.values), 1e-15, meta))
        out.append(CheckResult(f"grid.parseval[{tag}]", "sum |psi|^2 h^d = spectral sum",
                               abs(a.norm() ** 2 - spectral_norm2(a)), 1e-12, meta))
        out.append(CheckResult(f"grid.inner_symmetry[{tag}]", "<a|b> = conj <b|a>",
                               abs(inner_product(a, b) - inner_product(b, a).conjugate()), 1e-15, meta))
        modes = [np.zeros(g.dim, int), np.eye(g.dim, dtype=int)[0], -np.eye(g.dim, dtype=int)[-1],
                 np.full(g.dim, 2)]
        waves = [plane_wave(lattice_wavevector(n, g), g) for n in modes]
        worst = 0.0
        for i, w1 in enumerate(waves):
            for j, w2 in enumerate(waves):
                worst = max(worst, abs(inner_product(w1, w2) - (i == j)))
        out.append(CheckResult(f"grid.plane_wave_orthonormal[{tag}]", "<k1|k2> = delta",
                               worst, 1e-12, meta))
        buf = io.StringIO()
        dump(b, buf)
        buf.seek(0)
        back = load(buf)
        out.append(CheckResult(f"grid.dump_roundtrip[{tag}]", "text dump/load",
                               _max_abs(back.values - b.values), 0.0, meta))
    return out


def _smooth_periodic(grid: GridSpec) -> tuple[SampledWaveFunction, np.ndarray]:
    x = grid.axis_coordinates
    f = np.exp(np.sin(x))
    return SampledWaveFunction(grid, f), np.cos(x) * f


def _fd_error(points: int, backend: str) -> float:
    g = GridSpec(1, points, 2 * math.pi)
    psi, exact = _smooth_periodic(g)
    return _max_abs(diffops.gradient(psi, backend)[0].values - exact)


def diffops_suite(cfg: VerifyConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed)
    n1 = cfg.points or 128
    n3 = cfg.points or 16
    g1 = GridSpec(1, n1, 2 * math.pi)
    g3 = GridSpec(3, n3, 2 * math.pi)
    out = []
    m = 1.0
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, points=n3, seed=cfg.seed)
        # plane-wave force eigenvalues
        worst_res, worst_rq = 0.0, 0.0
        for n in ((1, 2, 3), (0, 0, 0), (-3, 1, 0), (2, -2, 1)):
            k = lattice_wavevector(n, g3)
            pw = plane_wave(k, g3)
            for a in range(3):
                lam, res = eigen_estimate(force(a, c), pw)
                worst_res = max(worst_res, _max_abs(force(a, c)(pw).values - c.epsilon * k[a] * pw.values))
                worst_rq = max(worst_rq, abs(lam - c.epsilon * k[a]))
        out.append(CheckResult(f"diffops.force_plane_wave_residual[{tag}]", "F psi_k = eps k psi_k",
                               worst_res, TOL_SPECTRAL, meta))
        out.append(CheckResult(f"diffops.force_plane_wave_rayleigh[{tag}]", "F psi_k = eps k psi_k",
                               worst_rq, 1e-11, meta))
        # power and momentum plane-wave eigenvalues
        k = lattice_wavevector((2, 0), GridSpec(2, n1, 2 * math.pi))
        pw2 = plane_wave(k, GridSpec(2, n1, 2 * math.pi))
        lam_p, res_p = eigen_estimate(diffops.power_free(m, c), pw2)
        lam_h, _ = eigen_estimate(diffops.hamiltonian_free(m, c), pw2)
        expected = c.epsilon * c.hbar * float(k @ k) / (2 * m)
        out.append(CheckResult(f"diffops.power_plane_wave[{tag}]", "P psi_k = (eps/hbar) E_k psi_k",
                               max(abs(lam_p - expected), res_p), TOL_SPECTRAL, meta))
        out.append(CheckResult(f"diffops.power_hamiltonian_ratio[{tag}]", "P/H = eps/hbar",
                               abs(lam_p / lam_h - c.ratio), 1e-13, meta))
        pw = plane_wave(lattice_wavevector((1, 2, 3), g3), g3)
        kk = lattice_wavevector((1, 2, 3), g3)
        res_mom = max(abs(eigen_estimate(momentum(a, c), pw)[0] - c.hbar * kk[a]) for a in range(3))
        out.append(CheckResult(f"diffops.momentum_plane_wave[{tag}]", "p psi_k = hbar k psi_k",
                               res_mom, TOL_SPECTRAL, meta))
        # correspondence on random band-limited states
        corr_f, corr_p, herm, comm_fp = 0.0, 0.0, 0.0, 0.0
        for _ in range(10):
            psi = random_band_limited(g3, rng)
            other = random_band_limited(g3, rng)
            fs, ps = diffops.apply_force(psi, c), diffops.apply_momentum(psi, c)
            corr_f = max(corr_f, max((f - c.ratio * p).norm() for f, p in zip(fs, ps)))
            corr_p = max(corr_p, (diffops.apply_power_free(psi, m, c)
                                  - c.ratio * diffops.apply_hamiltonian_free(psi, m, c)).norm())
            ops = [force(a, c) for a in range(3)] + [momentum(a, c) for a in range(3)]
            ops += [diffops.power_free(m, c), diffops.hamiltonian_free(m, c)]
            for op in ops:
                herm = max(herm, abs(inner_product(other, op(psi)) - inner_product(op(other), psi)))
            for a in range(3):
                for b in range(3):
                    comm_fp = max(comm_fp, commutator(force(a, c), momentum(b, c))(psi).norm())
        out.append(CheckResult(f"diffops.force_momentum_correspondence[{tag}]", "F = (eps/hbar) p",
                               corr_f, 1e-12, meta))
        out.append(CheckResult(f"diffops.power_hamiltonian_correspondence[{tag}]", "P = (eps/hbar) H",
                               corr_p, 1e-12, meta))
        out.append(CheckResult(f"diffops.hermiticity[{tag}]", "<a|Ob> = <Oa|b>", herm, TOL_SPECTRAL, meta))
        out.append(CheckResult(f"diffops.force_momentum_commute[{tag}]", "[F_b, p_n] = 0",
                               comm_fp, 1e-12, meta))
        # canonical-type commutator on localized packets
        worst = 0.0
        for _ in range(5):
            psi = random_packet(COMMUTATOR_GRID, rng)
            worst = max(worst, (commutator(position(0), force(0, c))(psi) - (1j * c.epsilon) * psi).max_abs())
        out.append(CheckResult(f"diffops.position_force_commutator[{tag}]", "[x, F_x] = i eps",
                               worst, TOL_LOCAL, _meta(c, points=COMMUTATOR_GRID.points, seed=cfg.seed)))
        # plane-wave time phase
        kx = lattice_wavevector((3,), g1)
        omega = diffops.free_frequency(kx, m, c)
        evolved = evolve_free(plane_wave(kx, g1), 0.7, m, c)
        res = _max_abs(evolved.values - plane_wave(kx, g1, t=0.7, omega=omega).values)
        out.append(CheckResult(f"diffops.plane_wave_phase[{tag}]", "phase k.r - omega t",
                               res, 1e-12, _meta(c, points=n1)))
    # finite-difference accuracy and convergence; eps-independent
    kx = lattice_wavevector((1,), g1)
    pw = plane_wave(kx, g1)
    meta = {"points": n1, "length": g1.length}
    for backend, tol in (("fd2", 1e-3), ("fd4", 1e-6)):
        lam, _ = eigen_estimate(force(0, backend=backend), pw)
        out.append(CheckResult(f"diffops.{backend}_plane_wave_eigenvalue", "F psi_k = eps k psi_k",
                               abs(lam - kx[0]) / kx[0], tol, meta))
    for backend, order in (("fd2", 2), ("fd4", 4)):
        ratio = _fd_error(n1, backend) / _fd_error(2 * n1, backend)
        nominal = 2.0**order
        out.append(CheckResult(f"diffops.{backend}_convergence_order", "error ratio 2^order",
                               abs(ratio - nominal) / nominal, 0.2, dict(meta, ratio=ratio)))
    out.append(CheckResult("diffops.spectral_smooth_gradient", "spectral derivative",
                           _fd_error(max(n1, 64), "spectral"), TOL_SPECTRAL, meta))
    return out


def angular_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for c in cfg.sweep():
        tag = _tag(c)
        # Absolute residuals grow with the entry size, eps^2 for products of T.
        s1, s2 = max(1.0, c.epsilon), max(1.0, c.epsilon**2)
        alg = mixed = cas = mag = spec = herm = 0.0
        for l in range(11):
            M = angular.multiplet(l, c)
            alg = max(alg, angular.check_torque_algebra(M))
            mixed = max(mixed, angular.check_mixed_commutator(M))
            cas = max(cas, _max_abs(M.casimir_T() - c.epsilon**2 * l * (l + 1) * np.eye(M.dimension)))
            mag = max(mag, abs(angular.torque_magnitude(l, c) - angular.torque_magnitude_from_matrices(M)))
            spec = max(spec, _max_abs(np.linalg.eigvalsh(M.Tz) - c.epsilon * np.arange(-l, l + 1)))
            herm = max(herm, max(_max_abs(a - a.conj().T) for a in M.L + M.T))
        meta = _meta(c, l_max=10)
        out.append(CheckResult(f"angular.torque_algebra[{tag}]", "[T_g, T_b] = i eps e_gbn T_n",
                               alg, TOL_MATRIX * s2, meta))
        out.append(CheckResult(f"angular.mixed_commutator[{tag}]", "[l_g, T_b] = i hbar e_gbn T_n",
                               mixed, TOL_MATRIX * s2, meta))
        out.append(CheckResult(f"angular.casimir[{tag}]", "T^2 = eps^2 l(l+1)", cas, 1e-12 * s2, meta))
        out.append(CheckResult(f"angular.torque_magnitude[{tag}]", "|tau| = eps sqrt(l(l+1))",
                               mag, 1e-12 * s1, meta))
        out.append(CheckResult(f"angular.tz_spectrum[{tag}]", "spec T_z = eps m", spec, TOL_MATRIX * s1, meta))
        out.append(CheckResult(f"angular.hermitian[{tag}]", "L, T Hermitian", herm, 1e-15, meta))
        # grid cross-check at l = 1
        worst = 0.0
        for sign in (1, -1):
            lam, res = eigen_estimate(diffops.torque(2, c), l1_state(sign=sign))
            worst = max(worst, abs(lam - sign * c.epsilon), res)
        out.append(CheckResult(f"angular.grid_torque_l1[{tag}]", "tau_z (x +/- iy)g = +/- eps",
                               worst, TOL_LOCAL, _meta(c, points=TORQUE_GRID.points)))
        s = s_state()
        out.append(CheckResult(f"angular.grid_torque_l0[{tag}]", "tau (s-state) = 0",
                               max(t.max_abs() for t in diffops.apply_torque_grid(s, c)), TOL_SPECTRAL,
                               _meta(c, points=TORQUE_GRID.points)))
        psi = l1_state()
        taus = diffops.apply_torque_grid(psi, c)
        ls = diffops.apply_angular_momentum(psi, c)
        out.append(CheckResult(f"angular.grid_torque_vs_l[{tag}]", "tau = (eps/hbar) l",
                               max(_max_abs(t.values - c.ratio * q.values) for t, q in zip(taus, ls)),
                               1e-12, _meta(c, points=TORQUE_GRID.points)))
    return out


def quanta_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    reference = None
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, events=cfg.events, seed=cfg.seed)
        events = quanta.random_events(cfg.events, cfg.seed, c)
        recs = [r for ev in events for r in ev.records]
        impulse = np.array([quanta.impulse_of(r, c) for r in recs])
        dps = np.array([r.delta_p for r in recs])
        out.append(CheckResult(f"quanta.impulse_identity[{tag}]", "J = (hbar/eps) F = dp",
                               _max_abs(impulse - dps), 1e-15, meta))
        if reference is None:
            reference = impulse
        out.append(CheckResult(f"quanta.impulse_eps_invariance[{tag}]", "J independent of eps",
                               _max_abs(impulse - reference), 1e-15, meta))
        mom = eng = 0.0
        for ev in events:
            rep = quanta.conservation_check(ev.records)
            mom = max(mom, rep.momentum_residual / rep.scale)
            eng = max(eng, rep.energy_residual / rep.scale)
        out.append(CheckResult(f"quanta.momentum_closure[{tag}]", "sum rho = 0", mom, 1e-12, meta))
        out.append(CheckResult(f"quanta.energy_closure[{tag}]", "sum E = dKE = 0", eng, 1e-12, meta))
        routes = max(max(abs(quanta.power_of(r, c) - quanta.power_from_frequency(r, c)),
                         _max_abs(quanta.force_of(r, c) - quanta.force_from_wavevector(r, c)))
                     for r in recs)
        out.append(CheckResult(f"quanta.frequency_route[{tag}]", "P = eps varpi, F = eps kappa",
                               routes, 1e-14 * max(1.0, c.epsilon), meta))
        history = [ev.records[0] for ev in events]
        mean_force = np.mean([quanta.force_of(r, c) for r in history], axis=0)
        out.append(CheckResult(f"quanta.coarse_grained_force[{tag}]", "sum dp / (N hbar/eps)",
                               _max_abs(quanta.coarse_grained_force(history, c) - mean_force),
                               1e-14, meta))
    a = quanta.ParticleState(1.0, (2.0, 0.0, 0.0))
    b = quanta.ParticleState(1.0, (0.0, 0.0, 0.0))
    a2, b2 = quanta.elastic_collide_1d(a, b)
    out.append(CheckResult("quanta.equal_mass_exchange", "elastic kinematics",
                           max(_max_abs(a2.momentum), abs(b2.momentum[0] - 2.0)), 1e-15, {}))
    heavy = quanta.ParticleState(1e12, (0.0, 0.0, 0.0))
    a3, _ = quanta.elastic_collide_1d(a, heavy)
    out.append(CheckResult("quanta.wall_limit", "m2 -> inf reflects",
                           abs(a3.momentum[0] + 2.0) / 2.0, 1e-5, {}))
    return out


def relativity_suite(cfg: VerifyConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed)
    out = []
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, samples=cfg.samples, seed=cfg.seed)
        agree = norm = 0.0
        for _ in range(cfg.samples):
            mass = rng.uniform(0.5, 2.0)
            F = rng.uniform(-2.0, 2.0, size=3)
            direct = relativity.power_from_force(F, mass, c)
            agree = max(agree, abs(direct - relativity.power_via_four_force(F, mass, c)) / direct)
            pmu = relativity.four_momentum(mass, c.tau0 * F, c)
            ff = relativity.four_force(pmu, c)
            target = c.ratio * mass * c.c
            norm = max(norm, abs(math.sqrt(ff.norm2()) - target) / target)
        out.append(CheckResult(f"relativity.power_routes_agree[{tag}]", "P = sqrt(F^2c^2 + (eps/hbar)^2 m^2 c^4)",
                               agree, 1e-12, meta))
        out.append(CheckResult(f"relativity.four_force_norm[{tag}]", "|F^mu| = (eps/hbar) m c",
                               norm, 1e-12, meta))
        rest = relativity.power_from_force((0, 0, 0), 1.3, c)
        out.append(CheckResult(f"relativity.rest_power[{tag}]", "P = eps c^2 m / hbar",
                               abs(rest - relativity.rest_power(1.3, c)) / rest, 1e-15, meta))
        massless = relativity.power_from_force((0.0, 2.0, 0.0), 0.0, c)
        out.append(CheckResult(f"relativity.massless[{tag}]", "P = |F| c",
                               abs(massless - 2.0 * c.c), 0.0, meta))
        eig, res = relativity.four_force_operator_check(2.0, 1.0, c)
        out.append(CheckResult(f"relativity.four_force_operator[{tag}]", "i eps d^mu -> (P/c, F)",
                               max(res, _max_abs(eig - np.array([c.epsilon * 2.0 / c.c, c.epsilon]))),
                               TOL_LOCAL, meta))
    # eps drawn per sample
    worst = 0.0
    for _ in range(cfg.samples):
        c = natural_units().with_epsilon(rng.uniform(0.1, 10.0))
        mass = rng.uniform(0.5, 2.0)
        F = rng.uniform(-2.0, 2.0, size=3)
        direct = relativity.power_from_force(F, mass, c)
        worst = max(worst, abs(direct - relativity.power_via_four_force(F, mass, c)) / direct)
    out.append(CheckResult("relativity.power_routes_random_eps", "P routes, random eps",
                           worst, 1e-12, {"samples": cfg.samples, "seed": cfg.seed}))
    nat = natural_units()
    out.append(CheckResult("relativity.pythagorean", "F=3, m=4 -> P=5",
                           abs(relativity.power_from_force((3.0, 0, 0), 4.0, nat) - 5.0), 0.0, {}))
    return out


def fock_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    two = fock.ModeSet((fock.Mode((1.0, 0.0, 0.0), 1), fock.Mode((0.0, 2.0, 1.0), 2)), cutoff=2)
    opposite = fock.ModeSet((fock.Mode((1.5, 0.0, -0.5), 1), fock.Mode((-1.5, 0.0, 0.5), 1)), cutoff=3)
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, modes=len(two), cutoff=two.cutoff)
        rep = fock.em_consistency_check(two, c)
        out.append(CheckResult(f"fock.power_force_consistency[{tag}]", "P = (eps/hbar) H_EM, F = (eps/hbar) p_EM",
                               rep.max_residual, 0.0, dict(meta, states=len(rep.rows))))
        worst = 0.0
        for n in range(opposite.cutoff + 1):
            f, _ = fock.apply_em_force(fock.FockState((n, n)), opposite, c)
            worst = max(worst, _max_abs(f))
        out.append(CheckResult(f"fock.opposite_k_cancellation[{tag}]", "F(k, n; -k, n) = 0",
                               worst, 0.0, meta))
        single = fock.ModeSet((fock.Mode((2.0, 0.0, 0.0), 1),), cutoff=3)
        p, _ = fock.apply_em_power(fock.FockState((3,)), single, c)
        out.append(CheckResult(f"fock.single_mode_power[{tag}]", "P = eps omega n",
                               abs(p - 6.0 * c.epsilon), 1e-15 * max(1.0, c.epsilon), meta))
        off = max(_max_abs(mat - np.diag(np.diag(mat)))
                  for mat in [fock.power_matrix(two, c)] + fock.force_matrices(two, c))
        out.append(CheckResult(f"fock.diagonal[{tag}]", "number-diagonal", off, 0.0, meta))
        vac, _ = fock.apply_em_power(fock.vacuum(two), two, c)
        out.append(CheckResult(f"fock.vacuum[{tag}]", "P |0> = 0", abs(vac), 0.0, meta))
    return out


def _position_force_product(psi: SampledWaveFunction, c: Constants) -> float:
    return math.sqrt(variance(position(0), psi) * variance(force(0, c), psi))


def uncertainty_suite(cfg: VerifyConfig) -> list[CheckResult]:
    g = UNCERTAINTY_GRID
    family = [(0.0, 0.0, 1.0), (1.5, 0.7, 0.8), (-2.0, -1.3, 1.2), (0.5, 2.0, 0.6)]
    out = []
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, points=g.points, length=g.length, seed=cfg.seed)
        half = 0.5 * c.epsilon
        gauss = max(abs(_position_force_product(gaussian_packet(x0, k0, s, g), c) - half)
                    for x0, k0, s in family)
        out.append(CheckResult(f"uncertainty.gaussian_saturation[{tag}]", "dx dF = eps/2",
                               gauss, TOL_LOCAL, meta))
        h1 = ho_eigenstate(1, 1.0, 1.0, g, c)
        out.append(CheckResult(f"uncertainty.hermite_n1[{tag}]", "dx dF = 3 eps/2 for n=1",
                               abs(_position_force_product(h1, c) - 3 * half), TOL_HO, meta))
        rng = np.random.default_rng(cfg.seed)
        shortfall = 0.0
        for _ in range(cfg.superpositions):
            shortfall = max(shortfall, half - _position_force_product(random_superposition(g, rng), c))
        out.append(CheckResult(f"uncertainty.superposition_floor[{tag}]", "dx dF >= eps/2",
                               max(shortfall, 0.0), 1e-9, dict(meta, states=cfg.superpositions)))
        # time-power relation in its derived form on moving free Gaussians
        m = 1.0
        floor = closed = 0.0
        for x0, k0, s in family:
            if k0 == 0.0:
                continue
            psi = gaussian_packet(x0, k0, s, g)
            dx = math.sqrt(variance(position(0), psi))
            speed = abs(expectation(momentum(0, c), psi).real) / m
            d_power = math.sqrt(variance(diffops.power_free(m, c), psi))
            product = dx / speed * d_power
            floor = max(floor, half - product)
            closed = max(closed, abs(product - half * math.sqrt(1 + 1 / (8 * s * s * k0 * k0))))
        out.append(CheckResult(f"uncertainty.time_power_floor[{tag}]", "dt dP >= eps/2 (derived form)",
                               max(floor, 0.0), 1e-9, dict(meta, form="derived")))
        out.append(CheckResult(f"uncertainty.time_power_gaussian[{tag}]", "dt dP on Gaussians (derived form)",
                               closed, TOL_LOCAL, dict(meta, form="derived")))
    return out


TIME_GRID = GridSpec(1, 256, 96.0)


def time_derivative_residual(psi0: SampledWaveFunction, t: float, dt: float, m: float,
                             c: Constants) -> float:
    """``|| i eps (psi(t+dt) - psi(t-dt)) / 2dt - P psi(t) ||`` under exact free evolution."""
    ahead = evolve_free(psi0, t + dt, m, c)
    behind = evolve_free(psi0, t - dt, m, c)
    now = evolve_free(psi0, t, m, c)
    lhs = (1j * c.epsilon / (2 * dt)) * (ahead - behind)
    return (lhs - diffops.apply_power_free(now, m, c)).norm()


def time_power_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    m = 1.0
    psi0 = gaussian_packet(-10.0, 0.3, 3.0, TIME_GRID)
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, points=TIME_GRID.points, length=TIME_GRID.length)
        out.append(CheckResult(f"time_power.residual_small_dt[{tag}]", "i eps d_t psi = P psi",
                               time_derivative_residual(psi0, 1.0, 1e-3, m, c), TOL_LOCAL,
                               dict(meta, dt=1e-3)))
        steps = [0.4, 0.2, 0.1]
        res = [time_derivative_residual(psi0, 1.0, dt, m, c) for dt in steps]
        worst = max(abs(res[i] / res[i + 1] - 4.0) / 4.0 for i in range(len(res) - 1))
        out.append(CheckResult(f"time_power.second_order[{tag}]", "residual ~ dt^2",
                               worst, 0.2, dict(meta, residuals=res)))
        g = GridSpec(1, 64, 2 * math.pi)
        k = lattice_wavevector((2,), g)
        pw = plane_wave(k, g)
        power = c.epsilon * diffops.free_frequency(k, m, c)
        phase = np.exp(-1j * power * 1.0 / c.epsilon)
        out.append(CheckResult(f"time_power.plane_wave_phase[{tag}]", "phase exp(-i P t / eps)",
                               _max_abs(evolve_free(pw, 1.0, m, c).values - phase * pw.values), 1e-12, meta))
        out.append(CheckResult(f"time_power.initial_time[{tag}]", "t = 0 identity",
                               _max_abs(evolve_free(psi0, 0.0, m, c).values - psi0.values), 1e-15, meta))
    return out


EHRENFEST_GRID = GridSpec(1, 1024, 256.0)


def ehrenfest_force_suite(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    m, k0 = 1.0, 1.0
    psi0 = gaussian_packet(-60.0, k0, 2.0, EHRENFEST_GRID)
    times = np.linspace(0.0, 10.0, 21)
    states = [evolve_free(psi0, t, m) for t in times]
    for c in cfg.sweep():
        tag = _tag(c)
        meta = _meta(c, points=EHRENFEST_GRID.points, horizon=10.0)
        fx = np.array([expectation(force(0, c), s).real for s in states])
        px = np.array([expectation(momentum(0, c), s).real for s in states])
        out.append(CheckResult(f"ehrenfest.force_initial[{tag}]", "<F> = eps k0",
                               abs(fx[0] - c.epsilon * k0), TOL_SPECTRAL, meta))
        out.append(CheckResult(f"ehrenfest.force_drift[{tag}]", "d<F>/dt = 0", _max_abs(fx - fx[0]), 1e-9, meta))
        out.append(CheckResult(f"ehrenfest.momentum_drift[{tag}]", "d<p>/dt = 0", _max_abs(px - px[0]), 1e-9, meta))
        out.append(CheckResult(f"ehrenfest.drift_ratio[{tag}]", "dF = (eps/hbar) dp",
                               _max_abs((fx - fx[0]) - c.ratio * (px - px[0])), 1e-12, meta))
        g = GridSpec(1, 64, 2 * math.pi)
        pw = plane_wave(lattice_wavevector((3,), g), g)
        vals = [expectation(force(0, c), evolve_free(pw, t, m, c)).real for t in times]
        out.append(CheckResult(f"ehrenfest.plane_wave_constant[{tag}]", "eigenstate <F> constant",
                               _max_abs(np.array(vals) - vals[0]), 1e-12, meta))
    return out


SUITES: dict[str, Callable[[VerifyConfig], list[CheckResult]]] = {
    "constants": constants_suite,
    "grid": grid_suite,
    "diffops": diffops_suite,
    "angular": angular_suite,
    "quanta": quanta_suite,
    "relativity": relativity_suite,
    "fock": fock_suite,
    "uncertainty": uncertainty_suite,
    "time_power": time_power_suite,
    "ehrenfest": ehrenfest_force_suite,
}


def run_all(cfg: VerifyConfig | None = None) -> VerificationReport:
    """Run the configured suites (all when ``cfg.suites`` is None).

    Failed checks are recorded, not raised; errors while building a suite's
    states propagate.
    """
    cfg = cfg or VerifyConfig()
    names = list(SUITES) if cfg.suites is None else list(cfg.suites)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    checks = []
    for name in names:
        checks.extend(SUITES[name](cfg))
    return VerificationReport(cfg.constants, checks, cfg.seed)
