"""Energy/momentum transfer events and the power, force, impulse and torque they carry.

A collision changes each particle's kinetic energy, momentum and orbital
angular momentum by ``(dE, dp, dl)``.  The transfer is taken to last the
fixed interval ``hbar/eps``, which gives

    P = (eps/hbar) dE = eps * varpi        F = (eps/hbar) dp = eps * kappa
    tau = (eps/hbar) dl                    J = (hbar/eps) F = dp
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .constants import Constants, natural_units
from .errors import DomainError, EmptyHistory, IdentityMismatch, ParseError

_NATURAL = natural_units()


def _vec(v) -> np.ndarray:
    arr = np.array(v, dtype=float).reshape(3)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ParticleState:
    mass: float
    momentum: np.ndarray
    position: np.ndarray = field(default_factory=lambda: _vec((0.0, 0.0, 0.0)))

    def __post_init__(self):
        if not self.mass >= 0 or not math.isfinite(self.mass):
            raise DomainError(f"mass must be non-negative, got {self.mass}")
        object.__setattr__(self, "momentum", _vec(self.momentum))
        object.__setattr__(self, "position", _vec(self.position))

    @property
    def kinetic_energy(self) -> float:
        if self.mass == 0:
            raise DomainError("massless particles have no non-relativistic kinetic energy")
        return float(self.momentum @ self.momentum) / (2 * self.mass)

    @property
    def angular_momentum(self) -> np.ndarray:
        return np.cross(self.position, self.momentum)


@dataclass(frozen=True, eq=False)
class QuantaRecord:
    """One transfer event: ``delta_E = hbar varpi``, ``delta_p = hbar kappa``."""

    delta_E: float
    delta_p: np.ndarray
    delta_l: np.ndarray
    varpi: float
    kappa: np.ndarray

    def scaled(self, alpha: float) -> "QuantaRecord":
        return QuantaRecord(alpha * self.delta_E, alpha * self.delta_p, alpha * self.delta_l,
                            alpha * self.varpi, alpha * self.kappa)


def make_record(delta_E: float, delta_p, delta_l=(0.0, 0.0, 0.0),
                consts: Constants = _NATURAL) -> QuantaRecord:
    dp = _vec(delta_p)
    return QuantaRecord(float(delta_E), dp, _vec(delta_l),
                        float(delta_E) / consts.hbar, _vec(dp / consts.hbar))


def zero_record() -> QuantaRecord:
    return make_record(0.0, (0.0, 0.0, 0.0))


def elastic_collide_1d(p1: ParticleState, p2: ParticleState, axis=(1.0, 0.0, 0.0)
                       ) -> tuple[ParticleState, ParticleState]:
    """Closed-form elastic collision along the unit vector ``axis``.

    Momentum components transverse to ``axis`` are untouched; positions stay
    fixed (impulsive contact).
    """
    m1, m2 = p1.mass, p2.mass
    if not (m1 > 0 and m2 > 0):
        raise DomainError("elastic collision needs two massive particles")
    n = np.asarray(axis, dtype=float)
    norm = float(np.linalg.norm(n))
    if norm == 0 or not math.isfinite(norm):
        raise DomainError("collision axis must be a non-zero vector")
    n = n / norm
    a1, a2 = float(p1.momentum @ n), float(p2.momentum @ n)
    total = m1 + m2
    # Momentum exchanged along n; zero when the velocities match.
    exchange = 2 * (m1 * a2 - m2 * a1) / total
    out1 = ParticleState(m1, p1.momentum + exchange * n, p1.position)
    out2 = ParticleState(m2, p2.momentum - exchange * n, p2.position)
    return out1, out2


def quanta_of(before: ParticleState, after: ParticleState,
              consts: Constants = _NATURAL) -> QuantaRecord:
    if before.mass != after.mass:
        raise IdentityMismatch(f"mass changed from {before.mass} to {after.mass}")
    dE = after.kinetic_energy - before.kinetic_energy
    dp = after.momentum - before.momentum
    dl = after.angular_momentum - before.angular_momentum
    return make_record(dE, dp, dl, consts)


def power_of(q: QuantaRecord, consts: Constants = _NATURAL) -> float:
    return consts.ratio * q.delta_E


def force_of(q: QuantaRecord, consts: Constants = _NATURAL) -> np.ndarray:
    return consts.ratio * q.delta_p


def torque_of(q: QuantaRecord, consts: Constants = _NATURAL) -> np.ndarray:
    return consts.ratio * q.delta_l


def power_from_frequency(q: QuantaRecord, consts: Constants = _NATURAL) -> float:
    return consts.epsilon * q.varpi


def force_from_wavevector(q: QuantaRecord, consts: Constants = _NATURAL) -> np.ndarray:
    return consts.epsilon * q.kappa


def impulse_of(q: QuantaRecord, consts: Constants = _NATURAL) -> np.ndarray:
    """``J = (hbar/eps) F``, delivered over one transfer interval."""
    return consts.tau0 * force_of(q, consts)


@dataclass(frozen=True)
class ConservationReport:
    momentum_residual: float
    energy_residual: float
    scale: float
    tolerance: float

    @property
    def passed(self) -> bool:
        limit = self.tolerance * self.scale
        return self.momentum_residual <= limit and self.energy_residual <= limit


def conservation_check(records: Sequence[QuantaRecord], delta_ke_total: float = 0.0,
                       tolerance: float = 1e-12) -> ConservationReport:
    """Closure of one interaction: ``sum(rho) = 0`` and ``sum(E) = delta_ke_total``.

    Residuals are compared against ``tolerance * scale`` where ``scale`` is the
    largest single transfer (at least 1).
    """
    if not records:
        return ConservationReport(0.0, abs(delta_ke_total), 1.0, tolerance)
    rho = np.sum([r.delta_p for r in records], axis=0)
    energy = math.fsum(r.delta_E for r in records)
    scale = max([1.0] + [float(np.max(np.abs(r.delta_p))) for r in records]
                + [abs(r.delta_E) for r in records])
    return ConservationReport(float(np.max(np.abs(rho))), abs(energy - delta_ke_total),
                              scale, tolerance)


def coarse_grained_force(history: Sequence[QuantaRecord], consts: Constants = _NATURAL) -> np.ndarray:
    """Total momentum change over ``N`` transfer intervals of length ``hbar/eps``."""
    if len(history) == 0:
        raise EmptyHistory("coarse-grained force needs at least one event")
    total = np.sum([q.delta_p for q in history], axis=0)
    return total / (len(history) * consts.tau0)


# ---------------------------------------------------------------------------
# Random event generation and trace export


@dataclass(frozen=True)
class CollisionEvent:
    event_id: int
    before: tuple[ParticleState, ParticleState]
    after: tuple[ParticleState, ParticleState]
    records: tuple[QuantaRecord, QuantaRecord]


def random_events(n_events: int, seed: int, consts: Constants = _NATURAL,
                  momentum_scale: float = 1.0) -> list[CollisionEvent]:
    """Independent two-body elastic events with seeded random kinematics.

    Masses are drawn from [0.5, 2], momentum components from
    ``momentum_scale * [-1, 1]``, the contact normal uniformly on the sphere.
    Both particles sit at the same contact point, so angular momentum is
    exchanged as well.
    """
    rng = np.random.default_rng(seed)
    events = []
    for i in range(n_events):
        masses = rng.uniform(0.5, 2.0, size=2)
        moms = momentum_scale * rng.uniform(-1.0, 1.0, size=(2, 3))
        contact = rng.uniform(-1.0, 1.0, size=3)
        normal = rng.normal(size=3)
        a = ParticleState(masses[0], moms[0], contact)
        b = ParticleState(masses[1], moms[1], contact)
        a2, b2 = elastic_collide_1d(a, b, normal)
        recs = (quanta_of(a, a2, consts), quanta_of(b, b2, consts))
        events.append(CollisionEvent(i, (a, b), (a2, b2), recs))
    return events


def write_trace(events: Iterable[CollisionEvent], stream: TextIO) -> None:
    """One line per record: ``event_id particle_id dE dpx dpy dpz``."""
    stream.write("# event_id particle_id dE dpx dpy dpz\n")
    for ev in events:
        for pid, rec in enumerate(ev.records):
            dp = [float(v) for v in rec.delta_p]
            stream.write(f"{ev.event_id} {pid} {rec.delta_E!r} {dp[0]!r} {dp[1]!r} {dp[2]!r}\n")


def read_trace(stream: TextIO, consts: Constants = _NATURAL) -> dict[int, list[QuantaRecord]]:
    out: dict[int, list[QuantaRecord]] = {}
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 6:
            raise ParseError(f"line {lineno}: expected 6 columns, got {len(fields)}")
        try:
            eid = int(fields[0])
            dE, *dp = map(float, fields[2:])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        out.setdefault(eid, []).append(make_record(dE, dp, consts=consts))
    return out
