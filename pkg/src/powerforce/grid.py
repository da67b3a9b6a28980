"""Uniform periodic grids and complex wavefunctions sampled on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, TextIO

import numpy as np

from .errors import DomainError, EdgeLeakage, GridMismatch, ParseError

# Boundary density, relative to the peak density, above which a state counts
# as leaking across the periodic seam.
EDGE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Periodic box ``[-L/2, L/2)^dim`` sampled with ``points`` nodes per axis."""

    dim: int
    points: int
    length: float

    def __post_init__(self) -> None:
        if self.dim not in (1, 2, 3):
            raise DomainError(f"dim must be 1, 2 or 3, got {self.dim}")
        n = self.points
        if not isinstance(n, (int, np.integer)) or n < 8 or n & (n - 1):
            raise DomainError(f"points must be a power of two >= 8, got {n}")
        if not np.isfinite(self.length) or self.length <= 0:
            raise DomainError(f"length must be positive, got {self.length}")
        object.__setattr__(self, "points", int(n))
        object.__setattr__(self, "length", float(self.length))

    @property
    def spacing(self) -> float:
        return self.length / self.points

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @cached_property
    def axis_coordinates(self) -> np.ndarray:
        """1D node positions, identical along every axis."""
        return -0.5 * self.length + self.spacing * np.arange(self.points)

    @cached_property
    def axis_wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers in numpy FFT ordering."""
        return 2 * np.pi * np.fft.fftfreq(self.points, d=self.spacing)

    def coordinates(self, axis: int) -> np.ndarray:
        """Position of every node along ``axis``, broadcastable to ``shape``."""
        self._check_axis(axis)
        shape = [1] * self.dim
        shape[axis] = self.points
        return self.axis_coordinates.reshape(shape)

    def mesh(self) -> list[np.ndarray]:
        return [np.broadcast_to(self.coordinates(a), self.shape) for a in range(self.dim)]

    def _check_axis(self, axis: int) -> None:
        if not 0 <= axis < self.dim:
            raise DomainError(f"axis {axis} out of range for a {self.dim}D grid")


class SampledWaveFunction:
    """Immutable complex samples of a wavefunction on a :class:`GridSpec`.

    Supports the vector-space operations needed to build superpositions and
    commutators: ``a + b``, ``a - b``, ``alpha * a``.
    """

    __slots__ = ("grid", "values", "time_tag")

    def __init__(self, grid: GridSpec, values, time_tag: float = 0.0):
        arr = np.array(values, dtype=complex)
        if arr.shape != grid.shape:
            if arr.size != grid.points**grid.dim:
                raise GridMismatch(f"expected {grid.shape} samples, got shape {arr.shape}")
            arr = arr.reshape(grid.shape)
        arr.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "time_tag", float(time_tag))

    def __setattr__(self, name, value):
        raise AttributeError("SampledWaveFunction is immutable")

    def __repr__(self) -> str:
        return (f"SampledWaveFunction(dim={self.grid.dim}, points={self.grid.points}, "
                f"length={self.grid.length}, time_tag={self.time_tag}, norm={self.norm():.6g})")

    def with_values(self, values, time_tag: float | None = None) -> "SampledWaveFunction":
        return SampledWaveFunction(self.grid, values, self.time_tag if time_tag is None else time_tag)

    def _combine(self, other, op) -> "SampledWaveFunction":
        if not isinstance(other, SampledWaveFunction):
            return NotImplemented
        _require_same_grid(self, other)
        return self.with_values(op(self.values, other.values))

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, scalar):
        if isinstance(scalar, SampledWaveFunction):
            return NotImplemented
        return self.with_values(scalar * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume))

    def normalize(self) -> "SampledWaveFunction":
        n = self.norm()
        if n == 0 or not np.isfinite(n):
            raise DomainError("cannot normalize a zero or non-finite state")
        return self.with_values(self.values / n)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


def _require_same_grid(a: SampledWaveFunction, b: SampledWaveFunction) -> None:
    if a.grid != b.grid:
        raise GridMismatch(f"grids differ: {a.grid} vs {b.grid}")


def inner_product(a: SampledWaveFunction, b: SampledWaveFunction) -> complex:
    """Discrete ``<a|b> = sum conj(a) b h^dim``.

    Uses numpy's pairwise summation rather than a BLAS dot, so rounding grows
    with log N instead of N on large 3D grids.
    """
    _require_same_grid(a, b)
    return complex(np.sum(np.conj(a.values) * b.values) * a.grid.cell_volume)


def expectation(op: Callable[[SampledWaveFunction], SampledWaveFunction],
                psi: SampledWaveFunction) -> complex:
    out = op(psi)
    _require_same_grid(psi, out)
    return inner_product(psi, out)


def variance(op: Callable[[SampledWaveFunction], SampledWaveFunction],
             psi: SampledWaveFunction) -> float:
    """``<op^2> - <op>^2`` for a Hermitian ``op``, clamped at zero."""
    once = op(psi)
    _require_same_grid(psi, once)
    mean = inner_product(psi, once)
    second = inner_product(psi, op(once))
    return max(float((second - mean * mean).real), 0.0)


def spectral_norm2(psi: SampledWaveFunction) -> float:
    """Squared norm computed from the DFT coefficients (numpy convention)."""
    coeffs = np.fft.fftn(psi.values)
    n_total = psi.values.size
    return float(np.sum(np.abs(coeffs) ** 2) * psi.grid.cell_volume / n_total)


def edge_density_ratio(psi: SampledWaveFunction) -> float:
    """Largest |psi|^2 on the outermost layer of nodes, relative to the peak |psi|^2."""
    density = np.abs(psi.values) ** 2
    peak = density.max()
    if peak == 0:
        return 0.0
    edge = 0.0
    for axis in range(psi.grid.dim):
        for index in (0, -1):
            edge = max(edge, float(np.take(density, index, axis=axis).max()))
    return edge / peak


def require_localized(psi: SampledWaveFunction, tol: float = EDGE_TOLERANCE) -> None:
    ratio = edge_density_ratio(psi)
    if ratio > tol:
        raise EdgeLeakage(f"edge density ratio {ratio:.3e} exceeds {tol:.1e}")


def dump(psi: SampledWaveFunction, stream: TextIO) -> None:
    """Write ``psi`` as columnar text: header ``# dim N L time``, rows ``index re im``."""
    g = psi.grid
    stream.write(f"# {g.dim} {g.points} {g.length!r} {psi.time_tag!r}\n")
    for i, z in enumerate(psi.values.ravel()):
        stream.write(f"{i} {float(z.real)!r} {float(z.imag)!r}\n")


def load(stream: TextIO) -> SampledWaveFunction:
    header = stream.readline()
    parts = header.lstrip("#").split()
    if not header.startswith("#") or len(parts) != 4:
        raise ParseError(f"bad wavefunction header: {header!r}")
    try:
        grid = GridSpec(int(parts[0]), int(parts[1]), float(parts[2]))
        time_tag = float(parts[3])
    except ValueError as exc:
        raise ParseError(f"bad wavefunction header: {header!r}") from exc
    size = grid.points**grid.dim
    values = np.zeros(size, dtype=complex)
    seen = np.zeros(size, dtype=bool)
    for lineno, line in enumerate(stream, start=2):
        if not line.strip():
            continue
        fields = line.split()
        try:
            idx, re, im = int(fields[0]), float(fields[1]), float(fields[2])
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {lineno}: expected 'index re im'") from exc
        if len(fields) != 3 or not 0 <= idx < size:
            raise ParseError(f"line {lineno}: malformed row {line!r}")
        values[idx] = complex(re, im)
        seen[idx] = True
    if not seen.all():
        raise ParseError(f"missing {int((~seen).sum())} of {size} rows")
    return SampledWaveFunction(grid, values.reshape(grid.shape), time_tag)
