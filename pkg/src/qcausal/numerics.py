"""Numerical substrate: periodic grids, quadrature, Fourier transforms,
finite differences and phase unwrapping.

The grid is periodic with ``n`` points and spacing ``(x_max - x_min) / n``,
so the rectangle rule and the discrete Fourier transform agree with each
other and are spectrally accurate for states that decay inside the box.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AliasingWarning,
    EmptyMaskError,
    GridMismatchError,
    InvalidBoundsError,
    NonContiguousMaskError,
    RegionTooSmallError,
)

MIN_POINTS = 16


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid ``x_k = x_min + k*dx``, ``k = 0..n-1``."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise InvalidBoundsError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise InvalidBoundsError(
                f"x_min ({self.x_min}) must be below x_max ({self.x_max})")
        if int(self.n) != self.n or self.n < MIN_POINTS:
            raise InvalidBoundsError(f"n must be an integer >= {MIN_POINTS}, got {self.n}")
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        object.__setattr__(self, "n", int(self.n))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @cached_property
    def x(self) -> np.ndarray:
        x = self.x_min + np.arange(self.n) * self.dx
        x.flags.writeable = False
        return x

    def momentum_grid(self, hbar: float = 1.0) -> Grid:
        """Dual grid in ascending order, spacing ``2*pi*hbar/(n*dx)``."""
        dp = 2.0 * np.pi * hbar / (self.n * self.dx)
        half = self.n // 2
        return Grid(-half * dp, (self.n - half) * dp, self.n)


def make_grid(x_min: float, x_max: float, n: int) -> Grid:
    return Grid(x_min, x_max, n)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex (or real) samples of a function on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values)
        if values.shape != (self.grid.n,):
            raise GridMismatchError(
                f"expected {self.grid.n} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("sampled values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def norm(self) -> float:
        return float(np.sqrt(integrate(SampledFunction(self.grid, np.abs(self.values) ** 2)).real))


def _same_grid(f: SampledFunction, g: SampledFunction) -> None:
    if f.grid != g.grid:
        raise GridMismatchError(f"grids differ: {f.grid} vs {g.grid}")


def integrate(f: SampledFunction) -> complex:
    """Rectangle rule ``dx * sum(f)``."""
    return complex(f.grid.dx * np.sum(f.values))


def inner_product(f: SampledFunction, g: SampledFunction) -> complex:
    """``<f|g> = dx * sum(conj(f) * g)``, antilinear in the first slot."""
    _same_grid(f, g)
    return integrate(SampledFunction(f.grid, np.conj(f.values) * g.values))


def to_momentum(f: SampledFunction, hbar: float = 1.0) -> SampledFunction:
    """Unitary transform to the momentum representation.

    Discretizes ``phi(p) = (2*pi*hbar)**-0.5 * int psi(x) exp(-i p x / hbar) dx``.
    The result lives on ``f.grid.momentum_grid(hbar)`` in ascending ``p``.
    """
    grid = f.grid
    pgrid = grid.momentum_grid(hbar)
    spectrum = np.fft.fftshift(np.fft.fft(f.values))
    p = pgrid.x
    phase = np.exp(-1j * p * grid.x_min / hbar)
    return SampledFunction(pgrid, grid.dx / np.sqrt(2.0 * np.pi * hbar) * phase * spectrum)


def from_momentum(phi: SampledFunction, grid: Grid, hbar: float = 1.0) -> SampledFunction:
    """Inverse of :func:`to_momentum` back onto position grid ``grid``."""
    pgrid = grid.momentum_grid(hbar)
    if phi.grid != pgrid:
        raise GridMismatchError("momentum samples do not match the dual of the target grid")
    p = pgrid.x
    spectrum = phi.values * np.exp(1j * p * grid.x_min / hbar) * np.sqrt(2.0 * np.pi * hbar) / grid.dx
    return SampledFunction(grid, np.fft.ifft(np.fft.ifftshift(spectrum)))


def contiguous_region(mask: np.ndarray) -> tuple[int, int]:
    """Return ``(start, stop)`` of the single run of True values in ``mask``."""
    mask = np.asarray(mask, dtype=bool)
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        raise EmptyMaskError("mask selects no points")
    start, stop = int(idx[0]), int(idx[-1]) + 1
    if idx.size != stop - start:
        raise NonContiguousMaskError("mask must select one contiguous region")
    return start, stop


def largest_run(mask: np.ndarray) -> np.ndarray:
    """Keep only the longest contiguous run of True values."""
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        return mask.copy()
    padded = np.concatenate(([False], mask, [False]))
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    starts, stops = edges[::2], edges[1::2]
    i = int(np.argmax(stops - starts))
    out = np.zeros_like(mask)
    out[starts[i]:stops[i]] = True
    return out


# 5-point stencils, numerators over 12*h**order
_D1_CENTER = np.array([1.0, -8.0, 0.0, 8.0, -1.0])
_D1_EDGE = (np.array([-25.0, 48.0, -36.0, 16.0, -3.0]),
            np.array([-3.0, -10.0, 18.0, -6.0, 1.0]))
_D2_CENTER = np.array([-1.0, 16.0, -30.0, 16.0, -1.0])
_D2_EDGE = (np.array([35.0, -104.0, 114.0, -56.0, 11.0]),
            np.array([11.0, -20.0, 6.0, 4.0, -1.0]))

MIN_DERIVATIVE_POINTS = 7


def derivative(f: SampledFunction, order: int = 1,
               mask: np.ndarray | None = None) -> tuple[SampledFunction, np.ndarray]:
    """Fourth-order finite-difference derivative on a contiguous valid region.

    Returns the derivative samples (zero outside the region) and a boolean
    array flagging the two points at each region edge, where one-sided
    stencils are used.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    values = np.asarray(f.values)
    if np.iscomplexobj(values):
        if np.any(values.imag != 0):
            raise ValueError("derivative expects real samples")
        values = values.real
    if mask is None:
        mask = np.ones(f.grid.n, dtype=bool)
    start, stop = contiguous_region(mask)
    m = stop - start
    if m < MIN_DERIVATIVE_POINTS:
        raise RegionTooSmallError(
            f"need at least {MIN_DERIVATIVE_POINTS} contiguous valid points, got {m}")
    y = values[start:stop]
    h = f.grid.dx
    center, edges = (_D1_CENTER, _D1_EDGE) if order == 1 else (_D2_CENTER, _D2_EDGE)
    sign = -1.0 if order == 1 else 1.0  # mirrored edge stencils flip sign for odd order

    d = np.zeros(m)
    d[2:-2] = sum(c * y[k:m - 4 + k] for k, c in enumerate(center))
    d[0] = edges[0] @ y[:5]
    d[1] = edges[1] @ y[:5]
    d[-1] = sign * (edges[0] @ y[::-1][:5])
    d[-2] = sign * (edges[1] @ y[::-1][:5])
    d /= 12.0 * h ** order

    out = np.zeros(f.grid.n)
    out[start:stop] = d
    low = np.zeros(f.grid.n, dtype=bool)
    low[[start, start + 1, stop - 2, stop - 1]] = True
    return SampledFunction(f.grid, out), low


def wrap_phase(theta):
    """Principal value in (-pi, pi]."""
    wrapped = np.pi - np.mod(np.pi - np.asarray(theta, dtype=float), 2.0 * np.pi)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


ALIASING_LIMIT = np.pi / 2


def unwrap_phase(theta: SampledFunction, mask: np.ndarray) -> SampledFunction:
    """Unwrap a phase inside one contiguous masked region.

    Adjacent valid samples end up less than pi apart, and the sample at the
    middle of the region keeps its principal value. Samples outside the
    region are returned unchanged. Emits :class:`AliasingWarning` if any
    raw adjacent jump exceeds pi/2 (fewer than four samples per fringe).
    """
    raw = np.asarray(theta.values).real.astype(float)
    start, stop = contiguous_region(mask)
    seg = raw[start:stop]
    jumps = np.abs(wrap_phase(np.diff(seg))) if seg.size > 1 else np.zeros(0)
    if jumps.size and jumps.max() > ALIASING_LIMIT:
        warnings.warn(
            f"phase jumps by {jumps.max():.3f} rad between adjacent samples "
            "(limit pi/2); refine the grid", AliasingWarning, stacklevel=2)
    unwrapped = np.unwrap(seg)
    mid = (stop - start - 1) // 2
    turns = np.round((wrap_phase(seg[mid]) - unwrapped[mid]) / (2.0 * np.pi))
    unwrapped = unwrapped + 2.0 * np.pi * turns

    out = raw.copy()
    out[start:stop] = unwrapped
    return SampledFunction(theta.grid, out)
