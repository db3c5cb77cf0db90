"""Wavefunction constructors: chirped Gaussians, exact conjugate pairs and
free-particle evolution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BoxOverflowError,
    BoxTooSmallError,
    NormalizationError,
    ResolutionError,
    VanishingOverlapError,
    ZeroChirpError,
)
from .numerics import (
    Grid,
    SampledFunction,
    from_momentum,
    inner_product,
    to_momentum,
    wrap_phase,
)

NORM_TOL = 1e-10
BOUNDARY_TOL = 1e-8
POINTS_PER_SIGMA = 8
PHASE_TOL = 1e-12
# amplitude exp(-d**2 / (4 sigma**2)) falls below BOUNDARY_TOL beyond this many sigma
_TAIL_SIGMAS = 2.0 * np.sqrt(np.log(1.0 / BOUNDARY_TOL))


class WaveFunction(SampledFunction):
    """A normalized position-space wavefunction ``<x|state>``."""

    def __post_init__(self):
        super().__post_init__()
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"wavefunction norm is {norm!r}, expected 1")

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def boundary_ratio(self) -> float:
        """Largest edge magnitude relative to the peak magnitude."""
        mag = np.abs(self.values)
        return float(max(mag[0], mag[-1]) / mag.max())

    def mean_position(self) -> float:
        return float(self.grid.dx * np.sum(self.x * self.density))

    def position_std(self) -> float:
        mean = self.mean_position()
        return float(np.sqrt(self.grid.dx * np.sum((self.x - mean) ** 2 * self.density)))

    def phased(self, phi: float) -> WaveFunction:
        return WaveFunction(self.grid, np.exp(1j * phi) * self.values)


@dataclass(frozen=True)
class GaussianSpec:
    """``exp(-(x-x0)**2/(4 sigma**2) + i chirp (x-x0)**2 + i p0 (x-x0)/hbar + i global_phase)``"""

    x0: float = 0.0
    p0: float = 0.0
    sigma: float = 1.0
    chirp: float = 0.0
    global_phase: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def gaussian(spec: GaussianSpec, grid: Grid, hbar: float = 1.0) -> WaveFunction:
    """Sample and normalize a (chirped) Gaussian wavepacket on ``grid``.

    Raises
    ------
    BoxTooSmallError
        If the amplitude at either edge of the box exceeds 1e-8 of the peak.
    ResolutionError
        If there are fewer than 8 grid points per sigma.
    """
    if spec.sigma / grid.dx < POINTS_PER_SIGMA:
        raise ResolutionError(
            f"sigma={spec.sigma} spans {spec.sigma / grid.dx:.2f} grid points; "
            f"need at least {POINTS_PER_SIGMA}")
    reach = _TAIL_SIGMAS * spec.sigma
    if spec.x0 - reach < grid.x_min or spec.x0 + reach > grid.x_max:
        raise BoxTooSmallError(
            f"Gaussian at x0={spec.x0} with sigma={spec.sigma} needs "
            f"[{spec.x0 - reach:.4g}, {spec.x0 + reach:.4g}] inside the box "
            f"[{grid.x_min:.4g}, {grid.x_max:.4g}]")
    u = grid.x - spec.x0
    exponent = (-u ** 2 / (4.0 * spec.sigma ** 2)
                + 1j * (spec.chirp * u ** 2 + spec.p0 * u / hbar + spec.global_phase))
    psi = np.exp(exponent)
    psi /= np.sqrt(grid.dx * np.sum(np.abs(psi) ** 2))
    return WaveFunction(grid, psi)


def rotate_to_real_overlap(A: WaveFunction, B: WaveFunction) -> tuple[WaveFunction, float]:
    """Rotate the global phase of ``A`` so that ``<B|A>`` is real and positive.

    Returns the rotated state and the applied angle ``phi`` in (-pi, pi].
    Overlaps already within 1e-12 rad of the positive axis are left alone.
    """
    overlap = inner_product(B, A)
    if abs(overlap) <= 1e-12:
        raise VanishingOverlapError(
            f"|<B|A>| = {abs(overlap):.3g}; the real-overlap convention is undefined")
    phi = wrap_phase(-np.angle(overlap))
    if abs(phi) <= PHASE_TOL:
        return A, 0.0
    return A.phased(phi), phi


def _conjugate_pair(x0, sigma, c, grid, hbar):
    if c == 0:
        raise ZeroChirpError("chirp must be nonzero: S(x) would have no stationary point")
    A = gaussian(GaussianSpec(x0=x0, sigma=sigma, chirp=c), grid, hbar)
    # <conj(A')|A'> = sum(A'**2) dx, rotated onto the positive real axis
    phi = wrap_phase(-0.5 * np.angle(grid.dx * np.sum(A.values ** 2)))
    A = A.phased(phi)
    B = WaveFunction(grid, np.conj(A.values))
    s = inner_product(B, A).real
    return A, B, s, phi


def conjugate_pair(x0: float, sigma: float, c: float, grid: Grid,
                   hbar: float = 1.0) -> tuple[WaveFunction, WaveFunction, float]:
    """Chirped Gaussian ``A`` and its pointwise conjugate ``B``.

    ``|A_k| == |B_k|`` holds bit-exactly, and the global phase of ``A`` is
    chosen so that ``s = <B|A>`` is real and positive.
    """
    A, B, s, _ = _conjugate_pair(x0, sigma, c, grid, hbar)
    return A, B, s


def free_evolve(psi: WaveFunction, mass: float, t: float, hbar: float = 1.0) -> WaveFunction:
    """Exact free-particle evolution by a phase in the momentum representation."""
    if not mass > 0:
        raise ValueError(f"mass must be positive, got {mass}")
    if t == 0:
        return psi
    phi = to_momentum(psi, hbar)
    p = phi.grid.x
    kicked = SampledFunction(phi.grid, phi.values * np.exp(-1j * p ** 2 * t / (2.0 * mass * hbar)))
    out = WaveFunction(psi.grid, from_momentum(kicked, psi.grid, hbar).values)
    ratio = out.boundary_ratio()
    if ratio > BOUNDARY_TOL:
        raise BoxOverflowError(
            f"after t={t} the edge amplitude is {ratio:.3g} of the peak (limit {BOUNDARY_TOL:g})")
    return out
