"""Action-phase profiles, stationary points and the Fresnel estimate of the
overlap."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import (
    DegenerateCurvatureError,
    EmptyMaskError,
    MuOutsideMaskError,
    NoStationaryPointError,
    UnderResolvedError,
)
from .numerics import (
    Grid,
    SampledFunction,
    contiguous_region,
    derivative,
    largest_run,
    unwrap_phase,
    wrap_phase,
)
from .states import WaveFunction

DEFAULT_FLOOR = 1e-6
FIT_HALF_WIDTH = 7


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """Unwrapped ``S(x)/hbar = arg B - arg A`` on a contiguous mask.

    Samples outside the mask are zero and carry no meaning.
    """

    grid: Grid
    S_over_hbar: np.ndarray
    mask: np.ndarray
    hbar: float = 1.0

    @property
    def S(self) -> np.ndarray:
        return self.hbar * self.S_over_hbar

    @property
    def region(self) -> tuple[int, int]:
        return contiguous_region(self.mask)


@dataclass(frozen=True)
class StationaryPoint:
    """A zero of dS/dx refined by a local quadratic fit.

    ``gamma`` is ``(1/(2 hbar)) d2S/dx2`` at ``mu``, kept with its sign.
    ``S_mu_over_hbar`` is the principal value of the phase at ``mu``.
    """

    mu: float
    gamma: float
    S_mu_over_hbar: float
    window: tuple[int, int]
    mask_range: tuple[int, int]

    @property
    def gamma_sign(self) -> int:
        return 1 if self.gamma > 0 else -1

    @property
    def fresnel_width(self) -> float:
        """sqrt(pi/|gamma|), the full Fresnel-zone scale of the overlap integral."""
        return float(np.sqrt(np.pi / abs(self.gamma)))


def phase_difference(A: WaveFunction, B: WaveFunction, floor: float = DEFAULT_FLOOR,
                     hbar: float = 1.0) -> PhaseProfile:
    """Unwrapped ``arg B - arg A`` where both magnitudes exceed ``floor``
    times their peaks.

    If that set splits into several runs only the longest one is kept.
    """
    magA = np.abs(A.values)
    magB = np.abs(B.values)
    mask = (magA > floor * magA.max()) & (magB > floor * magB.max())
    mask = largest_run(mask)
    if not mask.any():
        raise EmptyMaskError(
            f"|A| and |B| never both exceed {floor:g} of their peaks; the states do not overlap")
    raw = SampledFunction(A.grid, wrap_phase(np.angle(B.values) - np.angle(A.values)))
    unwrapped = unwrap_phase(raw, mask).values.real
    S = np.where(mask, unwrapped, 0.0)
    S.flags.writeable = False
    mask.flags.writeable = False
    return PhaseProfile(A.grid, S, mask, hbar)


def _fit_point(profile: PhaseProfile, j: int, start: int, stop: int) -> StationaryPoint:
    grid = profile.grid
    lo = max(start, j - FIT_HALF_WIDTH)
    hi = min(stop, j + FIT_HALF_WIDTH + 1)
    u = np.arange(lo, hi) - j
    c2, c1, c0 = np.polyfit(u, profile.S_over_hbar[lo:hi], 2)
    dx = grid.dx
    gamma = c2 / dx ** 2  # S/hbar = ... + gamma (x - mu)**2
    if abs(gamma) < 1e-9 / dx ** 2:
        raise DegenerateCurvatureError(
            f"curvature {gamma:.3g} near x={grid.x[j]:.6g} is numerically zero")
    shift = -c1 / (2.0 * c2)
    S_mu = c0 + c1 * shift + c2 * shift ** 2
    return StationaryPoint(
        mu=float(grid.x[j] + shift * dx),
        gamma=float(gamma),
        S_mu_over_hbar=wrap_phase(S_mu),
        window=(lo, hi),
        mask_range=(start, stop),
    )


def find_stationary_points(profile: PhaseProfile) -> list[StationaryPoint]:
    """Locate every sign change of dS/dx on the mask, ordered by position.

    Raises
    ------
    NoStationaryPointError
        If dS/dx keeps one sign across the mask.
    DegenerateCurvatureError
        If a detected point has vanishing second derivative.
    """
    start, stop = profile.region
    dS, _ = derivative(SampledFunction(profile.grid, profile.S_over_hbar), 1, profile.mask)
    d = dS.values.real[start:stop]

    candidates = []
    for k in range(d.size - 1):
        if d[k] * d[k + 1] < 0:
            candidates.append(start + (k if abs(d[k]) <= abs(d[k + 1]) else k + 1))
        elif d[k] == 0 and 0 < k and d[k - 1] * d[k + 1] < 0:
            candidates.append(start + k)
    if not candidates:
        raise NoStationaryPointError("dS/dx does not change sign on the valid region")

    points: list[StationaryPoint] = []
    for j in candidates:
        pt = _fit_point(profile, j, start, stop)
        lo, hi = pt.window
        if not profile.grid.x[lo] <= pt.mu <= profile.grid.x[hi - 1]:
            continue
        if points and abs(pt.mu - points[-1].mu) < FIT_HALF_WIDTH * profile.grid.dx:
            continue
        points.append(pt)
    if not points:
        raise NoStationaryPointError("no sign change of dS/dx refines to a point inside its window")
    return points


def fresnel_reference(gamma: float, half_window: float,
                      samples_per_fringe: float = 64.0) -> tuple[float, float]:
    """Truncated ``int_{-L}^{L} cos(gamma u**2 - pi/4) du`` and its limit sqrt(pi/gamma).

    The sampling density is set by the local fringe period ``pi/(gamma L)``
    at the window edge. The truncation error is bounded by ``2/(gamma L)``.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if not half_window > 0:
        raise ValueError(f"half_window must be positive, got {half_window}")
    if samples_per_fringe < 4:
        raise UnderResolvedError(
            f"{samples_per_fringe} samples per fringe at the window edge; need at least 4")
    h = np.pi / (gamma * half_window * samples_per_fringe)
    n = 2 * int(np.ceil(half_window / h / 2)) + 1
    u = np.linspace(0.0, half_window, n)
    numeric = 2.0 * simpson(np.cos(gamma * u ** 2 - np.pi / 4), x=u)
    return float(numeric), float(np.sqrt(np.pi / gamma))


def density_at(psi: WaveFunction, x: float) -> float:
    """``|psi(x)|**2`` by linear interpolation between grid points."""
    return float(np.interp(x, psi.grid.x, psi.density))


def fresnel_overlap_estimate(A: WaveFunction, pt: StationaryPoint) -> float:
    """``sqrt(pi/|gamma|) |A(mu)|**2``, the stationary-phase estimate of the overlap."""
    start, stop = pt.mask_range
    x = A.grid.x
    if not x[start] <= pt.mu <= x[stop - 1]:
        raise MuOutsideMaskError(
            f"mu={pt.mu:.6g} lies outside the valid region [{x[start]:.6g}, {x[stop - 1]:.6g}]")
    return pt.fresnel_width * density_at(A, pt.mu)


def in_validity_regime(gamma: float, envelope_std: float, factor: float = 5.0) -> bool:
    """True when the Fresnel scale sqrt(pi/|gamma|) is at most envelope_std/factor."""
    return bool(np.sqrt(np.pi / abs(gamma)) <= envelope_std / factor)
