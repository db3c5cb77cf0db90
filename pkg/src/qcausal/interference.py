"""Equal superpositions of two non-orthogonal states and the overlap
identities that follow from them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AntiparallelDegenerateError,
    EmptyMaskError,
    NonRealOverlapError,
    SupportEscapesMaskError,
)
from .numerics import SampledFunction, inner_product, integrate
from .states import WaveFunction

IMAG_TOL = 1e-10
ANTIPARALLEL_MARGIN = 1e-6
SUPPORT_TOL = 1e-8


@dataclass(frozen=True)
class SuperpositionResult:
    psi: WaveFunction
    s: float
    P_A: float
    P_B: float


def real_overlap(A: WaveFunction, B: WaveFunction) -> float:
    """Return ``<B|A>`` after checking it is real.

    States with a tiny overlap get an absolute floor of 1e-14 on the
    imaginary part, since a relative test is meaningless near zero.
    """
    overlap = inner_product(B, A)
    if abs(overlap.imag) > IMAG_TOL * abs(overlap) and abs(overlap.imag) > 1e-14:
        raise NonRealOverlapError(
            f"<B|A> = {overlap:.6g} is not real; call rotate_to_real_overlap first")
    return overlap.real


def superpose_equal(A: WaveFunction, B: WaveFunction) -> SuperpositionResult:
    """Build ``(A + B) / sqrt(2 (1 + s))`` and the probabilities P(A), P(B)."""
    s = real_overlap(A, B)
    if s <= -1.0 + ANTIPARALLEL_MARGIN:
        raise AntiparallelDegenerateError(
            f"s = {s!r}: the equal superposition of antiparallel states is not normalizable")
    psi = WaveFunction(A.grid, (A.values + B.values) / np.sqrt(2.0 * (1.0 + s)))
    P_A = abs(inner_product(A, psi)) ** 2
    P_B = abs(inner_product(B, psi)) ** 2
    return SuperpositionResult(psi=psi, s=s, P_A=P_A, P_B=P_B)


def overlap_identity_residual(res: SuperpositionResult) -> float:
    """``P(A) + P(B) - 1 - s``; zero for any equal superposition."""
    return res.P_A + res.P_B - 1.0 - res.s


def symmetry_residual(A: WaveFunction, B: WaveFunction) -> float:
    """``max_k ||A_k| - |B_k|| / max_k |A_k|``."""
    magA = np.abs(A.values)
    magB = np.abs(B.values)
    return float(np.max(np.abs(magA - magB)) / magA.max())


def interference_pattern(A: WaveFunction, B: WaveFunction, S) -> SampledFunction:
    """Closed-form density ``(1 + cos(S/hbar)) |A|**2 / (1 + s)`` on the mask.

    Exact only when ``|A| == |B|`` pointwise; compare with
    :func:`pattern_discrepancy` otherwise. Zero outside the mask.
    """
    if not S.mask.any():
        raise EmptyMaskError("phase profile mask is empty")
    s = real_overlap(A, B)
    out = np.zeros(A.grid.n)
    m = S.mask
    out[m] = (1.0 + np.cos(S.S_over_hbar[m])) * A.density[m] / (1.0 + s)
    return SampledFunction(A.grid, out)


def pattern_discrepancy(A: WaveFunction, B: WaveFunction, S) -> float:
    """Largest masked deviation of the closed form from the direct density."""
    direct = superpose_equal(A, B).psi.density
    pattern = interference_pattern(A, B, S).values.real
    return float(np.max(np.abs(pattern - direct)[S.mask]))


def residue_integral(A: WaveFunction, S) -> float:
    """``int cos(S/hbar) |A|**2 dx`` over the phase mask.

    Raises :class:`SupportEscapesMaskError` if more than 1e-8 of the
    probability of ``A`` lies outside the mask.
    """
    density = A.density
    total = density.sum()
    outside = density[~S.mask].sum()
    if outside > SUPPORT_TOL * total:
        raise SupportEscapesMaskError(
            f"{outside / total:.3g} of |A|^2 lies outside the phase mask")
    integrand = np.where(S.mask, np.cos(S.S_over_hbar) * density, 0.0)
    return integrate(SampledFunction(A.grid, integrand)).real


def real_overlap_identity(A: WaveFunction, B: WaveFunction) -> tuple[float, float]:
    """Both sides of ``int Re(conj(A) B) dx = Re<A|B>``, which holds for any pair."""
    lhs = integrate(SampledFunction(A.grid, (np.conj(A.values) * B.values).real)).real
    return lhs, inner_product(A, B).real
