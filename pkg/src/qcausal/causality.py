"""Classical vs. quantum broadening and the classical-causality inequalities.

``analyze`` runs the whole chain for a pair of states: phase convention,
equal superposition, action phase, stationary point, Fresnel estimate,
broadenings and inequality checks.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import (
    AnalysisNotApplicable,
    DegenerateCurvatureError,
    MultiStationaryPointError,
    ZeroDensityError,
)
from .interference import superpose_equal, symmetry_residual
from .numerics import wrap_phase
from .states import WaveFunction, rotate_to_real_overlap
from .stationary_phase import (
    DEFAULT_FLOOR,
    density_at,
    find_stationary_points,
    fresnel_overlap_estimate,
    in_validity_regime,
    phase_difference,
)

INDETERMINATE_BAND = 1e-9


@dataclass(frozen=True)
class CausalityReport:
    s: float
    P_A: float
    P_B: float
    joint_prob_lower_bound: float
    mu: float
    gamma: float
    gamma_sign: int
    S_mu_over_hbar: float
    peak_density_A: float
    peak_density_psi: float
    delta_x_classical: float
    delta_x_quantum: float
    delta_x_quantum_from_overlap: float
    ratio_check: float
    fresnel_estimate: float
    lhs_eq13: float
    lhs_eq14: float
    violated_eq13: bool | None
    violated_eq14: bool | None
    symmetry_residual: float
    validity_regime: bool
    overlap_rotation_phi: float

    def to_dict(self) -> dict:
        return asdict(self)


REPORT_FIELDS = tuple(f.name for f in fields(CausalityReport))


def classical_broadening(s: float, peak_density_A: float) -> float:
    """``s**2 / |A(mu)|**2``: spread classical causality needs to explain the overlap."""
    if not peak_density_A > 0:
        raise ZeroDensityError(f"density of A at mu is {peak_density_A!r}")
    if not 0 < s <= 1:
        raise ValueError(f"overlap must lie in (0, 1], got {s!r}")
    return s ** 2 / peak_density_A


def quantum_broadening(gamma: float) -> float:
    """``sqrt(pi / (2 |gamma|))``: distance from mu at which the phase has
    moved by pi/2 from its stationary value."""
    if gamma == 0 or not np.isfinite(gamma):
        raise DegenerateCurvatureError(f"curvature {gamma!r} gives no finite broadening")
    return float(np.sqrt(np.pi / (2.0 * abs(gamma))))


def quantum_broadening_from_overlap(s: float, peak_density_A: float) -> float:
    """``s / |A(mu)|**2``, the overlap-based expression for the quantum broadening."""
    if not peak_density_A > 0:
        raise ZeroDensityError(f"density of A at mu is {peak_density_A!r}")
    return s / peak_density_A


def ratio_check(delta_q: float, delta_c: float, s: float) -> float:
    """``delta_q * s / delta_c - 1``; zero when the quantum broadening exceeds
    the classical one by exactly ``1/s``."""
    return delta_q * s / delta_c - 1.0


def _strictly_below(lhs: float, bound: float) -> bool | None:
    if abs(lhs - bound) <= INDETERMINATE_BAND:
        return None
    return lhs < bound


def causality_inequalities(peak_density_psi: float, delta_x_classical: float,
                           delta_x_quantum: float, s: float,
                           n_stationary_points: int = 1):
    """Left-hand sides of the two classical-causality bounds and their flags.

    Returns ``(lhs13, lhs14, violated13, violated14)``. ``lhs13`` is compared
    with the joint-probability lower bound ``s`` and ``lhs14`` with 1. A flag
    is ``None`` (indeterminate) when the two sides agree within 1e-9.
    """
    if n_stationary_points != 1:
        raise MultiStationaryPointError(
            f"{n_stationary_points} stationary points; the bounds assume exactly one")
    lhs13 = peak_density_psi * delta_x_classical
    lhs14 = peak_density_psi * delta_x_quantum
    return lhs13, lhs14, _strictly_below(lhs13, s), _strictly_below(lhs14, 1.0)


def analyze(A: WaveFunction, B: WaveFunction, floor: float = DEFAULT_FLOOR,
            validity_factor: float = 5.0, hbar: float = 1.0,
            prior_rotation: float = 0.0) -> CausalityReport:
    """Full causality analysis of the pair ``(A, B)``.

    ``prior_rotation`` is a phase already applied to ``A`` by the caller; it
    is added to the recorded ``overlap_rotation_phi``.

    Raises
    ------
    AnalysisNotApplicable
        No, several, or a degenerate stationary point. ``partial`` on the
        exception holds the fields computed before that stage.
    """
    A, phi = rotate_to_real_overlap(A, B)
    sup = superpose_equal(A, B)
    partial = {
        "s": sup.s,
        "P_A": sup.P_A,
        "P_B": sup.P_B,
        "joint_prob_lower_bound": sup.s,
        "symmetry_residual": symmetry_residual(A, B),
        "overlap_rotation_phi": wrap_phase(phi + prior_rotation),
    }
    profile = phase_difference(A, B, floor, hbar)
    try:
        points = find_stationary_points(profile)
        if len(points) != 1:
            raise MultiStationaryPointError(
                f"found {len(points)} stationary points at "
                + ", ".join(f"{p.mu:.6g}" for p in points))
    except AnalysisNotApplicable as exc:
        exc.partial = partial
        raise

    pt = points[0]
    peak_A = density_at(A, pt.mu)
    peak_psi = density_at(sup.psi, pt.mu)
    delta_c = classical_broadening(sup.s, peak_A)
    delta_q = quantum_broadening(pt.gamma)
    lhs13, lhs14, v13, v14 = causality_inequalities(peak_psi, delta_c, delta_q, sup.s, len(points))
    return CausalityReport(
        **partial,
        mu=pt.mu,
        gamma=pt.gamma,
        gamma_sign=pt.gamma_sign,
        S_mu_over_hbar=pt.S_mu_over_hbar,
        peak_density_A=peak_A,
        peak_density_psi=peak_psi,
        delta_x_classical=delta_c,
        delta_x_quantum=delta_q,
        delta_x_quantum_from_overlap=quantum_broadening_from_overlap(sup.s, peak_A),
        ratio_check=ratio_check(delta_q, delta_c, sup.s),
        fresnel_estimate=fresnel_overlap_estimate(A, pt),
        lhs_eq13=lhs13,
        lhs_eq14=lhs14,
        violated_eq13=v13,
        violated_eq14=v14,
        validity_regime=in_validity_regime(pt.gamma, A.position_std(), validity_factor),
    )
