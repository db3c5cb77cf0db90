"""Built-in invariant checks behind ``qcausal verify``."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .causality import analyze, quantum_broadening_from_overlap, ratio_check
from .interference import overlap_identity_residual, residue_integral, superpose_equal
from .numerics import from_momentum, make_grid, to_momentum
from .states import GaussianSpec, conjugate_pair, free_evolve, gaussian, rotate_to_real_overlap
from .stationary_phase import find_stationary_points, fresnel_reference, phase_difference


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


def _parseval():
    g = make_grid(-20, 20, 2 ** 12)
    psi = gaussian(GaussianSpec(x0=1.5, p0=2.0, sigma=1.3, chirp=0.4), g)
    phi = to_momentum(psi)
    back = from_momentum(phi, g)
    err = max(abs(phi.norm() - 1.0), float(np.max(np.abs(back.values - psi.values))))
    return err < 1e-12, f"max(norm error, round-trip error) = {err:.2e}"


def _overlap_identity():
    g = make_grid(-20, 20, 2 ** 12)
    A = gaussian(GaussianSpec(x0=-1.0, p0=0.5, sigma=1.0), g)
    B = gaussian(GaussianSpec(x0=1.0, sigma=1.5, chirp=0.2), g)
    A, _ = rotate_to_real_overlap(A, B)
    r = overlap_identity_residual(superpose_equal(A, B))
    return abs(r) < 1e-8, f"P(A)+P(B)-1-s = {r:.2e}"


def _residue():
    g = make_grid(-20, 20, 2 ** 14)
    A, B, s = conjugate_pair(0.0, 1.0, 0.25, g)
    err = abs(residue_integral(A, phase_difference(A, B)) - s)
    return err < 2e-6, f"|residue - s| = {err:.2e}"


def _fresnel():
    numeric, closed = fresnel_reference(1.0, 25.0)
    err = abs(numeric - closed)
    return err <= 2.0 / 25.0, f"|numeric - sqrt(pi)| = {err:.2e} (tail bound 8.0e-02)"


def _free_evolution():
    g = make_grid(-40, 40, 2 ** 13)
    psi = gaussian(GaussianSpec(x0=-3.0, p0=2.0, sigma=1.0), g)
    out = free_evolve(psi, 1.0, 3.0)
    err = abs(out.mean_position() - 3.0)
    return err < 1e-6, f"|<x>(t) - (x0 + p0 t/m)| = {err:.2e}"


def _stationary_point():
    g = make_grid(-10, 10, 2 ** 14)
    A, B, _ = conjugate_pair(0.0, 1.0, 40.0, g)
    pt = find_stationary_points(phase_difference(A, B))[0]
    ok = abs(pt.mu) <= 2 * g.dx and abs(pt.gamma + 80.0) < 1e-3 * 80.0
    return ok, f"mu = {pt.mu:.2e}, gamma = {pt.gamma:.6f} (expected -80)"


def _violation():
    g = make_grid(-10, 10, 2 ** 14)
    A, B, _ = conjugate_pair(0.0, 1.0, 40.0, g)
    r = analyze(A, B)
    ok = bool(r.violated_eq13) and bool(r.violated_eq14)
    return ok, f"lhs13 = {r.lhs_eq13:.4f} vs s = {r.s:.4f}; lhs14 = {r.lhs_eq14:.4f} vs 1"


def _broadening_algebra():
    s, d = 0.3, 0.2
    r = ratio_check(quantum_broadening_from_overlap(s, d), s ** 2 / d, s)
    return abs(r) < 1e-12, f"overlap-form ratio residual = {r:.2e}"


CHECKS: list[tuple[str, Callable]] = [
    ("parseval_and_round_trip", _parseval),
    ("equal_superposition_identity", _overlap_identity),
    ("residue_equals_overlap", _residue),
    ("fresnel_closed_form", _fresnel),
    ("free_evolution_ehrenfest", _free_evolution),
    ("stationary_point_and_curvature", _stationary_point),
    ("broadening_ratio_algebra", _broadening_algebra),
    ("causality_violation", _violation),
]


def run_checks() -> list[Check]:
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as err:  # a crashing check is a failed check
            ok, detail = False, f"{type(err).__name__}: {err}"
        results.append(Check(name, bool(ok), detail))
    return results
