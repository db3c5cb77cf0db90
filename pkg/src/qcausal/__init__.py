"""Numerical laboratory for interference between non-orthogonal states,
stationary-phase overlap estimates and classical-causality bounds."""

from .causality import CausalityReport, analyze
from .numerics import Grid, SampledFunction, make_grid
from .states import GaussianSpec, WaveFunction, conjugate_pair, free_evolve, gaussian

__all__ = [
    "CausalityReport",
    "GaussianSpec",
    "Grid",
    "SampledFunction",
    "WaveFunction",
    "analyze",
    "conjugate_pair",
    "free_evolve",
    "gaussian",
    "make_grid",
]
