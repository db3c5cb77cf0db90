import numpy as np
import pytest

from qcausal.errors import (
    BoxOverflowError,
    BoxTooSmallError,
    NormalizationError,
    ResolutionError,
    VanishingOverlapError,
    ZeroChirpError,
)
from qcausal.numerics import inner_product, make_grid, to_momentum
from qcausal.states import (
    GaussianSpec,
    WaveFunction,
    conjugate_pair,
    free_evolve,
    gaussian,
    rotate_to_real_overlap,
)


def test_gaussian_peak_density(grid):
    psi = gaussian(GaussianSpec(), grid)
    assert psi.density[grid.n // 2] == pytest.approx(1 / np.sqrt(2 * np.pi), rel=1e-12)
    assert 1 / np.sqrt(2 * np.pi) == pytest.approx(0.39894, abs=1e-5)


@pytest.mark.parametrize("spec", [
    GaussianSpec(),
    GaussianSpec(x0=3.0, p0=-2.0, sigma=0.5, chirp=1.5, global_phase=0.3),
    GaussianSpec(x0=-2.0, sigma=2.0, chirp=-0.2),
])
def test_gaussian_normalized_and_matches_formula(grid, spec):
    psi = gaussian(spec, grid)
    assert abs(psi.norm() - 1) < 1e-10
    u = grid.x - spec.x0
    analytic = (2 * np.pi * spec.sigma ** 2) ** -0.25 * np.exp(
        -u ** 2 / (4 * spec.sigma ** 2) + 1j * (spec.chirp * u ** 2 + spec.p0 * u + spec.global_phase))
    assert np.max(np.abs(psi.values - analytic)) < 1e-12


def test_gaussian_momentum_mean(grid):
    phi = to_momentum(gaussian(GaussianSpec(p0=3.0), grid))
    dens = np.abs(phi.values) ** 2
    assert phi.grid.dx * np.sum(phi.grid.x * dens) == pytest.approx(3.0, abs=1e-6)


def test_gaussian_box_too_small():
    with pytest.raises(BoxTooSmallError):
        gaussian(GaussianSpec(sigma=1.0), make_grid(-5, 5, 1024))


def test_gaussian_resolution_too_coarse():
    with pytest.raises(ResolutionError):
        gaussian(GaussianSpec(sigma=1.0), make_grid(-20, 20, 256))


def test_wavefunction_requires_normalization(grid):
    with pytest.raises(NormalizationError):
        WaveFunction(grid, 2 * gaussian(GaussianSpec(), grid).values)


# -- conjugate pairs ----------------------------------------------------------

def test_conjugate_pair_magnitudes_identical(default_pair):
    A, B, s = default_pair
    assert np.max(np.abs(np.abs(A.values) - np.abs(B.values))) == 0.0
    assert np.array_equal(B.values, np.conj(A.values))


def test_conjugate_pair_overlap_real_positive(default_pair):
    A, B, s = default_pair
    ov = inner_product(B, A)
    assert 0 < s < 1
    assert abs(ov.imag) < 1e-14
    assert ov.real == s


def _brute_force_overlap(x0, sigma, c, n):
    """|int A(x)**2 dx| / int |A|**2 dx for the raw chirped Gaussian, independent of the package."""
    x = np.linspace(-25, 25, n, endpoint=False)
    dx = x[1] - x[0]
    a = np.exp(-(x - x0) ** 2 / (4 * sigma ** 2) + 1j * c * (x - x0) ** 2)
    return abs(np.sum(a * a) * dx) / (np.sum(np.abs(a) ** 2) * dx)


@pytest.mark.parametrize("c", [0.25, -0.25, 1.0, 0.05])
def test_conjugate_pair_overlap_oracle(grid, c):
    _, _, s = conjugate_pair(0.0, 1.0, c, grid)
    assert s == pytest.approx(_brute_force_overlap(0.0, 1.0, c, 2 ** 16), abs=1e-12)
    # closed form of the Gaussian integral: (1 + 16 c**2 sigma**4) ** -1/4
    assert s == pytest.approx((1 + 16 * c ** 2) ** -0.25, abs=1e-12)


def test_conjugate_pair_small_chirp_limit(grid):
    _, _, s = conjugate_pair(0.0, 1.0, 1e-6, grid)
    assert s == pytest.approx(1.0, abs=1e-10)


def test_conjugate_pair_zero_chirp(grid):
    with pytest.raises(ZeroChirpError):
        conjugate_pair(0.0, 1.0, 0.0, grid)


# -- free evolution -----------------------------------------------------------

@pytest.fixture(scope="module")
def wide_grid():
    return make_grid(-40, 40, 2 ** 13)


def test_free_evolve_zero_time(wide_grid):
    psi = gaussian(GaussianSpec(p0=1.0, chirp=0.3), wide_grid)
    assert np.max(np.abs(free_evolve(psi, 1.0, 0.0).values - psi.values)) < 1e-12


def test_free_evolve_moves_centre(wide_grid):
    psi = gaussian(GaussianSpec(x0=-4.0, p0=2.0, sigma=1.0), wide_grid)
    out = free_evolve(psi, 1.0, 3.0)
    assert out.mean_position() == pytest.approx(-4.0 + 6.0, abs=1e-6)
    assert abs(out.norm() - 1) < 1e-12


def test_free_evolve_spreading(wide_grid):
    psi = gaussian(GaussianSpec(sigma=1.0), wide_grid)
    out = free_evolve(psi, 1.0, 2.0)
    # sigma * sqrt(1 + (hbar t / (2 m sigma**2))**2)
    assert out.position_std() == pytest.approx(np.sqrt(2.0), abs=1e-6)


def test_free_evolve_spreading_with_hbar_and_mass(wide_grid):
    psi = gaussian(GaussianSpec(sigma=1.0), wide_grid, hbar=0.5)
    out = free_evolve(psi, 2.0, 3.0, hbar=0.5)
    assert out.position_std() == pytest.approx(np.sqrt(1 + (0.5 * 3.0 / 4.0) ** 2), abs=1e-6)


def test_free_evolve_composition(wide_grid):
    psi = gaussian(GaussianSpec(x0=-2.0, p0=1.0, sigma=0.8, chirp=0.1), wide_grid)
    two_step = free_evolve(free_evolve(psi, 1.3, 1.1), 1.3, 2.4)
    one_step = free_evolve(psi, 1.3, 3.5)
    assert np.max(np.abs(two_step.values - one_step.values)) < 1e-10


def test_free_evolve_box_overflow(wide_grid):
    psi = gaussian(GaussianSpec(x0=20.0, p0=5.0, sigma=1.0), wide_grid)
    with pytest.raises(BoxOverflowError):
        free_evolve(psi, 1.0, 10.0)


# -- phase convention ---------------------------------------------------------

def test_rotate_already_real(grid):
    A = gaussian(GaussianSpec(x0=-1.0), grid)
    B = gaussian(GaussianSpec(x0=1.0), grid)
    A2, phi = rotate_to_real_overlap(A, B)
    assert phi == 0.0
    assert A2 is A


def test_rotate_pure_phase(grid):
    A = gaussian(GaussianSpec(), grid)
    B = WaveFunction(grid, 1j * A.values)
    A2, phi = rotate_to_real_overlap(A, B)
    assert phi == pytest.approx(np.pi / 2)
    assert inner_product(B, A2) == pytest.approx(1.0, abs=1e-14)


def test_rotate_arbitrary_pair(grid):
    A = gaussian(GaussianSpec(x0=-0.5, p0=1.3, sigma=1.2, chirp=0.4, global_phase=2.0), grid)
    B = gaussian(GaussianSpec(x0=0.7, p0=-0.4, sigma=0.9), grid)
    A2, phi = rotate_to_real_overlap(A, B)
    ov = inner_product(B, A2)
    assert -np.pi < phi <= np.pi
    assert ov.real > 0
    assert abs(ov.imag) < 1e-12 * abs(ov)


def test_rotate_vanishing_overlap(grid):
    A = gaussian(GaussianSpec(x0=-8.0, sigma=0.5), grid)
    B = gaussian(GaussianSpec(x0=8.0, sigma=0.5), grid)
    with pytest.raises(VanishingOverlapError):
        rotate_to_real_overlap(A, B)
