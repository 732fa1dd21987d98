from tripow.TRIPOWException import GridMismatchError, ParameterError
from tripow.field import (
    ComplexField,
    PeriodicGrid,
    PowerTail,
    RadialGrid,
    RealField,
    fit_power_law,
    grad_norm_sq,
    h1_distance,
    h1_norm,
    lp_norm_pow,
    rescale
)

import numpy as np
import pytest


def gaussian(n, r_max=10.0, h=0.01):
    grid = RadialGrid.with_spacing(n, r_max, h)
    return RealField.from_function(
        grid, lambda r: np.exp(-r * r), lambda r: -2.0 * r * np.exp(-r * r)
    )

# end of gaussian()


def test_radial_grid():

    grid = RadialGrid.with_spacing(1, 10.0, 0.01)
    assert grid.m == 1000
    assert grid.h == pytest.approx(0.01)
    assert grid.nodes[-1] == pytest.approx(10.0)
    with pytest.raises(ParameterError):
        RadialGrid(1, 10.0, 10)
    with pytest.raises(ParameterError):
        RadialGrid(4, 10.0, 100)

# end of test_radial_grid()


def test_gaussian_norms_1d():

    v = gaussian(1)
    assert lp_norm_pow(v, 2) == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-10)
    assert grad_norm_sq(v) == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-10)
    # int e^{-3 x^2} dx
    assert lp_norm_pow(v, 3) == pytest.approx(np.sqrt(np.pi / 3.0), rel=1e-10)

# end of test_gaussian_norms_1d()


def test_gaussian_norms_radial():

    assert lp_norm_pow(gaussian(3), 2) == pytest.approx(
        (np.pi / 2.0) ** 1.5, rel=1e-8
    )
    # n = 2: int e^{-2 r^2} 2 pi r dr = pi / 2
    assert lp_norm_pow(gaussian(2), 2) == pytest.approx(np.pi / 2.0, rel=1e-6)

# end of test_gaussian_norms_radial()


def test_finite_difference_gradient():

    grid = RadialGrid.with_spacing(1, 10.0, 0.005)
    v = RealField.from_function(grid, lambda r: np.exp(-r * r))
    assert grad_norm_sq(v) == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-4)

# end of test_finite_difference_gradient()


def test_power_tail_contribution():

    # C / r^2 beyond r_max = 100 in 3-D: int 4 pi r^2 r^-4 dr = 4 pi / 100
    grid = RadialGrid.with_spacing(3, 100.0, 0.5)
    v = RealField(grid, np.zeros(grid.m + 1), tail=PowerTail((1.0,), (-2.0,)))
    assert lp_norm_pow(v, 2) == pytest.approx(4.0 * np.pi / 100.0, rel=1e-8)

# end of test_power_tail_contribution()


def test_norm_exponent_range():

    with pytest.raises(ParameterError):
        lp_norm_pow(gaussian(1), 1.5)

# end of test_norm_exponent_range()


def test_fit_power_law():

    r = np.linspace(10.0, 100.0, 200)
    c, p = fit_power_law(r, 6.0 * r ** -2.0)
    assert c == pytest.approx(6.0, rel=1e-10)
    assert p == pytest.approx(-2.0, abs=1e-12)
    with pytest.raises(ParameterError):
        fit_power_law(r, -r)

# end of test_fit_power_law()


def test_rescale_preserves_mass():

    v = gaussian(1, r_max=20.0)
    for lam in (0.8, 1.25):
        w = rescale(v, lam)
        assert lp_norm_pow(w, 2) == pytest.approx(lp_norm_pow(v, 2), rel=1e-8)
        assert grad_norm_sq(w) == pytest.approx(lam ** 2 * grad_norm_sq(v), rel=1e-6)
    # end for
    assert rescale(v, 1.0) is v
    with pytest.raises(ParameterError):
        rescale(v, 0.0)

# end of test_rescale_preserves_mass()


def test_rescale_scales_tail():

    grid = RadialGrid.with_spacing(3, 50.0, 0.05)
    tail = PowerTail((1.0,), (-2.0,))
    v = RealField.from_function(
        grid, lambda r: 1.0 / (1.0 + r * r), lambda r: -2.0 * r / (1.0 + r * r) ** 2,
        tail
    )
    w = rescale(v, 2.0)
    # lam^(3/2) (lam r)^-2
    assert w.tail.coeffs[0] == pytest.approx(2.0 ** 1.5 / 4.0)
    assert w.tail.exponents == (-2.0,)

# end of test_rescale_scales_tail()


def test_h1_distance():

    v = gaussian(1)
    assert h1_distance(v, v) == 0.0
    assert h1_norm(v) == pytest.approx(np.sqrt(2.0 * np.sqrt(np.pi / 2.0)), rel=1e-10)
    assert h1_distance(v, v.scaled(2.0)) == pytest.approx(h1_norm(v), rel=1e-10)

    with pytest.raises(GridMismatchError):
        h1_distance(v, gaussian(1, h=0.02))
    grid = PeriodicGrid(1, 8.0, 64)
    with pytest.raises(GridMismatchError):
        h1_distance(v, ComplexField(grid, np.zeros(64)))

# end of test_h1_distance()


def test_periodic_grid():

    grid = PeriodicGrid(1, 16.0, 256)
    assert grid.dx == pytest.approx(0.125)
    assert grid.shape == (256,)
    with pytest.raises(ParameterError):
        PeriodicGrid(1, 16.0, 100)
    with pytest.raises(ParameterError):
        PeriodicGrid(3, 16.0, 64)
    assert PeriodicGrid(2, 8.0, 32).shape == (32, 32)

# end of test_periodic_grid()


def test_periodic_gaussian_norms():

    grid = PeriodicGrid(1, 16.0, 512)
    x = grid.coords()[0]
    u = ComplexField(grid, np.exp(-x * x) * np.exp(0.5j))
    assert lp_norm_pow(u, 2) == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-10)
    assert grad_norm_sq(u) == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-10)

    grid2 = PeriodicGrid(2, 8.0, 128)
    x, y = grid2.coords()
    u2 = ComplexField(grid2, np.exp(-(x * x + y * y)))
    assert lp_norm_pow(u2, 2) == pytest.approx(np.pi / 2.0, rel=1e-10)

# end of test_periodic_gaussian_norms()


def test_rescale_stretches_grid():

    v = gaussian(1)
    w = rescale(v, 1.25)
    assert w.grid.m == v.grid.m
    assert w.grid.r_max == pytest.approx(v.grid.r_max / 1.25)
    assert np.allclose(w.values, 1.25 ** 0.5 * v.values, rtol=1e-14, atol=0.0)
    assert np.allclose(w.derivative, 1.25 ** 1.5 * v.derivative, rtol=1e-14, atol=0.0)

    # resampling on the original grid agrees with the stretched samples
    resampled = rescale(v, 0.9, grid=v.grid)
    stretched = rescale(v, 0.9)
    assert resampled.grid.same_as(v.grid)
    for p in (2, 3, 5):
        assert lp_norm_pow(resampled, p) == pytest.approx(
            lp_norm_pow(stretched, p), rel=1e-6
        )
    assert grad_norm_sq(resampled) == pytest.approx(grad_norm_sq(stretched), rel=1e-6)
    with pytest.raises(GridMismatchError):
        rescale(v, 0.9, grid=RadialGrid.with_spacing(3, 10.0, 0.01))

# end of test_rescale_stretches_grid()


def test_h1_distance_includes_tails():

    # zero on the grid, 1 / r^2 beyond r_max = 100 in 3-D
    grid = RadialGrid.with_spacing(3, 100.0, 0.5)
    v = RealField(grid, np.zeros(grid.m + 1), tail=PowerTail((1.0,), (-2.0,)))
    zero = RealField(grid, np.zeros(grid.m + 1))
    # 4 pi / 100 from the values, 16 pi / (3 100^3) from the derivative
    expected = np.sqrt(4.0 * np.pi / 100.0 + 16.0 * np.pi / 3e6)
    assert h1_distance(v, zero) == pytest.approx(expected, rel=1e-8)
    assert h1_distance(zero, v) == pytest.approx(expected, rel=1e-8)
    assert h1_distance(v, v.scaled(2.0)) == pytest.approx(h1_norm(v), rel=1e-8)

# end of test_h1_distance_includes_tails()


def test_h1_distance_is_a_metric():

    rng = np.random.default_rng(3)
    grid = PeriodicGrid(2, 8.0, 32)
    fields = [
        ComplexField(grid, rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape))
        for _ in range(3)
    ]
    u, w, z = fields
    assert h1_distance(u, w) == pytest.approx(h1_distance(w, u), abs=1e-12)
    assert h1_distance(u, z) <= h1_distance(u, w) + h1_distance(w, z) + 1e-12

    rgrid = RadialGrid.with_spacing(3, 20.0, 0.05)
    radial = [
        RealField(rgrid, rng.normal(size=rgrid.m + 1), tail=PowerTail((c,), (-2.0,)))
        for c in rng.uniform(-1.0, 1.0, 3)
    ]
    u, w, z = radial
    assert h1_distance(u, w) == pytest.approx(h1_distance(w, u), abs=1e-12)
    assert h1_distance(u, z) <= h1_distance(u, w) + h1_distance(w, z) + 1e-12

# end of test_h1_distance_is_a_metric()


def test_plane_wave_gradient():

    grid = PeriodicGrid(1, 16.0, 256)
    x = grid.coords()[0]
    k = 2.0 * np.pi * 5 / (2.0 * grid.L)
    u = ComplexField(grid, np.exp(1j * k * x))
    assert lp_norm_pow(u, 2) == pytest.approx(2.0 * grid.L, rel=1e-12)
    assert grad_norm_sq(u) == pytest.approx(k * k * 2.0 * grid.L, rel=1e-12)

# end of test_plane_wave_gradient()


def test_trapezoid_is_second_order():

    # int_0^inf e^{-2 r} dr = 1/2, with a kink at r = 0
    errors = list()
    for h in (0.02, 0.01):
        grid = RadialGrid.with_spacing(1, 40.0, h)
        v = RealField.from_function(grid, lambda r: np.exp(-r))
        errors.append(abs(lp_norm_pow(v, 2) - 0.5))
    # end for
    assert errors[0] / errors[1] >= 3.9

# end of test_trapezoid_is_second_order()
