from tripow.TRIPOWException import NonExistenceError, ParameterError
from tripow.functionals import (
    d2S_analytic,
    d2S_fd,
    d2S_reduced,
    grad_reduction_1d,
    instability_criterion
)
from tripow.model import Params
from tripow.profile import (
    fit_decay_exponent,
    h1_membership,
    solve_profile,
    solve_profile_1d
)
from tripow.utils import ODE_ATOL, ODE_RTOL

import numpy as np
import pytest


# light settings for the shooting runs
RADIAL_OPTIONS = {"h": 0.02, "tail_level": 1e-4}


@pytest.fixture(scope="module")
def boundary_profile():
    return solve_profile(Params(-1, 0, 1), 1)

# end of boundary_profile()


@pytest.fixture(scope="module")
def dff_profile():
    return solve_profile(Params(-1, 0.5, 1), 1)

# end of dff_profile()


def test_peak_from_first_integral(boundary_profile):

    # G(c) = 0 for c^2 = 5/3
    assert boundary_profile.peak == pytest.approx(np.sqrt(5.0 / 3.0), abs=1e-8)
    assert boundary_profile.peak == pytest.approx(1.2909944, abs=1e-7)
    assert boundary_profile.shoot_param == boundary_profile.peak

# end of test_peak_from_first_integral()


def test_ddf_peak():

    profile = solve_profile(Params(-1, -1, 1), 1, h=0.05)
    assert profile.peak == pytest.approx(2.0593262, abs=1e-6)

# end of test_ddf_peak()


def test_profile_shape(boundary_profile):

    phi = boundary_profile.field.values
    assert np.all(phi > 0)
    assert np.all(np.diff(phi) < 0)
    assert boundary_profile.field.values[-1] < 1e-6 * boundary_profile.peak

    frame = boundary_profile.to_frame()
    assert list(frame.columns) == ["r", "phi"]
    assert len(frame) == boundary_profile.field.grid.m + 1

# end of test_profile_shape()


def test_residuals(boundary_profile):

    res = boundary_profile.residuals
    assert res.K_res <= 1e-6
    assert res.P_res <= 1e-6
    assert res.first_integral_res <= 1e-8
    assert res.ode_res <= 1e-4

# end of test_residuals()


def test_algebraic_decay(boundary_profile):

    c, p = fit_decay_exponent(boundary_profile)
    assert -2.1 <= p <= -1.9
    # phi ~ 6 / x^2
    assert c == pytest.approx(6.0, rel=0.05)
    assert boundary_profile.decay[1] == pytest.approx(p)

# end of test_algebraic_decay()


def test_h1_membership(boundary_profile):

    report = h1_membership(boundary_profile)
    assert report.finite
    assert report.l2_tail >= 0 and report.grad2_tail >= 0
    assert report.l2 == pytest.approx(boundary_profile.norms.l2, rel=1e-4)

# end of test_h1_membership()


def test_one_dimensional_identities(boundary_profile, dff_profile):

    for profile in (boundary_profile, dff_profile):
        params = profile.params
        grad2, rhs = grad_reduction_1d(profile.norms)
        assert grad2 == pytest.approx(rhs, rel=1e-6)
        assert d2S_reduced(profile.norms, params, 1) == pytest.approx(
            d2S_analytic(profile.norms, params, 1), rel=1e-4
        )
    # end for

# end of test_one_dimensional_identities()


def test_dff_instability_criterion(dff_profile):

    d2s, negative, bound = instability_criterion(dff_profile, dff_profile.params, 1)
    assert d2s < 0
    assert negative
    assert bound

# end of test_dff_instability_criterion()


def test_nonexistent_profile():

    with pytest.raises(NonExistenceError):
        solve_profile(Params(-1, 1, -1), 1)
    with pytest.raises(NonExistenceError):
        solve_profile(Params(-1, -1, -1), 1)
    with pytest.raises(ParameterError):
        solve_profile_1d(Params(-1, 0, 1, 2))

# end of test_nonexistent_profile()


def test_dfd_profile_above_threshold():

    profile = solve_profile(Params(-1, 2.1, -1), 1, h=0.05)
    assert profile.peak > 0
    assert np.all(np.diff(profile.field.values) < 0)

# end of test_dfd_profile_above_threshold()


def test_dfd_is_one_dimensional():

    with pytest.raises(NonExistenceError):
        solve_profile(Params(-1, 2.1, -1), 3, **RADIAL_OPTIONS)

# end of test_dfd_is_one_dimensional()


@pytest.mark.parametrize("a2", [0.25, 0.5, 0.8])
def test_dff_line_sign(a2):

    params = Params(-1, a2, 1)
    profile = solve_profile(params, 1, h=0.05)
    d2s = d2S_analytic(profile.norms, params, 1)
    assert d2s < 0
    assert d2S_fd(profile.field, params) == pytest.approx(d2s, rel=1e-5)

# end of test_dff_line_sign()


def test_scaling_derivative_on_profile(boundary_profile):

    params = boundary_profile.params
    assert d2S_fd(boundary_profile.field, params) == pytest.approx(
        d2S_analytic(boundary_profile.norms, params, 1), rel=1e-5
    )

# end of test_scaling_derivative_on_profile()


@pytest.fixture(scope="module", params=[2, 3])
def ddf_radial(request):
    n = request.param
    return solve_profile(Params(-1, -1, 1, n), n, **RADIAL_OPTIONS)

# end of ddf_radial()


def test_radial_profile(ddf_radial):

    profile = ddf_radial
    n = profile.n
    params = profile.params

    # the shooting value lies above the first positive zero of G
    assert profile.peak > 2.0593262
    assert profile.bracket[0] <= profile.peak <= profile.bracket[1]
    assert max(profile.residuals.K_res, profile.residuals.P_res) <= 1e-4
    assert np.all(np.diff(profile.field.values) < 0)
    assert h1_membership(profile).finite

    d2s, negative, bound = instability_criterion(profile, params, n)
    assert negative and not bound
    assert d2S_reduced(profile.norms, params, n) == pytest.approx(d2s, rel=1e-2)
    assert d2S_fd(profile.field, params) == pytest.approx(d2s, rel=1e-5)

# end of test_radial_profile()


def test_radial_decay(ddf_radial):

    _, p = fit_decay_exponent(ddf_radial)
    assert -2.1 <= p <= -1.9

# end of test_radial_decay()


def test_shooting_is_reproducible(ddf_radial):

    # different start radius and halved tolerances
    params = ddf_radial.params
    n = ddf_radial.n
    other = solve_profile(
        params, n, r0=1e-5, rtol=0.5 * ODE_RTOL, atol=0.5 * ODE_ATOL,
        **RADIAL_OPTIONS
    )
    assert other.peak == pytest.approx(ddf_radial.peak, rel=1e-8)

# end of test_shooting_is_reproducible()


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("a2", [0.5, 1.0, 2.0])
def test_dff_radial_sign(n, a2):

    params = Params(-1, a2, 1, n)
    profile = solve_profile(params, n, **RADIAL_OPTIONS)
    d2s = d2S_analytic(profile.norms, params, n)
    assert d2s < 0
    assert d2S_fd(profile.field, params) == pytest.approx(d2s, rel=1e-5)

# end of test_dff_radial_sign()
