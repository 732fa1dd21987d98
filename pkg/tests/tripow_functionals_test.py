from tripow.TRIPOWException import ParameterError
from tripow.field import RadialGrid, RealField, rescale
from tripow.functionals import (
    NormQuintuple,
    action_S,
    compute_norms,
    d2S_analytic,
    d2S_fd,
    d2S_reduced,
    dK_dlambda_at_1,
    dK_reduced,
    dff_bound_1d,
    functional_J,
    functional_report,
    grad_reduction_1d,
    nehari_K,
    nehari_derivative,
    pohozaev_P
)
from tripow.model import Params
from tripow.utils import DFF_1D_BOUND

import numpy as np
import pytest


# norm quintuples (grad2, l3, l4, l5, l2) with K = P = 0
CRITICAL_1D = (NormQuintuple(1.0, 3.0, 6.0, 10.0, 1.0), Params(-1, -1, 1))
CRITICAL_2D = (NormQuintuple(2.0, 3.0, 4.0, 5.0, 1.0), Params(-1, 0, 1, 2))
CRITICAL_3D = (NormQuintuple(4.0, 1.0, 2.0, 5.0, 1.0), Params(-1, 0, 1, 3))


def random_norms(rng):
    return NormQuintuple(*rng.uniform(0.1, 10.0, 5))

# end of random_norms()


def test_norms_are_nonnegative():

    with pytest.raises(ParameterError):
        NormQuintuple(1.0, -1.0, 1.0, 1.0, 1.0)

# end of test_norms_are_nonnegative()


def test_critical_quintuples():

    for q, params in (CRITICAL_1D, CRITICAL_2D, CRITICAL_3D):
        assert nehari_K(q, params) == pytest.approx(0.0, abs=1e-12)
        assert pohozaev_P(q, params, params.n) == pytest.approx(0.0, abs=1e-12)
    # end for

# end of test_critical_quintuples()


def test_action_and_J():

    rng = np.random.default_rng(7)
    for _ in range(50):
        q = random_norms(rng)
        params = Params(-1, rng.uniform(-3.0, 3.0), 1)
        S = action_S(q, params)
        K = nehari_K(q, params)
        assert S == pytest.approx(K / 4.0 + functional_J(q, params), rel=1e-12)
        assert S == pytest.approx(
            0.5 * q.grad2 + q.l3 / 3.0 - params.a2 / 4.0 * q.l4 - q.l5 / 5.0,
            rel=1e-12, abs=1e-12
        )
        # J is a sum of positive terms when a1 = -1, a3 = 1
        assert functional_J(q) > 0
    # end for

# end of test_action_and_J()


def test_P_is_the_scaling_derivative():

    rng = np.random.default_rng(11)
    h = 1e-6
    for n in (1, 2, 3):
        q = random_norms(rng)
        params = Params(-1, 0.5, 1, n)
        deriv = (
            action_S(q.rescaled(1.0 + h, n), params)
            - action_S(q.rescaled(1.0 - h, n), params)
        ) / (2.0 * h)
        assert pohozaev_P(q, params, n) == pytest.approx(deriv, rel=1e-6, abs=1e-6)

        second = (
            action_S(q.rescaled(1.0 + 1e-4, n), params) - 2.0 * action_S(q, params)
            + action_S(q.rescaled(1.0 - 1e-4, n), params)
        ) / 1e-8
        assert d2S_analytic(q, params, n) == pytest.approx(second, rel=1e-5, abs=1e-5)

        dK = (
            nehari_K(q.rescaled(1.0 + h, n), params)
            - nehari_K(q.rescaled(1.0 - h, n), params)
        ) / (2.0 * h)
        assert dK_dlambda_at_1(q, params, n) == pytest.approx(dK, rel=1e-6, abs=1e-6)
    # end for

# end of test_P_is_the_scaling_derivative()


def test_reduced_forms_on_critical_points():

    for q, params in (CRITICAL_1D, CRITICAL_2D, CRITICAL_3D):
        n = params.n
        assert d2S_reduced(q, params, n) == pytest.approx(
            d2S_analytic(q, params, n), abs=1e-12
        )
        assert dK_reduced(q, params, n) == pytest.approx(
            dK_dlambda_at_1(q, params, n) - 5.0 * pohozaev_P(q, params, n), abs=1e-12
        )
        # <K'(v), v> = -2 grad2 - l3 - l5 on the Nehari manifold
        assert nehari_derivative(q, params) == pytest.approx(
            -2.0 * q.grad2 - q.l3 - q.l5, abs=1e-12
        )
    # end for

    assert d2S_analytic(*CRITICAL_1D, 1) == pytest.approx(-0.75)
    assert d2S_analytic(*CRITICAL_2D, 2) == pytest.approx(-4.0)
    assert d2S_analytic(*CRITICAL_3D, 3) == pytest.approx(-11.5)

# end of test_reduced_forms_on_critical_points()


def test_reduced_forms_need_normalization():

    q, _ = CRITICAL_1D
    with pytest.raises(ParameterError):
        d2S_reduced(q, Params(-2, 0, 1), 1)
    with pytest.raises(ParameterError):
        d2S_reduced(q, Params(-1, 0, 1), 4)

# end of test_reduced_forms_need_normalization()


def test_one_dimensional_bounds():

    q, params = CRITICAL_1D
    grad2, rhs = grad_reduction_1d(q)
    assert grad2 == pytest.approx(rhs)

    value, bound = dff_bound_1d(q, params.a2)
    assert value == pytest.approx(d2S_analytic(q, params, 1))
    assert bound < 0

    # the bound changes sign at 32 / (15 sqrt(6))
    _, below = dff_bound_1d(q, DFF_1D_BOUND - 1e-9)
    _, above = dff_bound_1d(q, DFF_1D_BOUND + 1e-9)
    assert below < 0 < above
    assert DFF_1D_BOUND == pytest.approx(0.8709, abs=1e-4)

# end of test_one_dimensional_bounds()


def test_amplified_norms():

    q = NormQuintuple(1.0, 2.0, 3.0, 4.0, 5.0)
    t = q.amplified(2.0)
    assert (t.grad2, t.l3, t.l4, t.l5, t.l2) == (4.0, 16.0, 48.0, 128.0, 20.0)
    r = q.rescaled(4.0, 2)
    assert r.l2 == q.l2 and r.grad2 == 16.0 and r.l4 == 48.0

# end of test_amplified_norms()


def test_finite_difference_second_derivative():

    grid = RadialGrid.with_spacing(1, 10.0, 0.01)
    v = RealField.from_function(
        grid, lambda r: np.exp(-r * r), lambda r: -2.0 * r * np.exp(-r * r)
    )
    params = Params(-1, -1, 1)
    assert d2S_fd(v, params, warn=False) == pytest.approx(
        d2S_analytic(v, params, 1), rel=1e-4
    )
    # only the quadratic term: S(v^lam) = lam^2 grad2 / 2
    free = Params(0, 0, 0)
    assert d2S_fd(v, free, warn=False) == pytest.approx(compute_norms(v).grad2, rel=1e-4)
    with pytest.raises(ParameterError):
        d2S_fd(v, params, step=0.1)

# end of test_finite_difference_second_derivative()


def test_rescaled_field_matches_rescaled_norms():

    grid = RadialGrid.with_spacing(1, 10.0, 0.01)
    v = RealField.from_function(
        grid, lambda r: np.exp(-r * r), lambda r: -2.0 * r * np.exp(-r * r)
    )
    q = compute_norms(v)
    for lam in (0.9, 1.1):
        p = compute_norms(rescale(v, lam))
        expected = q.rescaled(lam, 1)
        for name in ("grad2", "l3", "l4", "l5", "l2"):
            assert getattr(p, name) == pytest.approx(getattr(expected, name), rel=1e-6)
    # end for

# end of test_rescaled_field_matches_rescaled_norms()


def test_functional_report():

    q, params = CRITICAL_2D
    report = functional_report(q, params)
    assert report.K == pytest.approx(0.0, abs=1e-12)
    assert report.P == pytest.approx(0.0, abs=1e-12)
    assert report.d2S == pytest.approx(-4.0)
    assert report.S == pytest.approx(report.J, abs=1e-12)
    d = report.to_dict()
    assert set(d) == {"S", "K", "P", "J", "d2S", "dK", "norms", "params"}
    assert d["norms"]["l5"] == 5.0

# end of test_functional_report()
