from tripow.TRIPOWException import ConditionViolationError, ParameterError
from tripow.model import (
    G_eval,
    Params,
    case_tag,
    check_blp_conditions,
    check_uniqueness_condition,
    classify_existence,
    g_eval,
    root_analysis
)
from tripow.utils import DFD_THRESHOLD
from scipy.integrate import quad

import numpy as np
import pandas as pd
import pytest
import os


TEST_DIR = os.path.dirname(os.path.abspath(__file__))
EXPECTED_VERDICTS = os.path.join(
    TEST_DIR, "test_data", "expected_results", "classify_verdicts.tsv"
)


def test_nonlinearity_values():

    ddf = Params(-1, -1, 1)
    boundary = Params(-1, 0, 1)

    assert g_eval(ddf, 2.0) == pytest.approx(4.0, abs=1e-14)
    assert G_eval(boundary, 1.0) == pytest.approx(-2.0 / 15.0, abs=1e-14)
    # vectorized evaluation keeps the shape
    s = np.linspace(0.0, 3.0, 7)
    assert np.asarray(g_eval(ddf, s)).shape == s.shape
    assert g_eval(ddf, 0.0) == 0.0

# end of test_nonlinearity_values()


def test_negative_amplitude_rejected():

    with pytest.raises(ParameterError):
        g_eval(Params(-1, 0, 1), -0.5)

# end of test_negative_amplitude_rejected()


def test_params_validation():

    with pytest.raises(ParameterError):
        Params(-1, 0, 1, n=4)
    with pytest.raises(ParameterError):
        Params(-1, np.nan, 1)
    p = Params(-1, 0, 1, 2)
    assert isinstance(p.a2, float) and p.n == 2
    assert p.with_dimension(3).n == 3

# end of test_params_validation()


def test_normalization():

    p = Params(-4, 2, 1)
    normalized, amp, length = p.normalized()

    assert normalized.a1 == -1.0 and normalized.a3 == 1.0
    assert normalized.a2 == pytest.approx(1.0)
    assert amp == pytest.approx(2.0)
    assert normalized.is_standard()
    with pytest.raises(ParameterError):
        Params(0, 1, 1).normalized()

# end of test_normalization()


def test_case_tags():

    assert case_tag(Params(-1, -1, 1)).label == "DDF"
    assert case_tag(Params(-1, 1, -1)).label == "DFD"
    tag = case_tag(Params(-1, 0, 1))
    assert tag.boundary and tag.label == "boundary" and tag.pattern == "D0F"

# end of test_case_tags()


def test_classify_verdicts():

    expected = pd.read_csv(EXPECTED_VERDICTS, sep="\t")
    for _, row in expected.iterrows():
        p = Params(row["a1"], row["a2"], row["a3"])
        tag, exists, reason = classify_existence(p)
        assert tag.label == row["case"], reason
        assert exists == bool(row["exists"]), reason
    # end for

# end of test_classify_verdicts()


def test_nonexistence_reasons():

    _, exists, reason = classify_existence(Params(-1, -1, -1))
    assert not exists and "DDD" in reason

    _, exists, reason = classify_existence(Params(-1, 1, -1))
    assert not exists and "8/sqrt(15)" in reason

    _, exists, reason = classify_existence(Params(1, -1, 1))
    assert not exists and "not negative" in reason

# end of test_nonexistence_reasons()


def test_first_zero_of_G():

    # a2 = 0: G = s^3 (s^2/5 - 1/3)
    report = root_analysis(Params(-1, 0, 1))
    assert report.exists
    assert report.c == pytest.approx(np.sqrt(5.0 / 3.0), abs=1e-12)
    assert G_eval(Params(-1, 0, 1), report.c) == pytest.approx(0.0, abs=1e-13)

    report = root_analysis(Params(-1, -1, 1))
    assert report.exists
    # from the closed-form quadratic root
    assert report.c == pytest.approx(2.0593262, abs=1e-6)
    assert report.g_at_c > 0
    assert report.alpha == pytest.approx((1.0 + np.sqrt(5.0)) / 2.0, abs=1e-12)
    assert np.isinf(report.beta)

# end of test_first_zero_of_G()


def test_dfd_threshold_bisection():

    lo, hi = 2.0, 2.1
    assert not classify_existence(Params(-1, lo, -1))[1]
    assert classify_existence(Params(-1, hi, -1))[1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if classify_existence(Params(-1, mid, -1))[1]:
            hi = mid
        else:
            lo = mid
    # end for

    assert abs(hi - DFD_THRESHOLD) < 1e-6
    assert DFD_THRESHOLD == pytest.approx(2.0655911, abs=1e-7)

# end of test_dfd_threshold_bisection()


def test_blp_conditions():

    for n in (2, 3):
        report = check_blp_conditions(Params(-1, -1, 1), n)
        assert report.all_hold(), report.failed
        assert report.alpha < report.zeta0
        assert report.g_prime_alpha > 0
    # end for

    report = check_blp_conditions(Params(-1, -1, -1), 2)
    assert not report.all_hold()
    assert 2 in report.failed
    with pytest.raises(ConditionViolationError):
        report.raise_on_failure()

    with pytest.raises(ParameterError):
        check_blp_conditions(Params(-1, -1, 1), 1)

# end of test_blp_conditions()


def test_blp_growth_exponent():

    # without a zero of g above zeta0, l must exceed the degree (and stay
    # below the critical exponent 5 when n = 3)
    assert not check_blp_conditions(Params(-1, -1, 1), 2, l=3.5).all_hold()
    assert not check_blp_conditions(Params(-1, -1, 1), 3, l=5.5).all_hold()

# end of test_blp_growth_exponent()


def test_uniqueness_condition():

    # (G/g)' = (1/3 - 4 s^2/15 + s^4/5) / (s^2 - 1)^2 stays above 1/6
    holds, slack = check_uniqueness_condition(Params(-1, 0, 1), 3)
    assert holds
    assert slack > 0

    holds, slack = check_uniqueness_condition(Params(-1, 0, 1), 2)
    assert holds and slack > 0

    with pytest.raises(ParameterError):
        check_uniqueness_condition(Params(-1, 0, 1), 1)
    with pytest.raises(ParameterError):
        check_uniqueness_condition(Params(-1, 0, 1), 3, np.array([-1.0, 1.0]))

# end of test_uniqueness_condition()


@pytest.mark.parametrize("n", [2, 3])
def test_uniqueness_condition_random_a2(n):

    rng = np.random.default_rng(2021 + n)
    for a2 in rng.uniform(-5.0, 5.0, 100):
        holds, slack = check_uniqueness_condition(Params(-1, a2, 1), n)
        assert holds, "a2 = %.6g, slack = %.3g" % (a2, slack)
    # end for

# end of test_uniqueness_condition_random_a2()


def test_G_is_the_antiderivative():

    rng = np.random.default_rng(5)
    for _ in range(20):
        params = Params(*rng.uniform(-3.0, 3.0, 3))
        s = rng.uniform(0.0, 3.0)
        integral, _ = quad(lambda t: g_eval(params, t), 0.0, s, epsabs=1e-13)
        assert abs(G_eval(params, s) - integral) <= 1e-8
    # end for

# end of test_G_is_the_antiderivative()
