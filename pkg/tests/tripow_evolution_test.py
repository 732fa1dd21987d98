from tripow.TRIPOWException import (
    GridMismatchError,
    InsufficientSamplesError,
    ParameterError
)
from tripow.evolution import (
    EvolutionConfig,
    EvolutionTrace,
    default_config,
    evolve,
    gaussian_data,
    instability_experiment,
    make_initial_data,
    smoothstep_cutoff,
    step_strang,
    tube_distance,
    tube_distance_bounds,
    variance,
    virial_check
)
from tripow.field import ComplexField, PeriodicGrid, grad_norm_sq, h1_norm
from tripow.model import Params
from tripow.profile import solve_profile

import numpy as np
import pytest


FREE = Params(0, 0, 0)
DDF = Params(-1, -1, 1)
BOUNDARY = Params(-1, 0, 1)


@pytest.fixture(scope="module")
def profile():
    return solve_profile(BOUNDARY, 1, h=0.02)

# end of profile()


def test_config_validation():

    grid = PeriodicGrid(1, 16.0, 256)
    with pytest.raises(ParameterError):
        EvolutionConfig(FREE, grid, 0.0, 1.0)
    with pytest.raises(ParameterError):
        EvolutionConfig(FREE, grid, 1e-3, 1.0, save_every=0)
    with pytest.raises(ParameterError):
        default_config(FREE, 3)

    config = default_config(DDF, 1, t_end=1.0)
    assert config.steps == 1000
    assert config.grid.N == 2048 and config.grid.L == 128.0
    assert config.params.n == 1
    assert config.to_dict()["points"] == 2048

# end of test_config_validation()


def test_smoothstep_cutoff():

    r = np.linspace(0.0, 5.0, 501)
    chi, dchi = smoothstep_cutoff(r, 2.0)
    assert np.all(chi[r <= 2.0] == 1.0)
    assert np.all(chi[r >= 4.0] == 0.0)
    assert np.all(np.diff(chi) <= 0)
    assert np.all(dchi <= 0)
    assert np.max(np.abs(np.gradient(chi, r) - dchi)) < 1e-3

# end of test_smoothstep_cutoff()


def test_gauge_equivariance():

    grid = PeriodicGrid(1, 16.0, 256)
    u = gaussian_data(grid, width=1.5, amp=1.2)
    theta = 0.7
    rotated = ComplexField(grid, np.exp(1j * theta) * u.values)
    for _ in range(5):
        u = step_strang(u, DDF, 1e-3)
        rotated = step_strang(rotated, DDF, 1e-3)
    # end for
    assert np.max(np.abs(rotated.values - np.exp(1j * theta) * u.values)) < 1e-12

# end of test_gauge_equivariance()


def test_translation_equivariance():

    grid = PeriodicGrid(1, 16.0, 256)
    u = gaussian_data(grid, width=1.5, amp=1.2)
    shifted = ComplexField(grid, np.roll(u.values, 17))
    for _ in range(5):
        u = step_strang(u, DDF, 1e-3)
        shifted = step_strang(shifted, DDF, 1e-3)
    # end for
    assert np.max(np.abs(shifted.values - np.roll(u.values, 17))) < 1e-12

# end of test_translation_equivariance()


def test_free_gaussian_variance():

    # V(t) = V(0) + 4 t^2 ||grad u0||^2 for the free flow of real data
    grid = PeriodicGrid(1, 32.0, 512)
    u0 = gaussian_data(grid)
    config = EvolutionConfig(FREE, grid, 1e-2, 1.0, save_every=10)
    trace = evolve(config, u0)

    grad2 = grad_norm_sq(u0)
    assert grad2 == pytest.approx(np.sqrt(np.pi / 2.0), rel=1e-10)
    assert trace.variance[0] == pytest.approx(0.25 * np.sqrt(np.pi / 2.0), rel=1e-10)
    for t, v in zip(trace.times, trace.variance):
        assert v == pytest.approx(trace.variance[0] + 4.0 * t * t * grad2, rel=1e-8)
    # end for
    assert trace.drift("mass") < 1e-12
    assert virial_check(trace) < 1e-6

# end of test_free_gaussian_variance()


def test_conservation():

    grid = PeriodicGrid(1, 32.0, 512)
    u0 = gaussian_data(grid, width=2.0, amp=0.8)
    config = EvolutionConfig(DDF, grid, 1e-3, 5.0, save_every=20)
    trace = evolve(config, u0)

    assert len(trace) == 251
    assert trace.drift("mass") < 1e-10
    assert trace.drift("energy") <= 1e-6
    assert virial_check(trace) < 1e-2
    assert not trace.boundary_flag
    assert trace.exit_time is None
    assert trace.final_state is not None

    frame = trace.to_frame()
    assert list(frame.columns) == [
        "t", "mass", "energy", "variance", "P", "tube_dist", "tube_lower",
        "dvariance", "boundary"
    ]
    assert frame["tube_dist"].isna().all()

    # the Strang energy error is second order in dt
    halved = evolve(EvolutionConfig(DDF, grid, 5e-4, 5.0, save_every=40), u0)
    assert np.allclose(halved.times, trace.times)
    ratio = trace.drift("energy") / halved.drift("energy")
    assert 3.5 <= ratio <= 4.5

# end of test_conservation()


def test_variance_rate_of_real_data():

    grid = PeriodicGrid(1, 32.0, 512)
    u0 = gaussian_data(grid)
    trace = evolve(EvolutionConfig(FREE, grid, 1e-2, 0.5, save_every=5), u0)
    # dV/dt = 8 t grad2 for the free flow
    grad2 = grad_norm_sq(u0)
    for t, rate in zip(trace.times, trace.variance_rate):
        assert rate == pytest.approx(8.0 * t * grad2, abs=1e-8)
    # end for

# end of test_variance_rate_of_real_data()


def test_virial_needs_samples():

    trace = EvolutionTrace()
    with pytest.raises(InsufficientSamplesError):
        virial_check(trace)

# end of test_virial_needs_samples()


def test_evolve_rejects_foreign_grid():

    config = EvolutionConfig(FREE, PeriodicGrid(1, 16.0, 256), 1e-3, 0.01)
    with pytest.raises(ParameterError):
        evolve(config, gaussian_data(PeriodicGrid(1, 16.0, 128)))

# end of test_evolve_rejects_foreign_grid()


def test_two_dimensional_flow():

    grid = PeriodicGrid(2, 16.0, 64)
    u0 = gaussian_data(grid, width=2.0, amp=0.5)
    trace = evolve(EvolutionConfig(DDF, grid, 5e-3, 0.25, save_every=5), u0)
    assert trace.drift("mass") < 1e-10
    assert variance(trace.final_state) > trace.variance[0]

# end of test_two_dimensional_flow()


def test_tube_distance(profile):

    grid = PeriodicGrid(1, 64.0, 1024)
    u0 = make_initial_data(profile, 1.0, 20.0, grid)

    upper, lower = tube_distance_bounds(u0, u0)
    assert upper == pytest.approx(0.0, abs=1e-6)
    assert lower == pytest.approx(0.0, abs=1e-6)

    # the orbit contains phases and lattice shifts
    moved = ComplexField(grid, np.exp(0.3j) * np.roll(u0.values, 40))
    assert tube_distance(moved, u0) == pytest.approx(0.0, abs=1e-6)

    far = ComplexField(grid, 2.0 * u0.values)
    upper, lower = tube_distance_bounds(far, u0)
    assert upper == pytest.approx(h1_norm(u0), rel=1e-6)
    assert lower <= upper

    with pytest.raises(GridMismatchError):
        tube_distance(u0, ComplexField(PeriodicGrid(1, 64.0, 512), np.zeros(512)))

# end of test_tube_distance()


def test_initial_data(profile):

    grid = PeriodicGrid(1, 64.0, 1024)
    with pytest.raises(ParameterError):
        make_initial_data(profile, 1.5, None, grid)
    with pytest.raises(ParameterError):
        make_initial_data(profile, 1.0, 40.0, grid)
    with pytest.raises(ParameterError):
        make_initial_data(profile, 1.0, None, PeriodicGrid(2, 16.0, 64))

    u0 = make_initial_data(profile, 1.05, None, grid)
    x = grid.coords()[0]
    assert np.all(u0.values[np.abs(x) >= 2.0 * 0.45 * grid.L] == 0)
    assert np.max(np.abs(u0.values)) == pytest.approx(
        1.05 ** 0.5 * profile.peak, rel=1e-6
    )

# end of test_initial_data()


def test_instability_experiment_short_horizon(profile):

    grid = PeriodicGrid(1, 64.0, 1024)
    config = EvolutionConfig(BOUNDARY, grid, 1e-3, 0.2, save_every=10)
    report = instability_experiment(BOUNDARY, 1, 1.05, 0.1, config=config, profile=profile)

    assert report.d2S < 0
    assert report.in_B
    assert report.P0 < 0
    assert report.virial0 == pytest.approx(8.0 * report.P0)
    assert report.epsilon == pytest.approx(0.1 * h1_norm(profile.field))
    assert report.verdict in ("exited tube", "no exit")
    assert report.trace is not None and len(report.trace) == 21
    assert report.max_tube_dist > 0
    d = report.to_dict()
    assert d["lambda"] == 1.05 and "in_set_B" in d

# end of test_instability_experiment_short_horizon()


def test_three_dimensional_criteria_only():

    params = Params(-1, -1, 1, 3)
    profile = solve_profile(params, 3, h=0.02, tail_level=1e-4)
    report = instability_experiment(params, 3, 1.05, 0.1, profile=profile)

    assert report.verdict == "t0 criteria only"
    assert report.trace is None and report.exit_time is None
    assert report.d2S < 0
    assert report.in_B and report.P0 < 0

# end of test_three_dimensional_criteria_only()
