"""Time integration of i u_t + Δu + (a1|u| + a2|u|^2 + a3|u|^3) u = 0 on
periodic boxes (n = 1, 2) and the instability experiment.

The integrator is a Strang splitting: the nonlinear substep is the exact
pointwise phase rotation u -> u exp(i tau f(|u|)) (|u| is invariant
under it), the linear substep is the exact Fourier multiplier
exp(-i dt |k|^2). Diagnostics (mass, energy, variance and its rate, P,
tube distance, boundary mass) are recorded every save_every steps.
"""

from tripow.TRIPOWException import (
    GridMismatchError,
    InsufficientSamplesError,
    NumericalAbortError,
    ParameterError
)
from tripow.field import (
    ComplexField,
    PeriodicGrid,
    RealField,
    h1_norm,
    rescale
)
from tripow.functionals import (
    NormQuintuple,
    action_S,
    compute_norms,
    d2S_analytic,
    pohozaev_P
)
from tripow.model import Params
from tripow.profile import solve_profile
from tripow.utils import (
    BOUNDARY_MASS,
    BOUNDARY_STRIP,
    EVOLVE_BOX,
    EVOLVE_DT,
    EVOLVE_POINTS,
    print_warning
)
from tripow.variational import in_set_B
from dataclasses import dataclass, field
from numba import jit
from typing import Dict, List, Optional, Tuple
import pandas as pd
import numpy as np
import time


#-----------------------------------------------------------------------
# domain types
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class EvolutionConfig(object):
    """
    Discretization of one evolution run.

    ...

    Attributes
    ----------
    params : Params
        coefficients
    grid : PeriodicGrid
        periodic grid
    dt : float
        time step
    t_end : float
        horizon
    save_every : int
        steps between two saved diagnostics
    epsilon_tube : float, optional
        tube radius (H1 units) for the exit test
    """

    params: Params
    grid: PeriodicGrid
    dt: float
    t_end: float
    save_every: int = 10
    epsilon_tube: Optional[float] = None

    def __post_init__(self):
        errmsg: str
        if not self.dt > 0:
            errmsg = "\n\nERROR: the time step must be positive"
            raise ParameterError(errmsg)
        if self.t_end < 0:
            errmsg = "\n\nERROR: the horizon cannot be negative"
            raise ParameterError(errmsg)
        if self.save_every < 1:
            errmsg = "\n\nERROR: diagnostics must be saved at least every step"
            raise ParameterError(errmsg)

    @property
    def steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def cfl(self) -> float:
        """dt (pi N / (2L))^2, kept below 1 for a resolved splitting."""
        return self.dt * (np.pi * self.grid.N / (2.0 * self.grid.L)) ** 2

    def to_dict(self) -> Dict:
        return {
            "params": self.params.to_dict(),
            "n": self.grid.n,
            "box": self.grid.L,
            "points": self.grid.N,
            "dt": self.dt,
            "t_end": self.t_end,
            "save_every": self.save_every,
            "epsilon_tube": self.epsilon_tube,
        }

# end of EvolutionConfig


@dataclass
class EvolutionTrace(object):
    """
    Time series of the saved diagnostics.

    ...

    Attributes
    ----------
    times : list
        saved times
    mass : list
        ||u||^2
    energy : list
        S(u)
    variance : list
        ||x u||^2
    variance_rate : list
        4 Im int x . conj(u) grad u
    P_values : list
        P(u)
    tube_dist : list
        H1 distance to the orbit of the profile (upper estimate)
    tube_lower : list
        L2 distance to the orbit (lower estimate)
    boundary : list
        fraction of mass in the outer strip of the box
    exit_time : float or None
        first saved time with tube_dist > eps and tube_lower > 0.8 eps
    boundary_flag : bool
        True when the boundary fraction exceeded its threshold
    """

    times: List[float] = field(default_factory=list)
    mass: List[float] = field(default_factory=list)
    energy: List[float] = field(default_factory=list)
    variance: List[float] = field(default_factory=list)
    variance_rate: List[float] = field(default_factory=list)
    P_values: List[float] = field(default_factory=list)
    tube_dist: List[float] = field(default_factory=list)
    tube_lower: List[float] = field(default_factory=list)
    boundary: List[float] = field(default_factory=list)
    exit_time: Optional[float] = None
    boundary_flag: bool = False
    final_state: Optional[ComplexField] = None

    def __len__(self) -> int:
        return len(self.times)

    def to_frame(self) -> pd.DataFrame:
        nan: List[float] = [np.nan] * len(self.times)
        return pd.DataFrame({
            "t": self.times,
            "mass": self.mass,
            "energy": self.energy,
            "variance": self.variance,
            "P": self.P_values,
            "tube_dist": self.tube_dist if self.tube_dist else nan,
            "tube_lower": self.tube_lower if self.tube_lower else nan,
            "dvariance": self.variance_rate,
            "boundary": self.boundary,
        })

    def drift(self, series: str) -> float:
        """max |q(t) - q(0)| / |q(0)| of a saved series."""
        values: np.ndarray = np.asarray(getattr(self, series), dtype=float)
        return float(np.max(np.abs(values - values[0])) / abs(values[0]))

# end of EvolutionTrace


@dataclass(frozen=True)
class InstabilityReport(object):
    """Outcome of the instability experiment."""

    verdict: str
    n: int
    lam: float
    epsilon: Optional[float]
    exit_time: Optional[float]
    d2S: float
    in_B: bool
    S0: float
    P0: float
    virial0: float
    P_max_pre_exit: Optional[float]
    m_observed: Optional[float]
    P_negative: Optional[bool]
    variance_concave: Optional[bool]
    max_tube_dist: Optional[float]
    virial_err: Optional[float]
    boundary_flag: bool
    trace: Optional[EvolutionTrace] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "lambda": self.lam,
            "epsilon": self.epsilon,
            "exit_time": self.exit_time,
            "d2S": self.d2S,
            "in_set_B": self.in_B,
            "S0": self.S0,
            "P0": self.P0,
            "virial0": self.virial0,
            "P_max_pre_exit": self.P_max_pre_exit,
            "m_observed": self.m_observed,
            "P_negative": self.P_negative,
            "variance_concave": self.variance_concave,
            "max_tube_dist": self.max_tube_dist,
            "virial_err": self.virial_err,
            "boundary_flag": self.boundary_flag,
        }

# end of InstabilityReport


def default_config(
    params: Params,
    n: int,
    t_end: float = 5.0,
    L: Optional[float] = None,
    N: Optional[int] = None,
    dt: Optional[float] = None,
    save_every: int = 10,
    epsilon_tube: Optional[float] = None
) -> EvolutionConfig:
    """Evolution configuration with the per-dimension defaults."""

    if n not in (1, 2):
        errmsg = "\n\nERROR: time evolution is available for n = 1, 2 only"
        raise ParameterError(errmsg)
    grid: PeriodicGrid = PeriodicGrid(
        n, EVOLVE_BOX[n] if L is None else L, EVOLVE_POINTS[n] if N is None else N
    )
    return EvolutionConfig(
        params.with_dimension(n), grid, EVOLVE_DT[n] if dt is None else dt,
        t_end, save_every, epsilon_tube
    )

# end of default_config()


#-----------------------------------------------------------------------
# initial data
#-----------------------------------------------------------------------
def smoothstep_cutoff(r: np.ndarray, R: float) -> Tuple[np.ndarray, np.ndarray]:
    """chi(r / R) and its r-derivative: 1 for r <= R, 0 for r >= 2R,
    quintic smoothstep in between."""

    s: np.ndarray = np.clip(np.asarray(r, dtype=float) / R - 1.0, 0.0, 1.0)
    chi: np.ndarray = 1.0 - s ** 3 * (10.0 - 15.0 * s + 6.0 * s * s)
    dchi: np.ndarray = -30.0 * s * s * (1.0 - s) ** 2 / R
    return chi, dchi

# end of smoothstep_cutoff()


def sample_radial(
    radial: RealField,
    grid: PeriodicGrid,
    lam: float = 1.0,
    R: Optional[float] = None
) -> np.ndarray:
    """Sample chi_R(|x|) v^lam(|x|) on a periodic grid."""

    v: RealField = rescale(radial, lam) if lam != 1.0 else radial
    r: np.ndarray = grid.radius()
    tail = v.extension()[0]
    vals, _ = v.evaluate(r.ravel(), tail)
    vals = vals.reshape(r.shape)
    if R is not None:
        chi, _ = smoothstep_cutoff(r, R)
        vals = chi * vals
    return vals

# end of sample_radial()


def gaussian_data(grid: PeriodicGrid, width: float = 1.0, amp: float = 1.0) -> ComplexField:
    r2: np.ndarray = grid.radius() ** 2
    return ComplexField(grid, amp * np.exp(-r2 / (width * width)) + 0j)

# end of gaussian_data()


def make_initial_data(
    profile,
    lam: float,
    R: Optional[float],
    grid: PeriodicGrid
) -> ComplexField:
    """Sample chi_R phi^lam on the periodic grid.

    Parameters
    ----------
    profile : Profile
        computed profile (n = grid.n)
    lam : float
        scale, in [0.8, 1.25]
    R : float, optional
        cut-off radius, 2R < L (default 0.45 L)
    grid : PeriodicGrid
        periodic grid

    Returns
    -------
    ComplexField
        compactly supported initial state
    """

    errmsg: str
    if not 0.8 <= lam <= 1.25:
        errmsg = "\n\nERROR: the scale must lie in [0.8, 1.25] (got %g)" % lam
        raise ParameterError(errmsg)
    if profile.n != grid.n:
        errmsg = "\n\nERROR: profile and grid dimensions differ"
        raise ParameterError(errmsg)
    if R is None:
        R = 0.45 * grid.L
    if not 2.0 * R < grid.L:
        errmsg = "\n\nERROR: the cut-off support 2R = %g must fit in the box (L = %g)" % (
            2.0 * R, grid.L
        )
        raise ParameterError(errmsg)

    # H1 size of the removed part, on the radial grid
    scaled: RealField = rescale(profile.field, lam, warn=False)
    r: np.ndarray = scaled.grid.nodes
    chi, dchi = smoothstep_cutoff(r, R)
    removed: RealField = RealField(
        scaled.grid, (1.0 - chi) * scaled.values,
        (1.0 - chi) * scaled.gradient() - dchi * scaled.values, scaled.tail
    )
    cut_err: float = h1_norm(removed)
    ref: float = h1_norm(profile.field)
    if cut_err > 1e-3 * ref:
        print_warning(
            "the cut-off at R = %g removes %.3g in H1 norm (%.2g of the profile)"
            % (R, cut_err, cut_err / ref)
        )

    return ComplexField(grid, sample_radial(profile.field, grid, lam, R) + 0j)

# end of make_initial_data()


#-----------------------------------------------------------------------
# integrator
#-----------------------------------------------------------------------
@jit(nopython=True)
def _nonlinear_phase(u, a1, a2, a3, tau):
    """u exp(i tau (a1|u| + a2|u|^2 + a3|u|^3)), pointwise."""

    out = np.empty_like(u)
    for j in range(u.shape[0]):
        m = abs(u[j])
        theta = tau * m * (a1 + m * (a2 + m * a3))
        out[j] = u[j] * (np.cos(theta) + 1j * np.sin(theta))
    return out

# end of _nonlinear_phase()


def _strang(
    values: np.ndarray,
    linear: np.ndarray,
    params: Params,
    dt: float
) -> np.ndarray:
    shape = values.shape
    half: float = 0.5 * dt
    u = _nonlinear_phase(values.ravel(), params.a1, params.a2, params.a3, half)
    u = np.fft.ifftn(linear * np.fft.fftn(u.reshape(shape)))
    u = _nonlinear_phase(u.ravel(), params.a1, params.a2, params.a3, half)
    return u.reshape(shape)

# end of _strang()


def step_strang(u: ComplexField, params: Params, dt: float) -> ComplexField:
    """One Strang step: half nonlinear rotation, exact linear flow over
    dt, half nonlinear rotation.

    Parameters
    ----------
    u : ComplexField
        state
    params : Params
        coefficients
    dt : float
        time step

    Returns
    -------
    ComplexField
        state after one step
    """

    linear: np.ndarray = np.exp(-1j * dt * u.grid.k2())
    new: np.ndarray = _strang(u.values, linear, params, dt)
    if not np.all(np.isfinite(new)):
        errmsg = "\n\nERROR: the Strang step produced non-finite values"
        raise NumericalAbortError(errmsg, u.values.copy(), None, u.grid)
    return ComplexField(u.grid, new)

# end of step_strang()


#-----------------------------------------------------------------------
# diagnostics
#-----------------------------------------------------------------------
def variance(u: ComplexField, grid: Optional[PeriodicGrid] = None) -> float:
    """||x u||^2 with box-centered coordinates."""

    if grid is None:
        grid = u.grid
    r2: np.ndarray = grid.radius() ** 2
    return float(grid.cell * np.sum(r2 * np.abs(u.values) ** 2))

# end of variance()


def variance_rate(u: ComplexField) -> float:
    """d/dt ||x u||^2 = 4 Im int x . conj(u) grad u (spectral gradient)."""

    grid: PeriodicGrid = u.grid
    uhat: np.ndarray = np.fft.fftn(u.values)
    total: float = 0.0
    for x, k in zip(grid.coords(), grid.wavenumbers()):
        du: np.ndarray = np.fft.ifftn(1j * k * uhat)
        total += float(np.sum(x * np.imag(np.conj(u.values) * du)))
    return 4.0 * grid.cell * total

# end of variance_rate()


def boundary_fraction(u: ComplexField) -> float:
    """Fraction of the mass in the strip |x_i| > (1 - BOUNDARY_STRIP) L."""

    grid: PeriodicGrid = u.grid
    strip: np.ndarray = np.zeros(grid.shape, dtype=bool)
    for x in grid.coords():
        strip |= np.abs(x) > (1.0 - BOUNDARY_STRIP) * grid.L
    dens: np.ndarray = np.abs(u.values) ** 2
    total: float = float(np.sum(dens))
    if total == 0:
        return 0.0
    return float(np.sum(dens[strip]) / total)

# end of boundary_fraction()


def _orbit_correlation(
    uhat: np.ndarray,
    phihat: np.ndarray,
    weight: np.ndarray,
    grid: PeriodicGrid
) -> float:
    """max over shifts y of |<phi(. - y), u>| for the pairing with
    Fourier weight w: lattice maximum, then the exact pairing at the
    vertex of a parabola through the peak along each axis."""

    spectrum: np.ndarray = weight * np.conj(phihat) * uhat
    corr: np.ndarray = grid.cell * np.fft.ifftn(spectrum)
    mag: np.ndarray = np.abs(corr)
    peak = np.unravel_index(int(np.argmax(mag)), mag.shape)
    best: float = float(mag[peak])

    shift: List[float] = list()
    for axis in range(grid.n):
        idx_m = list(peak)
        idx_p = list(peak)
        idx_m[axis] = (peak[axis] - 1) % grid.N
        idx_p[axis] = (peak[axis] + 1) % grid.N
        fm, f0, fp = mag[tuple(idx_m)], mag[peak], mag[tuple(idx_p)]
        denom: float = fm - 2.0 * f0 + fp
        offset: float = 0.5 * (fm - fp) / denom if denom < 0 else 0.0
        shift.append((peak[axis] + float(np.clip(offset, -0.5, 0.5))) * grid.dx)
    # end for

    phase: np.ndarray = np.ones(grid.shape, dtype=complex)
    for y, k in zip(shift, grid.wavenumbers()):
        phase = phase * np.exp(1j * k * y)
    refined: float = abs(grid.cell / grid.N ** grid.n * np.sum(spectrum * phase))
    return max(best, refined)

# end of _orbit_correlation()


def _reference_values(reference, grid: PeriodicGrid) -> np.ndarray:
    if isinstance(reference, ComplexField):
        if reference.grid != grid:
            errmsg = "\n\nERROR: the reference is sampled on a different grid"
            raise GridMismatchError(errmsg)
        return reference.values
    # Profile
    return sample_radial(reference.field, grid) + 0j

# end of _reference_values()


def tube_distance_bounds(u: ComplexField, reference) -> Tuple[float, float]:
    """Upper (H1) and lower (L2) estimates of
    inf_{theta, y} ||u - e^{i theta} phi(. - y)||.

    For a fixed shift y the optimal phase gives
    ||u||^2 + ||phi||^2 - 2 |<phi(. - y), u>|; the shift is the
    correlation peak on the lattice refined to sub-grid accuracy.

    Parameters
    ----------
    u : ComplexField
        state
    reference : Profile or ComplexField
        profile, or its samples on the same grid

    Returns
    -------
    float
        H1 distance to the orbit
    float
        L2 distance to the orbit
    """

    grid: PeriodicGrid = u.grid
    phi: np.ndarray = _reference_values(reference, grid)
    uhat: np.ndarray = np.fft.fftn(u.values)
    phihat: np.ndarray = np.fft.fftn(phi)
    scale: float = grid.cell / grid.N ** grid.n
    k2: np.ndarray = grid.k2()

    bounds: List[float] = list()
    for weight in (1.0 + k2, np.ones(grid.shape)):
        nu: float = scale * float(np.sum(weight * np.abs(uhat) ** 2))
        nphi: float = scale * float(np.sum(weight * np.abs(phihat) ** 2))
        corr: float = _orbit_correlation(uhat, phihat, weight, grid)
        bounds.append(float(np.sqrt(max(nu + nphi - 2.0 * corr, 0.0))))
    # end for
    return bounds[0], bounds[1]

# end of tube_distance_bounds()


def tube_distance(u: ComplexField, reference) -> float:
    """H1 distance from u to the orbit {e^{i theta} phi(. - y)}."""

    return tube_distance_bounds(u, reference)[0]

# end of tube_distance()


def _record(
    trace: EvolutionTrace,
    t: float,
    u: ComplexField,
    params: Params,
    reference: Optional[np.ndarray]
) -> None:
    q: NormQuintuple = compute_norms(u)
    trace.times.append(t)
    trace.mass.append(q.l2)
    trace.energy.append(action_S(q, params))
    trace.variance.append(variance(u))
    trace.variance_rate.append(variance_rate(u))
    trace.P_values.append(pohozaev_P(q, params, u.grid.n))
    trace.boundary.append(boundary_fraction(u))
    if reference is not None:
        upper, lower = tube_distance_bounds(u, ComplexField(u.grid, reference))
        trace.tube_dist.append(upper)
        trace.tube_lower.append(lower)

# end of _record()


def evolve(
    config: EvolutionConfig,
    u0: ComplexField,
    reference=None,
    stop_on_exit: bool = False,
    verbose: bool = False
) -> EvolutionTrace:
    """Integrate from u0 up to config.t_end.

    Parameters
    ----------
    config : EvolutionConfig
        discretization
    u0 : ComplexField
        initial state on config.grid
    reference : Profile or ComplexField, optional
        profile for the tube distance
    stop_on_exit : bool
        stop at the first tube exit
    verbose : bool
        print progress and timings

    Returns
    -------
    EvolutionTrace
        saved diagnostics
    """

    errmsg: str
    if u0.grid != config.grid:
        errmsg = "\n\nERROR: the initial state is not on the configured grid"
        raise ParameterError(errmsg)
    if config.cfl > 1.0:
        print_warning(
            "dt (pi N / 2L)^2 = %.3g exceeds 1, the splitting may be under-resolved"
            % config.cfl
        )

    if verbose:
        start: float = time.time()

    params: Params = config.params
    grid: PeriodicGrid = config.grid
    ref: Optional[np.ndarray] = None
    if reference is not None:
        ref = _reference_values(reference, grid)
    eps: Optional[float] = config.epsilon_tube

    linear: np.ndarray = np.exp(-1j * config.dt * grid.k2())
    values: np.ndarray = u0.values.copy()
    trace: EvolutionTrace = EvolutionTrace()
    _record(trace, 0.0, u0, params, ref)

    steps: int = config.steps
    for step in range(1, steps + 1):
        new: np.ndarray = _strang(values, linear, params, config.dt)
        if not np.all(np.isfinite(new)):
            t_last: float = (step - 1) * config.dt
            errmsg = "\n\nERROR: non-finite values at t = %.6g" % (step * config.dt)
            raise NumericalAbortError(errmsg, values, t_last, grid)
        values = new
        if step % config.save_every == 0 or step == steps:
            t: float = step * config.dt
            _record(trace, t, ComplexField(grid, values), params, ref)
            if (
                eps is not None and ref is not None and trace.exit_time is None
                and trace.tube_dist[-1] > eps and trace.tube_lower[-1] > 0.8 * eps
            ):
                trace.exit_time = t
                if stop_on_exit:
                    break
        # end if
    # end for

    if max(trace.boundary) > BOUNDARY_MASS:
        trace.boundary_flag = True
        print_warning(
            "up to %.3g of the mass reached the box boundary, the virial "
            "diagnostics are unreliable" % max(trace.boundary)
        )
    trace.final_state = ComplexField(grid, values)

    if verbose:
        end: float = time.time()
        print("Evolved %d steps in %.2fs" % (steps, end - start))

    return trace

# end of evolve()


def virial_residuals(trace: EvolutionTrace) -> Tuple[np.ndarray, np.ndarray]:
    """Centered second differences of the variance and 8P at the
    interior saves."""

    if len(trace) < 5:
        errmsg = "\n\nERROR: at least 5 saved diagnostics are needed (got %d)" % len(trace)
        raise InsufficientSamplesError(errmsg)
    t: np.ndarray = np.asarray(trace.times)
    v: np.ndarray = np.asarray(trace.variance)
    dts: np.ndarray = np.diff(t)
    # uniform save spacing is required except for the final partial interval
    dt_s: float = float(dts[0])
    interior = [
        i for i in range(1, len(t) - 1)
        if abs(dts[i - 1] - dt_s) <= 1e-9 * dt_s and abs(dts[i] - dt_s) <= 1e-9 * dt_s
    ]
    if len(interior) < 3:
        errmsg = "\n\nERROR: not enough uniformly spaced saves for the virial check"
        raise InsufficientSamplesError(errmsg)
    idx: np.ndarray = np.asarray(interior)
    fd: np.ndarray = (v[idx + 1] - 2.0 * v[idx] + v[idx - 1]) / dt_s ** 2
    rhs: np.ndarray = 8.0 * np.asarray(trace.P_values)[idx]
    return fd, rhs

# end of virial_residuals()


def virial_check(trace: EvolutionTrace, params: Optional[Params] = None) -> float:
    """Compare d^2/dt^2 ||x u||^2 with 8 P(u).

    Returns
    -------
    float
        max |second difference - 8P| / max |8P|
    """

    fd, rhs = virial_residuals(trace)
    scale: float = max(float(np.max(np.abs(rhs))), np.finfo(float).tiny)
    return float(np.max(np.abs(fd - rhs)) / scale)

# end of virial_check()


#-----------------------------------------------------------------------
# instability experiment
#-----------------------------------------------------------------------
def instability_experiment(
    params: Params,
    n: int,
    lam: float,
    eps_rel: float,
    config: Optional[EvolutionConfig] = None,
    profile=None,
    R: Optional[float] = None,
    verbose: bool = False
) -> InstabilityReport:
    """Evolve chi_R phi^lam and look for the exit from the tube of radius
    eps_rel ||phi||_H1 around the orbit of phi.

    For n = 3 nothing is evolved: the report carries the t = 0 criteria
    (d2S, in_set_B, P(phi^lam) and the initial virial value 8 P).

    Parameters
    ----------
    params : Params
        coefficients, a1 = -1 and a3 = 1
    n : int
        dimension
    lam : float
        scale of the initial data
    eps_rel : float
        tube radius relative to ||phi||_H1
    config : EvolutionConfig, optional
        discretization (per-dimension defaults, horizon 50)
    profile : Profile, optional
        precomputed profile
    R : float, optional
        cut-off radius
    verbose : bool
        print progress

    Returns
    -------
    InstabilityReport
        verdict and supporting diagnostics
    """

    params = params.with_dimension(n)
    if profile is None:
        profile = solve_profile(params, n, verbose=verbose)
    d2s: float = d2S_analytic(profile.norms, params, n)
    if not d2s < 0:
        print_warning("d2S = %.6g is not negative, no instability is expected" % d2s)
    mu_hat: float = action_S(profile.norms, params)
    eps: float = eps_rel * h1_norm(profile.field)

    if n == 3:
        scaled: RealField = rescale(profile.field, lam)
        if R is not None:
            chi, dchi = smoothstep_cutoff(scaled.grid.nodes, R)
            scaled = RealField(
                scaled.grid, chi * scaled.values,
                chi * scaled.gradient() + dchi * scaled.values
            )
        member, s0, p0 = in_set_B(scaled, params, n, mu_hat)
        return InstabilityReport(
            "t0 criteria only", n, lam, eps, None, d2s, member, s0, p0, 8.0 * p0,
            None, None, None, None, None, None, False
        )
    # end if

    if config is None:
        config = default_config(params, n, t_end=50.0, epsilon_tube=eps)
    elif config.epsilon_tube is None:
        config = EvolutionConfig(config.params, config.grid, config.dt, config.t_end,
                                 config.save_every, eps)
    u0: ComplexField = make_initial_data(profile, lam, R, config.grid)
    member, s0, p0 = in_set_B(u0, params, n, mu_hat)
    if not member and lam != 1.0:
        print_warning(
            "the initial data is not in B (S = %.10g, mu = %.10g, P = %.3g)"
            % (s0, mu_hat, p0)
        )

    trace: EvolutionTrace = evolve(config, u0, reference=profile, verbose=verbose)

    t: np.ndarray = np.asarray(trace.times)
    pre: np.ndarray = t <= (trace.exit_time if trace.exit_time is not None else t[-1])
    p_pre: np.ndarray = np.asarray(trace.P_values)[pre]
    v_pre: np.ndarray = np.asarray(trace.variance)[pre]
    p_max: float = float(np.max(p_pre))
    concave: Optional[bool] = None
    if v_pre.size >= 3:
        concave = bool(np.all(v_pre[2:] - 2.0 * v_pre[1:-1] + v_pre[:-2] < 0))
    virial_err: Optional[float] = None
    try:
        virial_err = virial_check(trace, params)
    except InsufficientSamplesError:
        pass

    verdict: str = "exited tube" if trace.exit_time is not None else "no exit"
    return InstabilityReport(
        verdict, n, lam, eps, trace.exit_time, d2s, member, s0, p0, 8.0 * p0,
        p_max, -p_max, bool(np.all(p_pre < 0)), concave,
        float(np.max(trace.tube_dist)), virial_err, trace.boundary_flag, trace
    )

# end of instability_experiment()

