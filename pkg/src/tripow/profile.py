"""Construction and validation of zero-frequency profiles.

In one dimension the profile follows from the first integral
1/2 phi_x^2 + G(phi) = 0 by inverse quadrature; with the substitution
phi = c - t^2 the quadrature becomes the smooth problem
dt/dx = sqrt(Q(t^2) / 2), Q(tau) = -G(c - tau) / tau, Q(0) = g(c) > 0.

In dimensions 2 and 3 the radial problem -u'' - (n-1)/r u' = g(u),
u(0) = zeta, u'(0) = 0 is solved by shooting on zeta between an
undershoot (u' turns positive while u > 0) and an overshoot (u crosses
zero). Both constructions append an algebraic tail model
c1 r^-2 + c2 r^k + c3 r^-4, with k the decaying linearized mode, fitted
by least squares.
"""

from tripow.TRIPOWException import (
    BracketError,
    NonExistenceError,
    ParameterError,
    ProfileError,
    QuadratureError,
    StagnationError,
    TailDataError
)
from tripow.field import (
    PowerTail,
    RadialGrid,
    RealField,
    fit_power_law,
    grad_norm_sq,
    lp_norm_pow
)
from tripow.functionals import (
    NormQuintuple,
    compute_norms,
    nehari_K,
    pohozaev_P
)
from tripow.model import (
    BLPReport,
    G_eval,
    G_poly,
    Params,
    RootReport,
    case_tag,
    check_blp_conditions,
    g_eval,
    root_analysis
)
from tripow.utils import (
    DEFAULT_H,
    MIN_TAIL_NODES,
    ODE_ATOL,
    ODE_RTOL,
    OVERSHOOT_TOL,
    QUAD_TOL_1D,
    QUAD_TOL_RADIAL,
    SHOOT_R0,
    SHOOT_SEPARATION,
    SHOOT_XTOL,
    SIGMA,
    TAIL_LEVEL,
    UNDERSHOOT_TOL,
    print_warning,
    tail_constant,
    tail_free_exponent
)
from dataclasses import dataclass
from numba import jit
from numpy.polynomial import Polynomial
from scipy.integrate import quad, solve_ivp
from typing import Dict, Optional, Tuple, Union
import statsmodels.api as sm
import pandas as pd
import numpy as np
import time


#-----------------------------------------------------------------------
# domain types
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class ProfileResiduals(object):
    """
    Acceptance residuals of a computed profile.

    ...

    Attributes
    ----------
    ode_res : float
        max |phi'' + (n-1)/r phi' + g(phi)| / max |g(phi)| on interior
        nodes (fourth-order differences)
    first_integral_res : float or None
        max |1/2 phi_x^2 + G(phi)| / |G(c/2)| (1-D only)
    K_res : float
        |K(phi)| / grad2
    P_res : float
        |P(phi)| / grad2
    """

    ode_res: float
    first_integral_res: Optional[float]
    K_res: float
    P_res: float

    def to_dict(self) -> Dict[str, Optional[float]]:
        return {
            "ode_res": self.ode_res,
            "first_integral_res": self.first_integral_res,
            "K_res": self.K_res,
            "P_res": self.P_res,
        }

# end of ProfileResiduals


@dataclass(frozen=True)
class Profile(object):
    """
    Positive decreasing radial profile.

    ...

    Attributes
    ----------
    field : RealField
        samples, exact derivatives and tail model
    peak : float
        phi(0)
    shoot_param : float
        c (1-D) or the shooting value zeta (radial)
    residuals : ProfileResiduals
        acceptance residuals
    decay : tuple
        fitted (C, exponent) of phi ~ C r^exponent
    params : Params
        coefficients
    norms : NormQuintuple
        norms of the profile (tail included)
    r_trusted : float
        radius up to which the samples come from the solver (beyond it
        from the tail model)
    bracket : tuple
        final shooting bracket (radial only)
    """

    field: RealField
    peak: float
    shoot_param: float
    residuals: ProfileResiduals
    decay: Tuple[float, float]
    params: Params
    norms: NormQuintuple
    r_trusted: float
    bracket: Optional[Tuple[float, float]] = None

    @property
    def n(self) -> int:
        return self.field.grid.n

    @property
    def r_max(self) -> float:
        return self.field.grid.r_max

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"r": self.field.grid.nodes, "phi": self.field.values})

    def to_dict(self) -> Dict:
        tail = self.field.tail
        report = {
            "case": case_tag(self.params).label,
            "n": self.n,
            "peak": self.peak,
            "shoot_param": self.shoot_param,
            "residuals": self.residuals.to_dict(),
            "decay": {"C": self.decay[0], "exponent": self.decay[1]},
            "tail_constant": tail_constant(self.n) / abs(self.params.a1),
            "tail_model": None if tail is None else {
                "coeffs": list(tail.coeffs),
                "exponents": list(tail.exponents),
            },
            "r_max": self.r_max,
            "h": self.field.grid.h,
            "r_trusted": self.r_trusted,
            "norms": self.norms.to_dict(),
        }
        if self.bracket is not None:
            report["bracket"] = list(self.bracket)
        return report

# end of Profile


@dataclass(frozen=True)
class H1Report(object):
    """L2 and gradient norms including the analytic tail beyond r_max."""

    l2: float
    grad2: float
    finite: bool
    l2_tail: float
    grad2_tail: float

    def to_dict(self) -> Dict:
        return {
            "l2": self.l2,
            "grad2": self.grad2,
            "finite": self.finite,
            "l2_tail": self.l2_tail,
            "grad2_tail": self.grad2_tail,
        }

# end of H1Report


#-----------------------------------------------------------------------
# shared helpers
#-----------------------------------------------------------------------
@jit(nopython=True)
def _second_derivative4(values, h):
    """Fourth-order centered second derivative. The samples are even
    in r, so indices below zero are mirrored; the last two nodes are
    left as NaN."""

    m = values.shape[0]
    out = np.empty(m)
    for j in range(m):
        if j > m - 3:
            out[j] = np.nan
            continue
        jm1 = j - 1 if j >= 1 else 1 - j
        jm2 = j - 2 if j >= 2 else 2 - j
        out[j] = (
            -values[jm2] + 16.0 * values[jm1] - 30.0 * values[j]
            + 16.0 * values[j + 1] - values[j + 2]
        ) / (12.0 * h * h)
    return out

# end of _second_derivative4()


def _ode_residual(
    params: Params,
    r: np.ndarray,
    phi: np.ndarray,
    dphi: np.ndarray,
    h: float,
    n: int,
    upto: float
) -> float:
    """Relative residual of phi'' + (n-1)/r phi' + g(phi) = 0 on the
    interior nodes with r <= upto."""

    d2: np.ndarray = _second_derivative4(phi, h)
    g: np.ndarray = g_eval(params, phi)
    res: np.ndarray = d2 + g
    if n > 1:
        res[1:] += (n - 1.0) / r[1:] * dphi[1:]
        res[0] = n * d2[0] + g[0]  # (n-1)/r phi' -> (n-1) phi''(0)
    mask: np.ndarray = np.isfinite(d2) & (r <= upto)
    return float(np.max(np.abs(res[mask])) / np.max(np.abs(g)))

# end of _ode_residual()


def fit_tail_model(
    r: np.ndarray,
    v: np.ndarray,
    n: int
) -> PowerTail:
    """Least-squares fit of c1 r^-2 + c2 r^k + c3 r^-4 on (r, v).

    The exponent k is the decaying mode of the equation linearized
    around the C / r^2 tail. Columns are scaled by the window end before
    the fit.
    """

    exps: Tuple[float, ...] = (-2.0, tail_free_exponent(n), -4.0)
    scale: float = float(np.max(r))
    X: np.ndarray = np.column_stack([(r / scale) ** e for e in exps])
    res = sm.OLS(v, X).fit()
    coeffs = tuple(float(b * scale ** (-e)) for b, e in zip(res.params, exps))
    return PowerTail(coeffs, exps)

# end of fit_tail_model()


def _tail_radius(tail: PowerTail, level: float, start: float) -> float:
    """First radius beyond start (doubling) where the tail drops below
    level."""

    r: float = start
    for _ in range(200):
        if tail.value(r) < level:
            return r
        r *= 1.25
    errmsg = "\n\nERROR: the tail model does not decay below %g" % level
    raise ProfileError(errmsg)

# end of _tail_radius()


def _validate(field: RealField, params: Params, what: str) -> None:
    errmsg: str
    if np.any(field.values <= 0):
        errmsg = "\n\nERROR: the %s profile is not positive on the grid" % what
        raise ProfileError(errmsg)
    if np.any(np.diff(field.values) >= 0) or np.any(field.derivative[1:] >= 0):
        errmsg = "\n\nERROR: the %s profile is not strictly decreasing" % what
        raise ProfileError(errmsg)

# end of _validate()


def _acceptance(
    norms: NormQuintuple,
    params: Params,
    n: int,
    tol: float
) -> Tuple[float, float]:
    k_res: float = abs(nehari_K(norms, params)) / norms.grad2
    p_res: float = abs(pohozaev_P(norms, params, n)) / norms.grad2
    if max(k_res, p_res) > 10.0 * tol:
        errmsg = (
            "\n\nERROR: profile rejected, |K| / grad2 = %.3g and |P| / grad2 "
            "= %.3g exceed ten times the tolerance %.1g" % (k_res, p_res, tol)
        )
        raise ProfileError(errmsg)
    if max(k_res, p_res) > tol:
        print_warning(
            "profile residuals |K| = %.3g, |P| = %.3g (relative) exceed %.1g"
            % (k_res, p_res, tol)
        )
    return k_res, p_res

# end of _acceptance()


#-----------------------------------------------------------------------
# 1-D construction
#-----------------------------------------------------------------------
def _substituted_integrand(params: Params, c: float) -> Polynomial:
    """Q(tau) = -G(c - tau) / tau as a polynomial in tau."""

    shifted: Polynomial = G_poly(params)(Polynomial([c, -1.0]))
    return Polynomial(-shifted.coef[1:])

# end of _substituted_integrand()


def solve_profile_1d(
    params: Params,
    h: float = DEFAULT_H,
    tail_level: float = TAIL_LEVEL,
    rtol: float = ODE_RTOL,
    atol: float = ODE_ATOL,
    verbose: bool = False
) -> Profile:
    """Build the even 1-D profile from its first integral.

    x(phi) = int_phi^c ds / sqrt(-2 G(s)) is computed as the solution of
    dt/dx = sqrt(Q(t^2) / 2) with phi = c - t^2 up to phi = c/2, then as
    dphi/dx = -sqrt(-2 G(phi)) in the tail, where no singularity is left.
    The truncation radius grows until phi(r_max) < tail_level c. The
    first-integral residual must stay below 1e-8 |G(c/2)|, and nodes down
    to phi = c/10 are cross-checked against adaptive quadrature of the
    substituted integrand where its error estimate allows.

    Parameters
    ----------
    params : Params
        coefficients (n = 1)
    h : float
        grid spacing
    tail_level : float
        relative truncation level
    rtol : float
        relative ODE tolerance
    atol : float
        absolute ODE tolerance
    verbose : bool
        print timings

    Returns
    -------
    Profile
        the profile on x >= 0 (even extension implied)
    """

    errmsg: str
    if params.n != 1:
        errmsg = "\n\nERROR: the quadrature construction is one-dimensional"
        raise ParameterError(errmsg)

    report: RootReport = root_analysis(params)
    if not report.exists:
        errmsg = "\n\nERROR: no profile exists: %s" % report.reason
        raise NonExistenceError(errmsg)
    c: float = report.c

    if verbose:
        start: float = time.time()

    Q: Polynomial = _substituted_integrand(params, c)
    tau: np.ndarray = np.linspace(0.0, c, 2001)[:-1]
    if np.any(Q(tau) <= 0):
        errmsg = "\n\nERROR: -2G is not positive on (0, c), the coefficients look misclassified"
        raise QuadratureError(errmsg)

    # near-peak stage in the t variable
    def rhs_t(x, y):
        return [np.sqrt(max(Q(y[0] * y[0]), 0.0) / 2.0)]

    def half_peak(x, y):
        return y[0] * y[0] - 0.5 * c
    half_peak.terminal = True
    half_peak.direction = 1

    sol_t = solve_ivp(rhs_t, (0.0, 1e3), [0.0], method="DOP853", rtol=rtol,
                      atol=atol, dense_output=True, events=half_peak)
    if sol_t.status != 1:
        errmsg = "\n\nERROR: the near-peak quadrature did not reach phi = c/2"
        raise QuadratureError(errmsg)
    x_half: float = float(sol_t.t_events[0][0])

    # tail stage in the phi variable
    def rhs_phi(x, y):
        return [-np.sqrt(max(-2.0 * G_eval(params, max(y[0], 0.0)), 0.0))]

    r_max: float = 1.1 * np.sqrt(
        tail_constant(1) / (abs(params.a1) * tail_level * c)
    )
    sol_phi = None
    grid: RadialGrid
    for _ in range(8):
        grid = RadialGrid.with_spacing(1, r_max, h)
        sol_phi = solve_ivp(rhs_phi, (x_half, grid.r_max), [0.5 * c],
                            method="DOP853", rtol=rtol, atol=atol * 1e-6,
                            dense_output=True)
        if not sol_phi.success:
            errmsg = "\n\nERROR: tail integration failed: %s" % sol_phi.message
            raise QuadratureError(errmsg)
        if sol_phi.y[0, -1] < tail_level * c:
            break
        r_max *= 1.5
    # end for

    x: np.ndarray = grid.nodes
    phi: np.ndarray = np.empty(x.shape)
    dphi: np.ndarray = np.empty(x.shape)
    inner: np.ndarray = x <= x_half
    t: np.ndarray = sol_t.sol(x[inner])[0]
    phi[inner] = c - t * t
    dphi[inner] = -t * np.sqrt(2.0 * np.maximum(Q(t * t), 0.0))
    if np.any(~inner):
        phi[~inner] = sol_phi.sol(x[~inner])[0]
    if np.any(phi <= 0):
        errmsg = "\n\nERROR: the 1-D profile is not positive on the grid"
        raise ProfileError(errmsg)
    dphi[~inner] = -np.sqrt(np.maximum(-2.0 * G_eval(params, phi[~inner]), 0.0))

    # first integral and adaptive quadrature of the substituted integrand
    g_half: float = abs(G_eval(params, 0.5 * c))
    fi_res: float = float(
        np.max(np.abs(0.5 * dphi ** 2 + G_eval(params, phi))) / g_half
    )
    if fi_res > 1e-8:
        errmsg = "\n\nERROR: first-integral residual %.3g exceeds 1e-8" % fi_res
        raise QuadratureError(errmsg)
    for level in c * np.array([0.9, 0.5, 0.1]):
        j: int = int(np.argmin(np.abs(phi - level)))
        upper: float = np.sqrt(c - phi[j])
        xq, err = quad(lambda s: np.sqrt(2.0 / Q(s * s)), 0.0, upper,
                       epsabs=0.0, epsrel=1e-10, limit=400)
        scale: float = max(1.0, x[j])
        if err > 1e-6 * scale:
            continue
        if abs(xq - x[j]) > 1e-6 * scale:
            errmsg = (
                "\n\nERROR: quadrature tolerance unmet at x = %.6g "
                "(quadrature %.12g, error estimate %.3g)" % (x[j], xq, err)
            )
            raise QuadratureError(errmsg)
    # end for

    window: np.ndarray = x >= 0.5 * grid.r_max
    stride: int = max(1, int(np.count_nonzero(window) // 2000))
    tail: PowerTail = fit_tail_model(x[window][::stride], phi[window][::stride], 1)
    field: RealField = RealField(grid, phi, dphi, tail)
    _validate(field, params, "1-D")

    ode_res: float = _ode_residual(params, x, phi, dphi, grid.h, 1, grid.r_max)
    norms: NormQuintuple = compute_norms(field)
    k_res, p_res = _acceptance(norms, params, 1, QUAD_TOL_1D)

    profile = Profile(
        field, float(phi[0]), c,
        ProfileResiduals(ode_res, fi_res, k_res, p_res),
        (0.0, 0.0), params, norms, grid.r_max
    )
    profile = _with_decay(profile)

    if verbose:
        end: float = time.time()
        print("1-D profile built on %d nodes in %.2fs" % (grid.m + 1, end - start))

    return profile

# end of solve_profile_1d()


#-----------------------------------------------------------------------
# radial construction
#-----------------------------------------------------------------------
class _Trajectory(object):
    """Outcome of one shooting trajectory."""

    def __init__(self, zeta: float, outcome: str, sol, r_stop: float):
        self.zeta = zeta
        self.outcome = outcome
        self.sol = sol
        self.r_stop = r_stop

# end of _Trajectory


def _shoot(
    params: Params,
    n: int,
    zeta: float,
    r0: float,
    r_end: float,
    rtol: float,
    atol: float
) -> _Trajectory:
    """Integrate -u'' - (n-1)/r u' = g(u) from the series start at r0
    and classify the trajectory as 'over', 'under' or 'converged'."""

    a1, a2, a3 = params.a1, params.a2, params.a3
    g0: float = zeta * zeta * (a1 + zeta * (a2 + zeta * a3))
    y0 = [zeta - g0 * r0 * r0 / (2.0 * n), -g0 * r0 / n]

    def rhs(r, y):
        u = y[0]
        return [y[1], -(u * u * (a1 + u * (a2 + u * a3))) - (n - 1.0) / r * y[1]]

    def overshoot(r, y):
        return y[0] + OVERSHOOT_TOL * zeta
    overshoot.terminal = True
    overshoot.direction = -1

    def undershoot(r, y):
        if y[0] > TAIL_LEVEL * zeta:
            return y[1] - UNDERSHOOT_TOL * zeta
        return -1.0
    undershoot.terminal = True
    undershoot.direction = 1

    def converged(r, y):
        return y[0] - TAIL_LEVEL * zeta
    converged.terminal = True
    converged.direction = -1

    sol = solve_ivp(rhs, (r0, r_end), y0, method="DOP853", rtol=rtol, atol=atol,
                    dense_output=True, events=(overshoot, undershoot, converged))
    if sol.status == -1:
        errmsg = "\n\nERROR: shooting integration failed: %s" % sol.message
        raise ProfileError(errmsg)

    outcome: str = "converged"  # also when r_end is reached undecided
    if sol.status == 1:
        if sol.t_events[0].size > 0:
            outcome = "over"
        elif sol.t_events[1].size > 0:
            outcome = "under"
    # end if
    return _Trajectory(zeta, outcome, sol.sol, float(sol.t[-1]))

# end of _shoot()


def _evaluate_trajectory(
    traj: _Trajectory,
    r: np.ndarray,
    r0: float
) -> Tuple[np.ndarray, np.ndarray]:
    """u and u' at radii r <= traj.r_stop, with the series below r0."""

    u: np.ndarray = np.empty(r.shape)
    du: np.ndarray = np.empty(r.shape)
    small: np.ndarray = r < r0
    u[small] = traj.zeta
    du[small] = 0.0
    if np.any(~small):
        y = traj.sol(r[~small])
        u[~small] = y[0]
        du[~small] = y[1]
    return u, du

# end of _evaluate_trajectory()


def solve_profile_radial(
    params: Params,
    n: int,
    h: float = DEFAULT_H,
    r0: float = SHOOT_R0,
    rtol: float = ODE_RTOL,
    atol: float = ODE_ATOL,
    xtol: float = SHOOT_XTOL,
    tail_level: float = TAIL_LEVEL,
    verbose: bool = False
) -> Profile:
    """Build the radial profile in dimension n = 2, 3 by shooting.

    The bracket starts at (zeta0 (1 + 1e-6), zeta_hi), zeta_hi doubling
    from 2 zeta0 until it overshoots, and is bisected down to
    xtol max(1, zeta). Trajectories reaching u < tail_level zeta
    undecided count as overshoots. The profile is the mean of the final
    undershoot and overshoot trajectories up to the radius where they
    separate by SHOOT_SEPARATION (relative), continued by the fitted
    algebraic tail model up to the radius where the tail falls below
    tail_level zeta.

    Parameters
    ----------
    params : Params
        coefficients
    n : int
        dimension, 2 or 3
    h : float
        grid spacing
    r0 : float
        start radius of the series expansion
    rtol : float
        relative ODE tolerance
    atol : float
        absolute ODE tolerance
    xtol : float
        relative bisection tolerance on zeta
    tail_level : float
        relative truncation level
    verbose : bool
        print progress and timings

    Returns
    -------
    Profile
        the radial profile
    """

    errmsg: str
    if n not in (2, 3):
        errmsg = "\n\nERROR: the shooting construction is for n = 2, 3 (got %s)" % str(n)
        raise ParameterError(errmsg)
    if case_tag(params).label == "DFD":
        errmsg = "\n\nERROR: no radial DFD profile is constructed in dimension %d" % n
        raise NonExistenceError(errmsg)
    if params.n != n:
        params = params.with_dimension(n)

    blp: BLPReport = check_blp_conditions(params, n)
    blp.raise_on_failure()
    zeta0: float = blp.zeta0
    beta: float = root_analysis(params).beta

    if verbose:
        start: float = time.time()

    c_tail: float = tail_constant(n) / abs(params.a1)
    r_end: float = 10.0 * np.sqrt(c_tail / (tail_level * zeta0))

    def shoot(zeta: float) -> _Trajectory:
        return _shoot(params, n, zeta, r0, r_end, rtol, atol)

    lo: _Trajectory = shoot(zeta0 * (1.0 + 1e-6))
    if lo.outcome != "under":
        errmsg = "\n\nERROR: the lower shooting value zeta0 (1 + 1e-6) does not undershoot"
        raise BracketError(errmsg)

    cap: float = zeta0 + (beta - zeta0) * (1.0 - 1e-9) if np.isfinite(beta) else np.inf
    zeta_hi: float = min(2.0 * zeta0, cap)
    hi: Optional[_Trajectory] = None
    for _ in range(60):
        trial: _Trajectory = shoot(zeta_hi)
        if trial.outcome != "under":
            hi = trial
            break
        lo = trial
        if zeta_hi >= cap:
            break
        zeta_hi = min(2.0 * zeta_hi, cap)
    # end for
    if hi is None:
        errmsg = "\n\nERROR: no overshooting value found above zeta0 = %.6g" % zeta0
        raise BracketError(errmsg)

    iterations: int = 0
    while hi.zeta - lo.zeta > xtol * max(1.0, hi.zeta):
        mid_zeta: float = 0.5 * (lo.zeta + hi.zeta)
        if mid_zeta <= lo.zeta or mid_zeta >= hi.zeta or iterations > 200:
            errmsg = (
                "\n\nERROR: shooting bisection stagnated at bracket "
                "(%.17g, %.17g)" % (lo.zeta, hi.zeta)
            )
            raise StagnationError(errmsg)
        mid: _Trajectory = shoot(mid_zeta)
        if mid.outcome == "under":
            lo = mid
        else:
            hi = mid
        iterations += 1
    # end while

    if verbose:
        end_shoot: float = time.time()
        print(
            "Shooting converged to zeta = %.15g after %d bisections in %.2fs"
            % (0.5 * (lo.zeta + hi.zeta), iterations, end_shoot - start)
        )

    # trusted range: where the bracketing trajectories agree
    r_common: float = min(lo.r_stop, hi.r_stop)
    radii: np.ndarray = np.geomspace(max(r0, 1e-3), r_common, 4000)
    u_lo, _ = _evaluate_trajectory(lo, radii, r0)
    u_hi, _ = _evaluate_trajectory(hi, radii, r0)
    mean: np.ndarray = 0.5 * (u_lo + u_hi)
    apart: np.ndarray = np.abs(u_lo - u_hi) > SHOOT_SEPARATION * np.abs(mean)
    r_c: float = float(radii[np.argmax(apart)]) if np.any(apart) else r_common
    if r_c < 20.0 * h or r_c < 2.0:
        errmsg = "\n\nERROR: shooting resolved the profile only up to r = %.3g" % r_c
        raise ProfileError(errmsg)

    window_r: np.ndarray = np.linspace(0.5 * r_c, r_c, 400)
    w_lo, _ = _evaluate_trajectory(lo, window_r, r0)
    w_hi, _ = _evaluate_trajectory(hi, window_r, r0)
    tail: PowerTail = fit_tail_model(window_r, 0.5 * (w_lo + w_hi), n)

    zeta: float = 0.5 * (lo.zeta + hi.zeta)
    r_max: float = max(r_c, _tail_radius(tail, tail_level * zeta, r_c))
    grid: RadialGrid = RadialGrid.with_spacing(n, r_max, h)
    r: np.ndarray = grid.nodes
    phi: np.ndarray = np.empty(r.shape)
    dphi: np.ndarray = np.empty(r.shape)
    trusted: np.ndarray = r <= r_c
    v_lo, d_lo = _evaluate_trajectory(lo, r[trusted], r0)
    v_hi, d_hi = _evaluate_trajectory(hi, r[trusted], r0)
    phi[trusted] = 0.5 * (v_lo + v_hi)
    dphi[trusted] = 0.5 * (d_lo + d_hi)
    phi[0] = zeta
    dphi[0] = 0.0
    phi[~trusted] = tail.value(r[~trusted])
    dphi[~trusted] = tail.derivative(r[~trusted])

    field: RealField = RealField(grid, phi, dphi, tail)
    _validate(field, params, "radial")

    ode_res: float = _ode_residual(params, r, phi, dphi, grid.h, n, r_c)
    norms: NormQuintuple = compute_norms(field)
    k_res, p_res = _acceptance(norms, params, n, QUAD_TOL_RADIAL)

    profile = Profile(
        field, zeta, zeta,
        ProfileResiduals(ode_res, None, k_res, p_res),
        (0.0, 0.0), params, norms, r_c, (lo.zeta, hi.zeta)
    )
    profile = _with_decay(profile)

    if verbose:
        end: float = time.time()
        print("Radial profile built on %d nodes in %.2fs" % (grid.m + 1, end - start))

    return profile

# end of solve_profile_radial()


def solve_profile(
    params: Params,
    n: Optional[int] = None,
    **options
) -> Profile:
    """Dispatch to the 1-D quadrature or the radial shooting."""

    if n is None:
        n = params.n
    if params.n != n:
        params = params.with_dimension(n)
    if n == 1:
        options.pop("r0", None)
        options.pop("xtol", None)
        return solve_profile_1d(params, **options)
    return solve_profile_radial(params, n, **options)

# end of solve_profile()


#-----------------------------------------------------------------------
# decay and H1 membership
#-----------------------------------------------------------------------
def _with_decay(profile: Profile) -> Profile:
    try:
        decay = fit_decay_exponent(profile)
    except TailDataError:
        decay = (float("nan"), float("nan"))
    return Profile(
        profile.field, profile.peak, profile.shoot_param, profile.residuals,
        decay, profile.params, profile.norms, profile.r_trusted, profile.bracket
    )

# end of _with_decay()


def fit_decay_exponent(profile: Union[Profile, RealField]) -> Tuple[float, float]:
    """Fit phi ~ C r^p by least squares of log phi against log r over
    the window [0.5 r_max, 0.9 r_max].

    Parameters
    ----------
    profile : Profile or RealField
        profile (or bare radial field)

    Returns
    -------
    float
        prefactor C
    float
        exponent p
    """

    field: RealField = profile.field if isinstance(profile, Profile) else profile
    r: np.ndarray = field.grid.nodes
    v: np.ndarray = field.values
    window: np.ndarray = (
        (r >= 0.5 * field.grid.r_max) & (r <= 0.9 * field.grid.r_max)
        & (v > 10.0 * np.finfo(float).eps)
    )
    if np.count_nonzero(window) < MIN_TAIL_NODES:
        errmsg = (
            "\n\nERROR: only %d tail nodes with positive values, at least %d "
            "are needed" % (np.count_nonzero(window), MIN_TAIL_NODES)
        )
        raise TailDataError(errmsg)
    return fit_power_law(r[window], v[window])

# end of fit_decay_exponent()


def h1_membership(profile: Union[Profile, RealField]) -> H1Report:
    """L2 and gradient norms of the profile with the analytic
    contribution of the fitted tail C r^p beyond r_max.

    Parameters
    ----------
    profile : Profile or RealField
        profile (or bare radial field)

    Returns
    -------
    H1Report
        norms, tail contributions and finiteness
    """

    field: RealField = profile.field if isinstance(profile, Profile) else profile
    if isinstance(profile, Profile) and np.all(np.isfinite(profile.decay)):
        c, p = profile.decay
    else:
        c, p = fit_decay_exponent(field)
    n: int = field.grid.n
    r_max: float = field.grid.r_max

    bare: RealField = RealField(field.grid, field.values, field.derivative)
    l2_grid: float = lp_norm_pow(bare, 2)
    grad2_grid: float = grad_norm_sq(bare)

    def power_tail(coeff: float, power: float) -> float:
        # int_{r_max}^inf sigma_n r^(n-1) coeff r^power dr
        expo: float = power + n
        if expo >= 0:
            return np.inf
        return SIGMA[n] * coeff * r_max ** expo / (-expo)

    l2_tail: float = power_tail(c * c, 2.0 * p)
    grad2_tail: float = power_tail(c * c * p * p, 2.0 * p - 2.0)
    l2: float = l2_grid + l2_tail
    grad2: float = grad2_grid + grad2_tail
    finite: bool = bool(np.isfinite(l2) and np.isfinite(grad2))
    return H1Report(float(l2), float(grad2), finite, float(l2_tail), float(grad2_tail))

# end of h1_membership()

