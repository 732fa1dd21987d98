"""Coefficients, scalar nonlinearity and existence conditions.

The zero-frequency profile equation reads -Δφ = g(φ) with
g(s) = a1 s^2 + a2 s^3 + a3 s^4 and primitive
G(s) = a1 s^3 / 3 + a2 s^4 / 4 + a3 s^5 / 5. This module holds the
coefficient container, the evaluation of g and G, the analysis of their
positive zeros and the existence/uniqueness checks that decide whether
(and how) a profile can be constructed.

Both G and g factor as a power of s times a quadratic, so every positive
zero is a root of a quadratic polynomial: the roots are computed in
closed form and then polished by bracketing on G itself.
"""

from tripow.TRIPOWException import ParameterError, ConditionViolationError
from tripow.utils import DIMENSIONS, DFD_THRESHOLD, uniqueness_threshold
from dataclasses import dataclass, field
from numpy.polynomial import Polynomial
from scipy.optimize import brentq
from typing import Dict, List, Optional, Tuple, Union
import numpy as np


ArrayLike = Union[float, np.ndarray]


#-----------------------------------------------------------------------
# domain types
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class Params(object):
    """
    Coefficients (a1, a2, a3) of |u|u, |u|^2 u and |u|^3 u and the
    spatial dimension n.

    ...

    Attributes
    ----------
    a1 : float
        coefficient of |u|u
    a2 : float
        coefficient of |u|^2 u
    a3 : float
        coefficient of |u|^3 u
    n : int
        spatial dimension (1, 2 or 3)

    Methods
    -------
    is_normalized()
        True when |a1| = |a3| = 1
    is_standard()
        True when a1 = -1 and a3 = 1
    require_standard()
        raise ParameterError unless a1 = -1 and a3 = 1
    normalized()
        scaled coefficients with |a1| = |a3| = 1 and the scales used
    with_dimension(n)
        same coefficients in another dimension
    to_dict()
        serializable view
    """

    #-------------------------------------------------------------------
    # Params attributes
    #-------------------------------------------------------------------
    a1: float
    a2: float
    a3: float
    n: int = 1

    #-------------------------------------------------------------------
    # Params methods
    #-------------------------------------------------------------------
    def __post_init__(self):
        errmsg: str
        if self.n not in DIMENSIONS:
            errmsg = "\n\nERROR: the dimension must be 1, 2 or 3 (got %s)" % str(
                self.n
            )
            raise ParameterError(errmsg)
        coeffs = (self.a1, self.a2, self.a3)
        if not all(np.isfinite(float(a)) for a in coeffs):
            errmsg = "\n\nERROR: the coefficients must be finite real numbers"
            raise ParameterError(errmsg)
        # store plain floats whatever was given (ints, numpy scalars)
        object.__setattr__(self, "a1", float(self.a1))
        object.__setattr__(self, "a2", float(self.a2))
        object.__setattr__(self, "a3", float(self.a3))
        object.__setattr__(self, "n", int(self.n))


    def is_normalized(self) -> bool:
        return abs(self.a1) == 1.0 and abs(self.a3) == 1.0


    def is_standard(self) -> bool:
        return self.a1 == -1.0 and self.a3 == 1.0


    def require_standard(self, what: str) -> None:
        if not self.is_standard():
            errmsg = (
                "\n\nERROR: %s requires the normalization a1 = -1, a3 = 1 "
                "(got a1 = %g, a3 = %g)" % (what, self.a1, self.a3)
            )
            raise ParameterError(errmsg)


    def normalized(self) -> Tuple["Params", float, float]:
        """Rescale to |a1| = |a3| = 1.

        If u solves the equation with the normalized coefficients, then
        A u(B^2 t, B x) solves it with the original ones.

        Returns
        -------
        Params
            normalized coefficients
        float
            amplitude scale A
        float
            length scale 1 / B
        """

        if self.a1 == 0 or self.a3 == 0:
            errmsg = "\n\nERROR: cannot normalize when a1 or a3 vanishes"
            raise ParameterError(errmsg)
        amp: float = np.sqrt(abs(self.a1) / abs(self.a3))
        b: float = np.sqrt(abs(self.a1) * amp)
        a2n: float = self.a2 / np.sqrt(abs(self.a1 * self.a3))
        return (
            Params(np.sign(self.a1), a2n, np.sign(self.a3), self.n),
            float(amp),
            float(1.0 / b),
        )


    def with_dimension(self, n: int) -> "Params":
        return Params(self.a1, self.a2, self.a3, n)


    def to_dict(self) -> Dict[str, float]:
        return {"a1": self.a1, "a2": self.a2, "a3": self.a3, "n": self.n}

# end of Params


@dataclass(frozen=True)
class CaseTag(object):
    """
    Sign pattern of the coefficients: D (defocusing) for a negative
    coefficient, F (focusing) for a positive one.

    ...

    Attributes
    ----------
    label : str
        one of DDD, DDF, DFF, DFD, FDD, FDF, FFD, FFF or boundary
    boundary : bool
        True when a coefficient vanishes (a2 = 0 in the covered cases)
    pattern : str
        raw pattern, with '0' marking vanishing coefficients
    """

    label: str
    boundary: bool
    pattern: str

# end of CaseTag


@dataclass(frozen=True)
class RootReport(object):
    """
    Positive zeros of g and G which drive existence.

    ...

    Attributes
    ----------
    c : float or None
        first positive zero of G
    alpha : float or None
        inf{s > 0 : g(s) >= 0}
    zeta0 : float or None
        inf{s > 0 : G(s) > 0}
    beta : float
        first zero of g above zeta0 (inf when none)
    g_at_c : float or None
        g(c)
    exists : bool
        existence verdict
    reason : str
        explanation of the verdict
    """

    c: Optional[float]
    alpha: Optional[float]
    zeta0: Optional[float]
    beta: float
    g_at_c: Optional[float]
    exists: bool
    reason: str

    def to_dict(self) -> Dict:
        return {
            "c": self.c,
            "alpha": self.alpha,
            "zeta0": self.zeta0,
            "beta": self.beta,
            "g_at_c": self.g_at_c,
            "exists": self.exists,
            "reason": self.reason,
        }

# end of RootReport


@dataclass(frozen=True)
class BLPReport(object):
    """
    Outcome of the five radial existence conditions.

    ...

    Attributes
    ----------
    conditions : tuple
        five booleans, conditions (1) to (5)
    alpha : float or None
        first zero of g
    zeta0 : float or None
        first point where G becomes positive
    g_prime_alpha : float or None
        g'(alpha), the right-derivative used by condition (3)
    l : float
        growth exponent tested by condition (5)
    failed : list
        indices (1-based) of the failed conditions
    """

    conditions: Tuple[bool, bool, bool, bool, bool]
    alpha: Optional[float]
    zeta0: Optional[float]
    g_prime_alpha: Optional[float]
    l: float
    failed: List[int] = field(default_factory=list)

    def all_hold(self) -> bool:
        return all(self.conditions)

    def raise_on_failure(self) -> None:
        if not self.all_hold():
            errmsg = (
                "\n\nERROR: radial existence conditions %s are not satisfied"
                % ", ".join("(%d)" % i for i in self.failed)
            )
            raise ConditionViolationError(errmsg, self.failed)

    def to_dict(self) -> Dict:
        return {
            "conditions": list(self.conditions),
            "failed": list(self.failed),
            "alpha": self.alpha,
            "zeta0": self.zeta0,
            "g_prime_alpha": self.g_prime_alpha,
            "l": self.l,
        }

# end of BLPReport


#-----------------------------------------------------------------------
# nonlinearity
#-----------------------------------------------------------------------
def g_poly(params: Params) -> Polynomial:
    return Polynomial([0.0, 0.0, params.a1, params.a2, params.a3])

# end of g_poly()


def G_poly(params: Params) -> Polynomial:
    return Polynomial(
        [0.0, 0.0, 0.0, params.a1 / 3.0, params.a2 / 4.0, params.a3 / 5.0]
    )

# end of G_poly()


def _check_amplitude(s: ArrayLike) -> np.ndarray:
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0):
        errmsg = "\n\nERROR: profile amplitudes must be nonnegative"
        raise ParameterError(errmsg)
    return s_arr

# end of _check_amplitude()


def g_eval(params: Params, s: ArrayLike) -> ArrayLike:
    """Evaluate g(s) = a1 s^2 + a2 s^3 + a3 s^4.

    Parameters
    ----------
    params : Params
        coefficients
    s : float or numpy.ndarray
        nonnegative amplitude(s)

    Returns
    -------
    float or numpy.ndarray
        g(s)
    """

    s_arr = _check_amplitude(s)
    val = s_arr * s_arr * (params.a1 + s_arr * (params.a2 + s_arr * params.a3))
    return float(val) if val.ndim == 0 else val

# end of g_eval()


def G_eval(params: Params, s: ArrayLike) -> ArrayLike:
    """Evaluate G(s) = a1 s^3 / 3 + a2 s^4 / 4 + a3 s^5 / 5.

    Parameters
    ----------
    params : Params
        coefficients
    s : float or numpy.ndarray
        nonnegative amplitude(s)

    Returns
    -------
    float or numpy.ndarray
        G(s)
    """

    s_arr = _check_amplitude(s)
    val = s_arr ** 3 * (
        params.a1 / 3.0 + s_arr * (params.a2 / 4.0 + s_arr * params.a3 / 5.0)
    )
    return float(val) if val.ndim == 0 else val

# end of G_eval()


def g_prime(params: Params, s: ArrayLike) -> ArrayLike:
    s_arr = np.asarray(s, dtype=float)
    val = s_arr * (
        2.0 * params.a1 + s_arr * (3.0 * params.a2 + 4.0 * params.a3 * s_arr)
    )
    return float(val) if val.ndim == 0 else val

# end of g_prime()


#-----------------------------------------------------------------------
# case analysis
#-----------------------------------------------------------------------
def case_tag(params: Params) -> CaseTag:
    """Sign pattern of the coefficients.

    Parameters
    ----------
    params : Params
        coefficients

    Returns
    -------
    CaseTag
        label, boundary flag and raw pattern
    """

    letters: List[str] = list()
    for a in (params.a1, params.a2, params.a3):
        if a < 0:
            letters.append("D")
        elif a > 0:
            letters.append("F")
        else:
            letters.append("0")
    # end for
    pattern: str = "".join(letters)
    boundary: bool = "0" in pattern
    label: str = "boundary" if boundary else pattern
    return CaseTag(label, boundary, pattern)

# end of case_tag()


def _positive_quadratic_roots(
    c0: float,
    c1: float,
    c2: float
) -> Tuple[List[float], bool]:
    """Positive real roots of c0 + c1 s + c2 s^2, sorted, and a flag
    telling whether they collapse into a double root.
    """

    roots: List[float] = list()
    if c2 == 0:
        if c1 != 0:
            roots = [-c0 / c1]
        return sorted(r for r in roots if r > 0), False
    # end if

    disc: float = c1 * c1 - 4.0 * c2 * c0
    if disc < 0:
        return [], False

    # cancellation-free form of the quadratic formula
    q: float = -0.5 * (c1 + np.copysign(np.sqrt(disc), c1 if c1 != 0 else 1.0))
    roots.append(q / c2)
    if q != 0:
        roots.append(c0 / q)
    double: bool = disc == 0
    return sorted(r for r in roots if r > 0), double

# end of _positive_quadratic_roots()


def _polish_root(
    params: Params,
    root: float,
    left: float,
    right: float
) -> float:
    """Refine a simple zero of G by bracketing it in [left, right]."""

    f_left: float = G_eval(params, left)
    f_right: float = G_eval(params, right)
    if f_left == 0.0:
        return left
    if f_right == 0.0:
        return right
    if np.sign(f_left) == np.sign(f_right):
        return root  # bracket lost to roundoff, keep the closed form
    return float(brentq(lambda s: G_eval(params, s), left, right,
                        xtol=1e-12, rtol=4 * np.finfo(float).eps, maxiter=200))

# end of _polish_root()


def _first_zero_of_g(params: Params) -> Optional[float]:
    """alpha = inf{s > 0 : g(s) >= 0}."""

    if params.a1 > 0:
        return 0.0
    if params.a1 == 0:
        if params.a2 > 0 or (params.a2 == 0 and params.a3 >= 0):
            return 0.0
    roots, _ = _positive_quadratic_roots(params.a1, params.a2, params.a3)
    return roots[0] if roots else None

# end of _first_zero_of_g()


def root_analysis(params: Params) -> RootReport:
    """Analyse the positive zeros of G and g.

    c is the first positive zero of G, taken from the quadratic factor
    of G / s^3 and refined by bracketing on G; alpha is the first zero
    of g, zeta0 the point where G turns positive and beta the next zero
    of g above zeta0. A profile exists exactly when a1 < 0, c > 0 and
    g(c) > 0.

    Parameters
    ----------
    params : Params
        coefficients

    Returns
    -------
    RootReport
        zeros and existence verdict
    """

    tag: CaseTag = case_tag(params)

    alpha: Optional[float] = _first_zero_of_g(params)
    g_roots, _ = _positive_quadratic_roots(params.a1, params.a2, params.a3)
    G_roots, double = _positive_quadratic_roots(
        params.a1 / 3.0, params.a2 / 4.0, params.a3 / 5.0
    )

    c: Optional[float] = None
    zeta0: Optional[float] = None
    g_at_c: Optional[float] = None

    if params.a1 > 0:
        zeta0 = 0.0  # G > 0 right after the origin

    if G_roots:
        root: float = G_roots[0]
        if double:
            c = root
        else:
            # bracket containing only the first root
            nxt: float = G_roots[1] if len(G_roots) > 1 else 2.0 * root
            left: float = max(root - 0.5 * (nxt - root), 0.5 * root)
            right: float = 0.5 * (root + nxt)
            c = _polish_root(params, root, left, right)
        # end if
        g_at_c = g_eval(params, c)
        if params.a1 < 0 and not double:
            zeta0 = c
    # end if

    beta: float = np.inf
    if zeta0 is not None:
        above = [r for r in g_roots if r > zeta0]
        if above:
            beta = above[0]
    # end if

    reason: str
    exists: bool = False
    if params.a1 >= 0:
        reason = (
            "a1 = %g is not negative: G does not start negative at 0, so no "
            "positive zero-frequency profile exists" % params.a1
        )
    elif c is None:
        if tag.pattern == "DDD":
            reason = "DDD: G < 0 on (0, inf), there is no solution"
        elif tag.pattern == "DFD":
            a2n: float = params.a2 / np.sqrt(abs(params.a1 * params.a3))
            reason = (
                "DFD: normalized a2 = %.10g does not exceed 8/sqrt(15) = %.10g, "
                "G has no positive zero" % (a2n, DFD_THRESHOLD)
            )
        else:
            reason = "%s: G has no positive zero" % tag.pattern
        # end if
    elif g_at_c <= 0:
        if tag.pattern == "DFD":
            reason = (
                "DFD: normalized a2 equals the threshold 8/sqrt(15) = %.10g, "
                "g(c) = %.3g is not positive" % (DFD_THRESHOLD, g_at_c)
            )
        else:
            reason = "g(c) = %.3g is not positive" % g_at_c
    else:
        exists = True
        reason = "c = %.12g > 0 and g(c) = %.6g > 0" % (c, g_at_c)
    # end if

    return RootReport(c, alpha, zeta0, float(beta), g_at_c, exists, reason)

# end of root_analysis()


def classify_existence(params: Params) -> Tuple[CaseTag, bool, str]:
    """Decide whether a positive zero-frequency profile exists.

    Parameters
    ----------
    params : Params
        coefficients

    Returns
    -------
    CaseTag
        sign pattern
    bool
        existence verdict
    str
        reason
    """

    report: RootReport = root_analysis(params)
    return case_tag(params), report.exists, report.reason

# end of classify_existence()


def check_blp_conditions(
    params: Params,
    n: int,
    l: float = 4.5
) -> BLPReport:
    """Evaluate the five conditions granting a radial positive
    decreasing solution of -u'' - (n-1)/r u' = g(u).

    (1) alpha exists and alpha > 0; (2) zeta0 exists and zeta0 > alpha;
    (3) g'(alpha) > 0; (4) g > 0 on (alpha, zeta0]; (5) either g has a
    zero beta above zeta0 or g(s)/s^l -> 0 with l below the critical
    Sobolev exponent (n + 2)/(n - 2) for n = 3.

    Parameters
    ----------
    params : Params
        coefficients
    n : int
        dimension, 2 or 3
    l : float
        growth exponent for condition (5)

    Returns
    -------
    BLPReport
        the five booleans and the failed indices
    """

    if n not in (2, 3):
        errmsg = "\n\nERROR: radial conditions apply to n = 2, 3 only (got %s)" % str(n)
        raise ParameterError(errmsg)

    report: RootReport = root_analysis(params)
    alpha: Optional[float] = report.alpha
    zeta0: Optional[float] = report.zeta0

    cond1: bool = alpha is not None and alpha > 0
    cond2: bool = cond1 and zeta0 is not None and zeta0 > alpha

    g_prime_alpha: Optional[float] = None
    cond3: bool = False
    if cond1:
        g_prime_alpha = g_prime(params, alpha)
        cond3 = g_prime_alpha > 0
    # end if

    cond4: bool = False
    if cond2:
        s: np.ndarray = alpha + (zeta0 - alpha) * np.linspace(0.0, 1.0, 2001)[1:]
        cond4 = bool(np.all(g_eval(params, s) > 0))
    # end if

    degree: int = 4 if params.a3 != 0 else (3 if params.a2 != 0 else 2)
    if np.isfinite(report.beta):
        cond5 = True
    else:
        cond5 = bool(np.isfinite(l) and l > degree)
        if n == 3:
            cond5 = cond5 and l < (n + 2.0) / (n - 2.0)
    # end if

    conditions = (cond1, cond2, cond3, cond4, cond5)
    failed: List[int] = [i + 1 for i, ok in enumerate(conditions) if not ok]
    return BLPReport(conditions, alpha, zeta0, g_prime_alpha, float(l), failed)

# end of check_blp_conditions()


def default_uniqueness_grid() -> np.ndarray:
    return np.geomspace(1e-4, 1e3, 20001)

# end of default_uniqueness_grid()


def check_uniqueness_condition(
    params: Params,
    n: int,
    s_grid: Optional[np.ndarray] = None
) -> Tuple[bool, float]:
    """Check d/ds[G(s)/g(s)] >= (n - 2)/(2n) on a grid.

    After cancelling s^2, G/g = N/D with N = s (a1/3 + a2 s/4 + a3 s^2/5)
    and D = a1 + a2 s + a3 s^2, so the derivative is the exact rational
    function (N'D - ND') / D^2. Grid points closer than 1e-3 alpha to a
    positive zero alpha of D are dropped.

    Parameters
    ----------
    params : Params
        coefficients
    n : int
        dimension, 2 or 3
    s_grid : numpy.ndarray, optional
        positive amplitudes (default: geometric grid on [1e-4, 1e3])

    Returns
    -------
    bool
        True when the bound holds on the whole grid (1e-10 slack)
    float
        minimum of the derivative minus the bound
    """

    if n not in (2, 3):
        errmsg = "\n\nERROR: the uniqueness condition applies to n = 2, 3 only"
        raise ParameterError(errmsg)

    s: np.ndarray = default_uniqueness_grid() if s_grid is None else np.asarray(
        s_grid, dtype=float
    )
    if np.any(s <= 0):
        errmsg = "\n\nERROR: the uniqueness grid must be positive"
        raise ParameterError(errmsg)

    num: Polynomial = Polynomial(
        [0.0, params.a1 / 3.0, params.a2 / 4.0, params.a3 / 5.0]
    )
    den: Polynomial = Polynomial([params.a1, params.a2, params.a3])
    top: Polynomial = num.deriv() * den - num * den.deriv()

    poles, _ = _positive_quadratic_roots(params.a1, params.a2, params.a3)
    keep: np.ndarray = np.ones(s.shape, dtype=bool)
    for pole in poles:
        keep &= np.abs(s - pole) >= 1e-3 * pole
    s = s[keep]

    d: np.ndarray = den(s)
    if np.any(d == 0):
        errmsg = "\n\nERROR: the grid hits a zero of g"
        raise ParameterError(errmsg)

    deriv: np.ndarray = top(s) / (d * d)
    min_slack: float = float(np.min(deriv) - uniqueness_threshold(n))
    return min_slack >= -1e-10, min_slack

# end of check_uniqueness_condition()

