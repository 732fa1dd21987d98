"""Action, Nehari, Pohozaev and auxiliary functionals.

Every functional is a linear combination of the five norms collected in
a NormQuintuple, so the functions below accept either a field (norms are
computed on the fly) or a precomputed NormQuintuple. Along the scaling
v^lam(x) = lam^(n/2) v(lam x) the norms scale as

    grad2 -> lam^2 grad2, l3 -> lam^(n/2) l3, l4 -> lam^n l4,
    l5 -> lam^(3n/2) l5, l2 -> l2

which gives closed forms for the lam-derivatives at lam = 1.
"""

from tripow.TRIPOWException import ParameterError, ResidualError
from tripow.field import AnyField, RealField, grad_norm_sq, lp_norm_pow, rescale
from tripow.model import Params, case_tag
from tripow.utils import (
    DFF_1D_BOUND,
    QUAD_TOL_1D,
    QUAD_TOL_RADIAL,
    print_warning
)
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union
import numpy as np


#-----------------------------------------------------------------------
# domain types
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class NormQuintuple(object):
    """
    Norm monomials of a field.

    ...

    Attributes
    ----------
    grad2 : float
        squared L2 norm of the gradient
    l3 : float
        cube of the L3 norm
    l4 : float
        fourth power of the L4 norm
    l5 : float
        fifth power of the L5 norm
    l2 : float
        squared L2 norm (mass)
    """

    grad2: float
    l3: float
    l4: float
    l5: float
    l2: float

    def __post_init__(self):
        if min(self.grad2, self.l3, self.l4, self.l5, self.l2) < 0:
            errmsg = "\n\nERROR: norms cannot be negative"
            raise ParameterError(errmsg)

    def rescaled(self, lam: float, n: int) -> "NormQuintuple":
        """Norms of v^lam."""
        return NormQuintuple(
            lam ** 2 * self.grad2,
            lam ** (n / 2.0) * self.l3,
            lam ** n * self.l4,
            lam ** (1.5 * n) * self.l5,
            self.l2,
        )

    def amplified(self, t: float) -> "NormQuintuple":
        """Norms of t v, t > 0."""
        return NormQuintuple(
            t ** 2 * self.grad2,
            t ** 3 * self.l3,
            t ** 4 * self.l4,
            t ** 5 * self.l5,
            t ** 2 * self.l2,
        )

    def to_dict(self) -> Dict[str, float]:
        return {
            "grad2": self.grad2,
            "l3": self.l3,
            "l4": self.l4,
            "l5": self.l5,
            "l2": self.l2,
        }

# end of NormQuintuple


@dataclass(frozen=True)
class FunctionalReport(object):
    """
    S, K, P, J, the lam-derivatives d2S and dK, and the norms they are
    built from.
    """

    S: float
    K: float
    P: float
    J: float
    d2S: float
    dK: float
    norms: NormQuintuple
    params: Params

    def to_dict(self) -> Dict:
        return {
            "S": self.S,
            "K": self.K,
            "P": self.P,
            "J": self.J,
            "d2S": self.d2S,
            "dK": self.dK,
            "norms": self.norms.to_dict(),
            "params": self.params.to_dict(),
        }

# end of FunctionalReport


FieldOrNorms = Union[AnyField, NormQuintuple]


def compute_norms(v: AnyField) -> NormQuintuple:
    """Compute the norm quintuple of a field.

    Parameters
    ----------
    v : RealField or ComplexField
        field

    Returns
    -------
    NormQuintuple
        grad2, l3, l4, l5, l2
    """

    return NormQuintuple(
        grad_norm_sq(v),
        lp_norm_pow(v, 3),
        lp_norm_pow(v, 4),
        lp_norm_pow(v, 5),
        lp_norm_pow(v, 2),
    )

# end of compute_norms()


def _norms(v: FieldOrNorms) -> NormQuintuple:
    if isinstance(v, NormQuintuple):
        return v
    return compute_norms(v)

# end of _norms()


#-----------------------------------------------------------------------
# functionals
#-----------------------------------------------------------------------
def action_S(v: FieldOrNorms, params: Params) -> float:
    """S(v) = 1/2 grad2 - a1/3 l3 - a2/4 l4 - a3/5 l5."""

    q: NormQuintuple = _norms(v)
    return (
        0.5 * q.grad2
        - params.a1 / 3.0 * q.l3
        - params.a2 / 4.0 * q.l4
        - params.a3 / 5.0 * q.l5
    )

# end of action_S()


def nehari_K(v: FieldOrNorms, params: Params) -> float:
    """K(v) = grad2 - a1 l3 - a2 l4 - a3 l5."""

    q: NormQuintuple = _norms(v)
    return q.grad2 - params.a1 * q.l3 - params.a2 * q.l4 - params.a3 * q.l5

# end of nehari_K()


def pohozaev_P(v: FieldOrNorms, params: Params, n: int) -> float:
    """P(v) = grad2 - n a1/6 l3 - n a2/4 l4 - 3n a3/10 l5, the
    lam-derivative of S(v^lam) at lam = 1.
    """

    q: NormQuintuple = _norms(v)
    return (
        q.grad2
        - n * params.a1 / 6.0 * q.l3
        - n * params.a2 / 4.0 * q.l4
        - 3.0 * n * params.a3 / 10.0 * q.l5
    )

# end of pohozaev_P()


def functional_J(v: FieldOrNorms, params: Optional[Params] = None) -> float:
    """J(v) = S(v) - K(v)/4.

    With a1 = -1 and a3 = 1 (the default) this is
    grad2/4 + l3/12 + l5/20, which is nonnegative.
    """

    q: NormQuintuple = _norms(v)
    a1: float = -1.0 if params is None else params.a1
    a3: float = 1.0 if params is None else params.a3
    return 0.25 * q.grad2 - a1 / 12.0 * q.l3 + a3 / 20.0 * q.l5

# end of functional_J()


def d2S_analytic(norms: FieldOrNorms, params: Params, n: int) -> float:
    """Second lam-derivative of S(v^lam) at lam = 1.

    Parameters
    ----------
    norms : NormQuintuple or field
        norms of v
    params : Params
        coefficients
    n : int
        dimension

    Returns
    -------
    float
        grad2 - a1/3 (n/2)(n/2 - 1) l3 - a2/4 n(n - 1) l4
        - a3/5 (3n/2)(3n/2 - 1) l5
    """

    q: NormQuintuple = _norms(norms)
    h: float = n / 2.0
    return (
        q.grad2
        - params.a1 / 3.0 * h * (h - 1.0) * q.l3
        - params.a2 / 4.0 * n * (n - 1.0) * q.l4
        - params.a3 / 5.0 * 3.0 * h * (3.0 * h - 1.0) * q.l5
    )

# end of d2S_analytic()


def dK_dlambda_at_1(norms: FieldOrNorms, params: Params, n: int) -> float:
    """lam-derivative of K(v^lam) at lam = 1:
    2 grad2 - a1 (n/2) l3 - a2 n l4 - a3 (3n/2) l5.
    """

    q: NormQuintuple = _norms(norms)
    return (
        2.0 * q.grad2
        - params.a1 * n / 2.0 * q.l3
        - params.a2 * n * q.l4
        - params.a3 * 1.5 * n * q.l5
    )

# end of dK_dlambda_at_1()


def d2S_reduced(norms: FieldOrNorms, params: Params, n: int) -> float:
    """d2S after eliminating terms with K = 0 and P = 0.

    Equal to d2S_analytic on critical points only. Requires a1 = -1,
    a3 = 1.

    Parameters
    ----------
    norms : NormQuintuple or field
        norms of a critical point
    params : Params
        coefficients
    n : int
        dimension

    Returns
    -------
    float
        n = 1: -5/18 grad2 - 1/54 l3 + 5 a2/72 l4
        n = 2: -1/3 l3 - 3/5 l5
        n = 3: -grad2 - 3/4 l3 - 27/20 l5
    """

    params.require_standard("the reduced form of d2S")
    q: NormQuintuple = _norms(norms)
    if n == 1:
        return -5.0 / 18.0 * q.grad2 - q.l3 / 54.0 + 5.0 * params.a2 / 72.0 * q.l4
    elif n == 2:
        return -q.l3 / 3.0 - 0.6 * q.l5
    elif n == 3:
        return -q.grad2 - 0.75 * q.l3 - 27.0 / 20.0 * q.l5
    errmsg = "\n\nERROR: unsupported dimension %s" % str(n)
    raise ParameterError(errmsg)

# end of d2S_reduced()


def dK_reduced(norms: FieldOrNorms, params: Params, n: int) -> float:
    """dK - 5P = -3 grad2 - n/3 l3 + n a2/4 l4 (a1 = -1, a3 = 1)."""

    params.require_standard("the reduced form of dK")
    q: NormQuintuple = _norms(norms)
    return -3.0 * q.grad2 - n / 3.0 * q.l3 + n * params.a2 / 4.0 * q.l4

# end of dK_reduced()


def nehari_derivative(norms: FieldOrNorms, params: Params) -> float:
    """<K'(v), v> = 2 grad2 - 3 a1 l3 - 4 a2 l4 - 5 a3 l5."""

    q: NormQuintuple = _norms(norms)
    return (
        2.0 * q.grad2
        - 3.0 * params.a1 * q.l3
        - 4.0 * params.a2 * q.l4
        - 5.0 * params.a3 * q.l5
    )

# end of nehari_derivative()


def grad_reduction_1d(norms: FieldOrNorms) -> Tuple[float, float]:
    """Both sides of grad2 = l3/9 + l5/15, which holds for 1-D critical
    points (4P - K = 0 with a1 = -1, a3 = 1)."""

    q: NormQuintuple = _norms(norms)
    return q.grad2, q.l3 / 9.0 + q.l5 / 15.0

# end of grad_reduction_1d()


def dff_bound_1d(norms: FieldOrNorms, a2: float) -> Tuple[float, float]:
    """1-D bound chain for d2S on critical points.

    Returns
    -------
    float
        -4/81 l3 - 1/54 l5 + 5 a2/72 l4
    float
        its upper bound (-4/(27 sqrt(6)) + 5 a2/72) l4, negative for
        a2 < 32/(15 sqrt(6))
    """

    q: NormQuintuple = _norms(norms)
    value: float = -4.0 / 81.0 * q.l3 - q.l5 / 54.0 + 5.0 * a2 / 72.0 * q.l4
    bound: float = (-4.0 / (27.0 * np.sqrt(6.0)) + 5.0 * a2 / 72.0) * q.l4
    return value, bound

# end of dff_bound_1d()


def d2S_fd(
    v: RealField,
    params: Params,
    step: float = 1e-3,
    warn: bool = True
) -> float:
    """Second lam-derivative of S(rescale(v, lam)) at lam = 1 by centered
    differences.

    Two steps (step, step/2) are combined by Richardson extrapolation;
    the difference between them estimates the truncation error.

    Parameters
    ----------
    v : RealField
        radial field
    params : Params
        coefficients
    step : float
        largest step, in [1e-5, 1e-2]
    warn : bool
        warn when the estimated truncation error exceeds 1e-5 relative

    Returns
    -------
    float
        extrapolated second derivative
    """

    if step < 1e-5 or step > 1e-2:
        errmsg = "\n\nERROR: the finite-difference step must be in [1e-5, 1e-2] (got %g)" % step
        raise ParameterError(errmsg)

    s0: float = action_S(v, params)

    def second_difference(h: float) -> float:
        sp: float = action_S(rescale(v, 1.0 + h, warn=False), params)
        sm: float = action_S(rescale(v, 1.0 - h, warn=False), params)
        return (sp - 2.0 * s0 + sm) / (h * h)

    coarse: float = second_difference(step)
    fine: float = second_difference(step / 2.0)
    value: float = (4.0 * fine - coarse) / 3.0
    err: float = abs(fine - coarse) / 3.0
    if warn and err > 1e-5 * max(abs(value), np.finfo(float).tiny):
        print_warning(
            "second difference of S along the scaling has an estimated "
            "truncation error of %.3g (value %.6g)" % (err, value)
        )
    return value

# end of d2S_fd()


def functional_report(
    v: FieldOrNorms,
    params: Params,
    n: Optional[int] = None
) -> FunctionalReport:
    """Bundle S, K, P, J, d2S and dK of v."""

    q: NormQuintuple = _norms(v)
    if n is None:
        n = params.n
    return FunctionalReport(
        action_S(q, params),
        nehari_K(q, params),
        pohozaev_P(q, params, n),
        functional_J(q, params),
        d2S_analytic(q, params, n),
        dK_dlambda_at_1(q, params, n),
        q,
        params,
    )

# end of functional_report()


def instability_criterion(
    profile,
    params: Params,
    n: int
) -> Tuple[float, bool, bool]:
    """Sign test for the sufficient instability condition d2S < 0.

    Parameters
    ----------
    profile : Profile
        computed profile; its K and P residuals must lie within ten
        times the solver tolerance
    params : Params
        coefficients
    n : int
        dimension

    Returns
    -------
    float
        d2S
    bool
        True when d2S < 0
    bool
        True when the closed-form 1-D DFF bound a2 < 32/(15 sqrt(6))
        applies
    """

    tol: float = QUAD_TOL_1D if n == 1 else QUAD_TOL_RADIAL
    residuals = profile.residuals
    if max(residuals.K_res, residuals.P_res) > 10.0 * tol:
        errmsg = (
            "\n\nERROR: profile residuals |K| = %.3g, |P| = %.3g exceed ten "
            "times the solver tolerance %.1g" % (residuals.K_res, residuals.P_res, tol)
        )
        raise ResidualError(errmsg)

    d2s: float = d2S_analytic(profile.norms, params, n)
    bound_1d_dff: bool = (
        n == 1 and case_tag(params).label == "DFF" and params.a2 < DFF_1D_BOUND
    )
    return d2s, d2s < 0, bound_1d_dff

# end of instability_criterion()

