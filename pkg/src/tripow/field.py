"""Grids, fields, norms and the mass-preserving scaling family.

Radial fields live on uniform grids r_j = j h, j = 0, ..., m, and carry
an optional algebraic tail model used beyond the last node. Periodic
fields live on uniform boxes [-L, L)^n (n = 1, 2) and are handled
spectrally.
"""

from tripow.TRIPOWException import GridMismatchError, ParameterError
from tripow.utils import SIGMA, print_warning
from dataclasses import dataclass
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline, PchipInterpolator
from typing import Optional, Tuple, Union
import statsmodels.api as sm
import pandas as pd
import numpy as np


#-----------------------------------------------------------------------
# grids
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class RadialGrid(object):
    """
    Uniform radial grid r_j = j h, j = 0, ..., m, with h = r_max / m.

    ...

    Attributes
    ----------
    n : int
        dimension
    r_max : float
        truncation radius
    m : int
        number of intervals (m + 1 nodes)

    Methods
    -------
    nodes
        radii of the grid nodes
    h
        grid spacing
    weights
        trapezoid weights including the surface factor sigma_n r^(n-1)
    with_spacing(n, r_max, h)
        grid with the given spacing, r_max rounded up to a multiple of h
    """

    n: int
    r_max: float
    m: int

    def __post_init__(self):
        errmsg: str
        if self.n not in SIGMA:
            errmsg = "\n\nERROR: radial grids require n in {1, 2, 3}"
            raise ParameterError(errmsg)
        if not self.r_max > 0:
            errmsg = "\n\nERROR: the truncation radius must be positive"
            raise ParameterError(errmsg)
        if self.m < 64:
            errmsg = "\n\nERROR: radial grids need at least 64 intervals (got %d)" % self.m
            raise ParameterError(errmsg)

    @classmethod
    def with_spacing(cls, n: int, r_max: float, h: float) -> "RadialGrid":
        m: int = max(64, int(np.ceil(r_max / h - 1e-9)))
        return cls(n, m * h, m)

    @property
    def h(self) -> float:
        return self.r_max / self.m

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.m + 1) * self.h

    @property
    def weights(self) -> np.ndarray:
        r: np.ndarray = self.nodes
        w: np.ndarray = np.full(r.shape, self.h)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w * SIGMA[self.n] * r ** (self.n - 1)

    def same_as(self, other: "RadialGrid") -> bool:
        return (
            self.n == other.n and self.m == other.m
            and np.isclose(self.r_max, other.r_max, rtol=1e-14, atol=0.0)
        )

# end of RadialGrid


@dataclass(frozen=True)
class PeriodicGrid(object):
    """
    Uniform periodic grid on [-L, L)^n, N points per axis.

    ...

    Attributes
    ----------
    n : int
        dimension (1 or 2)
    L : float
        box half-length
    N : int
        points per axis (power of two)
    """

    n: int
    L: float
    N: int

    def __post_init__(self):
        errmsg: str
        if self.n not in (1, 2):
            errmsg = "\n\nERROR: periodic grids are available for n = 1, 2 only"
            raise ParameterError(errmsg)
        if not self.L > 0:
            errmsg = "\n\nERROR: the box half-length must be positive"
            raise ParameterError(errmsg)
        if self.N < 2 or (self.N & (self.N - 1)) != 0:
            errmsg = "\n\nERROR: the number of points per axis must be a power of two (got %d)" % self.N
            raise ParameterError(errmsg)

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def cell(self) -> float:
        return self.dx ** self.n

    @property
    def volume(self) -> float:
        return (2.0 * self.L) ** self.n

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def axis(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    @property
    def kaxis(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.dx)

    def coords(self) -> Tuple[np.ndarray, ...]:
        if self.n == 1:
            return (self.axis,)
        return tuple(np.meshgrid(self.axis, self.axis, indexing="ij"))

    def wavenumbers(self) -> Tuple[np.ndarray, ...]:
        if self.n == 1:
            return (self.kaxis,)
        return tuple(np.meshgrid(self.kaxis, self.kaxis, indexing="ij"))

    def k2(self) -> np.ndarray:
        return sum(k * k for k in self.wavenumbers())

    def radius(self) -> np.ndarray:
        return np.sqrt(sum(x * x for x in self.coords()))

# end of PeriodicGrid


#-----------------------------------------------------------------------
# fields
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class PowerTail(object):
    """Analytic continuation sum_i c_i r^e_i of a radial field beyond
    the last grid node."""

    coeffs: Tuple[float, ...]
    exponents: Tuple[float, ...]

    def value(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return sum(c * r ** e for c, e in zip(self.coeffs, self.exponents))

    def derivative(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return sum(c * e * r ** (e - 1) for c, e in zip(self.coeffs, self.exponents))

    def scaled(self, amp: float, lam: float) -> "PowerTail":
        # amp * tail(lam * r)
        return PowerTail(
            tuple(amp * c * lam ** e for c, e in zip(self.coeffs, self.exponents)),
            self.exponents,
        )

    def leading(self) -> Tuple[float, float]:
        i: int = int(np.argmax(self.exponents))
        return self.coeffs[i], self.exponents[i]

# end of PowerTail


@dataclass(frozen=True)
class RealField(object):
    """
    Real radial field sampled on a RadialGrid.

    ...

    Attributes
    ----------
    grid : RadialGrid
        radial grid
    values : numpy.ndarray
        samples at the grid nodes
    derivative : numpy.ndarray, optional
        exact samples of dv/dr, used instead of finite differences
    tail : PowerTail, optional
        model of the field beyond r_max
    """

    grid: RadialGrid
    values: np.ndarray
    derivative: Optional[np.ndarray] = None
    tail: Optional[PowerTail] = None

    def __post_init__(self):
        errmsg: str
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.m + 1,):
            errmsg = "\n\nERROR: field samples do not match the grid size"
            raise ParameterError(errmsg)
        if not np.all(np.isfinite(values)):
            errmsg = "\n\nERROR: field samples must be finite"
            raise ParameterError(errmsg)
        object.__setattr__(self, "values", values)
        if self.derivative is not None:
            deriv = np.asarray(self.derivative, dtype=float)
            if deriv.shape != values.shape or not np.all(np.isfinite(deriv)):
                errmsg = "\n\nERROR: derivative samples must be finite and match the grid"
                raise ParameterError(errmsg)
            object.__setattr__(self, "derivative", deriv)

    @classmethod
    def from_function(
        cls,
        grid: RadialGrid,
        func,
        dfunc=None,
        tail: Optional[PowerTail] = None
    ) -> "RealField":
        r: np.ndarray = grid.nodes
        deriv = None if dfunc is None else dfunc(r)
        return cls(grid, func(r), deriv, tail)

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.values)))

    def gradient(self) -> np.ndarray:
        if self.derivative is not None:
            return self.derivative
        return np.gradient(self.values, self.grid.h, edge_order=2)

    def scaled(self, factor: float) -> "RealField":
        tail = None if self.tail is None else self.tail.scaled(factor, 1.0)
        deriv = None if self.derivative is None else factor * self.derivative
        return RealField(self.grid, factor * self.values, deriv, tail)

    def extension(self) -> Tuple[Optional[PowerTail], float]:
        """Tail used beyond r_max and an estimate of its error at r_max.

        A field without a tail model gets a power law C r^p fitted on
        the last decade of nodes when that decade is positive and
        decaying; otherwise it is extended by zero.
        """

        if self.tail is not None:
            return self.tail, 0.0
        r: np.ndarray = self.grid.nodes
        v: np.ndarray = self.values
        window: np.ndarray = r >= 0.1 * self.grid.r_max
        if np.count_nonzero(window) >= 8 and np.all(v[window] > 0):
            try:
                c, p = fit_power_law(r[window], v[window])
            except ParameterError:
                c, p = 0.0, 0.0
            if p < -1.0:
                err: float = abs(c * self.grid.r_max ** p - v[-1])
                return PowerTail((c,), (p,)), err
        # end if
        return None, abs(v[-1])

    def evaluate(
        self,
        r: np.ndarray,
        tail: Optional[PowerTail] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Values and radial derivatives at arbitrary radii r >= 0.

        Inside the grid a cubic Hermite interpolant is used when exact
        derivative samples exist, a monotone cubic one otherwise.
        """

        r = np.asarray(r, dtype=float)
        nodes: np.ndarray = self.grid.nodes
        if self.derivative is not None:
            interp = CubicHermiteSpline(nodes, self.values, self.derivative)
        else:
            interp = PchipInterpolator(nodes, self.values)
        dinterp = interp.derivative()

        inside: np.ndarray = r <= self.grid.r_max
        val: np.ndarray = np.zeros(r.shape)
        der: np.ndarray = np.zeros(r.shape)
        val[inside] = interp(r[inside])
        der[inside] = dinterp(r[inside])
        if tail is None:
            tail = self.tail
        if tail is not None and np.any(~inside):
            val[~inside] = tail.value(r[~inside])
            der[~inside] = tail.derivative(r[~inside])
        return val, der

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"r": self.grid.nodes, "value": self.values})

# end of RealField


@dataclass(frozen=True)
class ComplexField(object):
    """
    Complex state sampled on a PeriodicGrid.

    ...

    Attributes
    ----------
    grid : PeriodicGrid
        periodic grid
    values : numpy.ndarray
        complex samples, shape (N,) * n
    """

    grid: PeriodicGrid
    values: np.ndarray

    def __post_init__(self):
        errmsg: str
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            errmsg = "\n\nERROR: field samples do not match the grid shape"
            raise ParameterError(errmsg)
        if not np.all(np.isfinite(values)):
            errmsg = "\n\nERROR: field samples must be finite"
            raise ParameterError(errmsg)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.grid.n

    def to_frame(self) -> pd.DataFrame:
        coords = self.grid.coords()
        data = dict()
        for name, x in zip(("x", "y"), coords):
            data[name] = x.ravel()
        data["re"] = self.values.real.ravel()
        data["im"] = self.values.imag.ravel()
        return pd.DataFrame(data)

# end of ComplexField


AnyField = Union[RealField, ComplexField]


#-----------------------------------------------------------------------
# norms
#-----------------------------------------------------------------------
def _tail_integral(n: int, r0: float, integrand) -> float:
    val, _ = quad(
        lambda r: SIGMA[n] * r ** (n - 1) * integrand(r),
        r0, np.inf, limit=200, epsabs=0.0, epsrel=1e-10
    )
    return float(val)

# end of _tail_integral()


def lp_norm_pow(v: AnyField, p: float) -> float:
    """Compute the p-th power of the L^p norm of v.

    Radial fields are integrated with the composite trapezoid rule
    weighted by sigma_n r^(n-1), plus the analytic tail contribution
    beyond r_max when a tail model is attached. For n = 2 the
    Euler-Maclaurin end correction at r = 0 is added. Periodic fields
    use uniform weights.

    Parameters
    ----------
    v : RealField or ComplexField
        field
    p : float
        exponent (p >= 2)

    Returns
    -------
    float
        integral of |v|^p
    """

    if p < 2:
        errmsg = "\n\nERROR: norms are computed for p >= 2 (got %g)" % p
        raise ParameterError(errmsg)

    if isinstance(v, ComplexField):
        return float(v.grid.cell * np.sum(np.abs(v.values) ** p))

    if not isinstance(v, RealField):
        errmsg = "\n\nERROR: unknown field type %s" % type(v).__name__
        raise TypeError(errmsg)

    grid: RadialGrid = v.grid
    absv: np.ndarray = np.abs(v.values) ** p
    total: float = float(np.dot(grid.weights, absv))
    if grid.n == 2:
        total += grid.h ** 2 / 12.0 * SIGMA[2] * absv[0]
    if v.tail is not None:
        tail = v.tail
        total += _tail_integral(grid.n, grid.r_max, lambda r: abs(tail.value(r)) ** p)
    return total

# end of lp_norm_pow()


def grad_norm_sq(v: AnyField) -> float:
    """Compute the squared L^2 norm of the gradient of v.

    Radial: exact derivative samples when available, second-order
    differences otherwise. Periodic: spectral derivative (Parseval).

    Parameters
    ----------
    v : RealField or ComplexField
        field

    Returns
    -------
    float
        integral of |grad v|^2
    """

    if isinstance(v, ComplexField):
        grid: PeriodicGrid = v.grid
        uhat: np.ndarray = np.fft.fftn(v.values)
        return float(
            grid.cell / grid.N ** grid.n * np.sum(grid.k2() * np.abs(uhat) ** 2)
        )

    if not isinstance(v, RealField):
        errmsg = "\n\nERROR: unknown field type %s" % type(v).__name__
        raise TypeError(errmsg)

    rgrid: RadialGrid = v.grid
    d2: np.ndarray = v.gradient() ** 2
    total: float = float(np.dot(rgrid.weights, d2))
    if rgrid.n == 2:
        total += rgrid.h ** 2 / 12.0 * SIGMA[2] * d2[0]
    if v.tail is not None:
        tail = v.tail
        total += _tail_integral(rgrid.n, rgrid.r_max, lambda r: tail.derivative(r) ** 2)
    return total

# end of grad_norm_sq()


def fit_power_law(r: np.ndarray, v: np.ndarray) -> Tuple[float, float]:
    """Least-squares fit of log v = log C + p log r.

    Parameters
    ----------
    r : numpy.ndarray
        positive radii
    v : numpy.ndarray
        positive values

    Returns
    -------
    float
        prefactor C
    float
        exponent p
    """

    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)
    if r.size < 2 or np.any(r <= 0) or np.any(v <= 0):
        errmsg = "\n\nERROR: a power-law fit needs positive radii and values"
        raise ParameterError(errmsg)
    X: np.ndarray = sm.add_constant(np.log(r))
    res = sm.OLS(np.log(v), X).fit()
    logc, p = res.params
    return float(np.exp(logc)), float(p)

# end of fit_power_law()


#-----------------------------------------------------------------------
# scaling and distances
#-----------------------------------------------------------------------
def rescale(
    v: RealField,
    lam: float,
    warn: bool = True,
    grid: Optional[RadialGrid] = None
) -> RealField:
    """Mass-preserving rescaling v^lam(r) = lam^(n/2) v(lam r).

    By default the result lives on the stretched grid with nodes
    r_j / lam, where the samples are exact multiples of the input ones
    and no interpolation takes place. When a target grid is given, the
    field is resampled on it; samples at lam r beyond r_max then come
    from the tail model (or a power law fitted on the last decade of
    nodes). The tail model is rescaled analytically.

    Parameters
    ----------
    v : RealField
        field
    lam : float
        positive scale
    warn : bool
        warn when the extrapolation error exceeds 1e-8 of the peak
    grid : RadialGrid, optional
        grid to resample the rescaled field on

    Returns
    -------
    RealField
        rescaled field
    """

    if not lam > 0:
        errmsg = "\n\nERROR: the scaling parameter must be positive (got %g)" % lam
        raise ParameterError(errmsg)
    if lam == 1.0 and (grid is None or grid.same_as(v.grid)):
        return v

    n: int = v.grid.n
    amp: float = lam ** (n / 2.0)
    new_tail = None if v.tail is None else v.tail.scaled(amp, lam)
    deriv: Optional[np.ndarray]
    if grid is None:
        stretched: RadialGrid = RadialGrid(n, v.grid.r_max / lam, v.grid.m)
        deriv = None if v.derivative is None else amp * lam * v.derivative
        return RealField(stretched, amp * v.values, deriv, new_tail)

    if grid.n != n:
        errmsg = "\n\nERROR: cannot resample a field of dimension %d on a grid of dimension %d" % (
            n, grid.n
        )
        raise GridMismatchError(errmsg)
    tail, tail_err = v.extension()
    if warn and lam * grid.r_max > v.grid.r_max and tail_err > 1e-8 * v.peak:
        print_warning(
            "rescaling by %g extrapolates beyond r_max with an estimated "
            "error of %.3g (peak %.3g)" % (lam, tail_err, v.peak)
        )
    val, der = v.evaluate(lam * grid.nodes, tail)
    deriv = amp * lam * der if v.derivative is not None else None
    return RealField(grid, amp * val, deriv, new_tail)

# end of rescale()


def _tail_difference(
    u: Optional[PowerTail],
    w: Optional[PowerTail]
) -> Optional[PowerTail]:
    if u is None and w is None:
        return None
    coeffs: Tuple[float, ...] = ()
    exponents: Tuple[float, ...] = ()
    if u is not None:
        coeffs += u.coeffs
        exponents += u.exponents
    if w is not None:
        coeffs += tuple(-c for c in w.coeffs)
        exponents += w.exponents
    return PowerTail(coeffs, exponents)

# end of _tail_difference()


def h1_distance(u: AnyField, w: AnyField) -> float:
    """H^1 distance sqrt(||u - w||^2 + ||grad(u - w)||^2).

    For radial fields the tail models beyond r_max enter the distance
    through the analytic tail of the difference.

    Parameters
    ----------
    u : RealField or ComplexField
        first field
    w : RealField or ComplexField
        second field, on the same grid

    Returns
    -------
    float
        H^1 distance
    """

    if type(u) is not type(w):
        errmsg = "\n\nERROR: cannot compare fields of different kinds"
        raise GridMismatchError(errmsg)

    diff: AnyField
    if isinstance(u, ComplexField):
        if u.grid != w.grid:
            errmsg = "\n\nERROR: the two fields live on different grids"
            raise GridMismatchError(errmsg)
        diff = ComplexField(u.grid, u.values - w.values)
    else:
        if not u.grid.same_as(w.grid):
            errmsg = "\n\nERROR: the two fields live on different grids"
            raise GridMismatchError(errmsg)
        deriv = None
        if u.derivative is not None and w.derivative is not None:
            deriv = u.derivative - w.derivative
        diff = RealField(
            u.grid, u.values - w.values, deriv, _tail_difference(u.tail, w.tail)
        )
    # end if

    return float(np.sqrt(lp_norm_pow(diff, 2) + grad_norm_sq(diff)))

# end of h1_distance()


def h1_norm(v: AnyField) -> float:
    return float(np.sqrt(lp_norm_pow(v, 2) + grad_norm_sq(v)))

# end of h1_norm()

