"""Nehari projections, upper bounds for the ground-state level and the
scaling map onto the Nehari manifold.

The ground-state level is mu = inf{J(v) : K(v) = 0, v != 0}. Any trial v
projected onto K = 0 by v -> lambda1 v gives the upper bound
J(lambda1 v) >= mu; the profile attains mu.
"""

from tripow.TRIPOWException import LambdaRangeError, ParameterError
from tripow.field import PowerTail, RealField, h1_distance, h1_norm
from tripow.functionals import (
    NormQuintuple,
    action_S,
    compute_norms,
    functional_J,
    nehari_K,
    pohozaev_P
)
from tripow.model import Params
from tripow.utils import BUMPS, DELTA1, EPS1_REL, printProgressBar
from dataclasses import dataclass, field
from multiprocessing.managers import DictProxy, SyncManager
from scipy.optimize import brentq
from typing import Dict, List, Optional, Tuple
import multiprocessing as mp
import pandas as pd
import numpy as np
import time


#-----------------------------------------------------------------------
# domain types
#-----------------------------------------------------------------------
@dataclass(frozen=True)
class NehariProjection(object):
    """
    Scaling of a field onto the Nehari manifold.

    ...

    Attributes
    ----------
    lambda1 : float
        scale with K(lambda1 v) = 0
    value_J : float
        J(lambda1 v)
    value_S : float
        S(lambda1 v)
    """

    lambda1: float
    value_J: float
    value_S: float

    def to_dict(self) -> Dict[str, float]:
        return {"lambda1": self.lambda1, "J": self.value_J, "S": self.value_S}

# end of NehariProjection


@dataclass(frozen=True)
class MuEstimate(object):
    """
    Upper bound for the ground-state level from projected trials.

    ...

    Attributes
    ----------
    mu_hat : float
        smallest projected J
    witness : str
        trial attaining mu_hat
    trials : int
        number of trials
    S_phi : float
        S of the profile
    table : pandas.DataFrame
        one row per trial (family, label, lambda1, J, S, K)
    """

    mu_hat: float
    witness: str
    trials: int
    S_phi: float
    table: pd.DataFrame = field(repr=False, compare=False)

    @property
    def gap(self) -> float:
        return self.mu_hat - self.S_phi

    def to_dict(self) -> Dict:
        return {
            "mu_hat": self.mu_hat,
            "witness": self.witness,
            "trials": self.trials,
            "S_phi": self.S_phi,
            "gap": self.gap,
            "relative_gap": self.gap / self.S_phi,
        }

# end of MuEstimate


#-----------------------------------------------------------------------
# projections
#-----------------------------------------------------------------------
def _as_norms(v) -> NormQuintuple:
    return v if isinstance(v, NormQuintuple) else compute_norms(v)

# end of _as_norms()


def nehari_scale(v, params: Params) -> NehariProjection:
    """Scale v onto the Nehari manifold.

    K(lam v) / lam^2 = grad2 + lam l3 - a2 lam^2 l4 - lam^3 l5 is a cubic
    with exactly one positive root (one sign change in its coefficients);
    it is located with numpy.roots and polished by bracketing.

    Parameters
    ----------
    v : RealField, ComplexField or NormQuintuple
        nonzero field (or its norms)
    params : Params
        coefficients, a1 = -1 and a3 = 1

    Returns
    -------
    NehariProjection
        lambda1, J(lambda1 v) and S(lambda1 v)
    """

    params.require_standard("the Nehari projection")
    q: NormQuintuple = _as_norms(v)
    errmsg: str
    if q.grad2 <= 0 or q.l5 <= 0:
        errmsg = "\n\nERROR: cannot project a vanishing field onto the Nehari manifold"
        raise ParameterError(errmsg)

    coeffs = [-params.a3 * q.l5, -params.a2 * q.l4, -params.a1 * q.l3, q.grad2]

    def cubic(lam: float) -> float:
        return ((coeffs[0] * lam + coeffs[1]) * lam + coeffs[2]) * lam + coeffs[3]

    roots: np.ndarray = np.roots(coeffs)
    real_pos = [
        float(r.real) for r in roots if abs(r.imag) <= 1e-9 * abs(r) and r.real > 0
    ]
    guess: float = min(real_pos) if real_pos else 1.0
    hi: float = 2.0 * guess
    for _ in range(200):
        if cubic(hi) < 0:
            break
        hi *= 2.0
    else:
        errmsg = "\n\nERROR: no positive root of the Nehari scaling polynomial"
        raise ParameterError(errmsg)

    lam1: float = float(brentq(cubic, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                               maxiter=500))
    scaled: NormQuintuple = q.amplified(lam1)
    return NehariProjection(lam1, functional_J(scaled, params), action_S(scaled, params))

# end of nehari_scale()


#-----------------------------------------------------------------------
# trial family
#-----------------------------------------------------------------------
def half_max_width(profile) -> float:
    """Radius where the profile drops to half its peak."""

    r: np.ndarray = profile.field.grid.nodes
    v: np.ndarray = profile.field.values
    j: int = int(np.argmax(v < 0.5 * v[0]))
    # linear interpolation between the two nodes around the crossing
    r0, r1, v0, v1 = r[j - 1], r[j], v[j - 1], v[j]
    return float(r0 + (0.5 * v[0] - v0) * (r1 - r0) / (v1 - v0))

# end of half_max_width()


def trial_specs(
    profile,
    budget: int,
    seed: int = 0
) -> List[Tuple[str, str, Tuple]]:
    """Describe the trial family: the profile itself, Gaussians of
    log-spaced widths in [0.25, 4] half-max widths, stretches phi(r/s)
    with s in [0.5, 2], and min(64, budget // 3) random superpositions of
    smooth bumps drawn from a seeded generator.

    Returns
    -------
    list
        (family, label, parameters) per trial
    """

    if budget < 4:
        errmsg = "\n\nERROR: at least 4 trials are needed (got %d)" % budget
        raise ParameterError(errmsg)

    width: float = half_max_width(profile)
    bumps: int = min(BUMPS, budget // 3)
    remaining: int = budget - 1 - bumps
    n_gauss: int = remaining // 2
    n_stretch: int = remaining - n_gauss

    specs: List[Tuple[str, str, Tuple]] = [("profile", "phi", ())]
    for w in np.geomspace(0.25, 4.0, n_gauss) * width:
        specs.append(("gaussian", "width=%.6g" % w, (float(w),)))
    for s in np.geomspace(0.5, 2.0, n_stretch):
        specs.append(("stretch", "s=%.6g" % s, (float(s),)))

    rng = np.random.default_rng(seed)
    for i in range(bumps):
        terms: int = int(rng.integers(1, 5))
        weights = rng.uniform(0.2, 1.0, terms)
        centers = rng.uniform(0.0, 2.0, terms) * width
        widths = rng.uniform(0.3, 2.0, terms) * width
        specs.append((
            "bumps", "bumps#%d" % i,
            (tuple(weights), tuple(centers), tuple(widths)),
        ))
    # end for
    return specs

# end of trial_specs()


def build_trial(profile, family: str, args: Tuple) -> RealField:
    """Sample one trial on the profile grid."""

    grid = profile.field.grid
    r: np.ndarray = grid.nodes
    if family == "profile":
        return profile.field
    elif family == "gaussian":
        (w,) = args
        val: np.ndarray = np.exp(-(r / w) ** 2)
        return RealField(grid, val, -2.0 * r / (w * w) * val)
    elif family == "stretch":
        (s,) = args
        tail: Optional[PowerTail] = profile.field.extension()[0]
        v, dv = profile.field.evaluate(r / s, tail)
        new_tail = None if profile.field.tail is None else profile.field.tail.scaled(1.0, 1.0 / s)
        return RealField(grid, v, dv / s, new_tail)
    elif family == "bumps":
        weights, centers, widths = args
        val = np.zeros(r.shape)
        der = np.zeros(r.shape)
        for a, c, w in zip(weights, centers, widths):
            # even in r: bumps at +c and -c
            e1 = np.exp(-((r - c) / w) ** 2)
            e2 = np.exp(-((r + c) / w) ** 2)
            val += a * (e1 + e2)
            der += a * (-2.0 * (r - c) / (w * w) * e1 - 2.0 * (r + c) / (w * w) * e2)
        return RealField(grid, val, der)
    errmsg = "\n\nERROR: unknown trial family %s" % family
    raise ParameterError(errmsg)

# end of build_trial()


def evaluate_trials(
    specs: List[Tuple[int, str, str, Tuple]],
    profile,
    params: Params,
    return_dict: Optional[DictProxy] = None,
    procid: int = 0
) -> List[Dict]:
    """Project each trial onto the Nehari manifold and record J.

    When return_dict is given (worker process), the rows are stored
    under procid.
    """

    rows: List[Dict] = list()
    for idx, family, label, args in specs:
        q: NormQuintuple = compute_norms(build_trial(profile, family, args))
        proj: NehariProjection = nehari_scale(q, params)
        rows.append({
            "trial": idx,
            "family": family,
            "label": label,
            "K": nehari_K(q, params),
            "lambda1": proj.lambda1,
            "J": proj.value_J,
            "S": proj.value_S,
        })
    # end for
    if return_dict is not None:
        return_dict[procid] = rows
    return rows

# end of evaluate_trials()


def estimate_mu(
    params: Params,
    n: int,
    profile,
    budget: int = 200,
    seed: int = 0,
    cores: int = 1,
    verbose: bool = False
) -> MuEstimate:
    """Upper-bound the ground-state level with projected trials.

    Trials are split in cores chunks evaluated by separate processes;
    rows are merged back in trial order, so the result does not depend
    on cores.

    Parameters
    ----------
    params : Params
        coefficients, a1 = -1 and a3 = 1
    n : int
        dimension
    profile : Profile
        computed profile, seeds the trial family
    budget : int
        number of trials
    seed : int
        seed of the random bump generator
    cores : int
        worker processes
    verbose : bool
        print progress

    Returns
    -------
    MuEstimate
        mu_hat, witness and the trial table
    """

    params.require_standard("the ground-state level estimate")
    if profile.n != n:
        errmsg = "\n\nERROR: the profile was computed in dimension %d, not %d" % (profile.n, n)
        raise ParameterError(errmsg)

    specs = [
        (i, family, label, args)
        for i, (family, label, args) in enumerate(trial_specs(profile, budget, seed))
    ]

    if verbose:
        start: float = time.time()

    rows: List[Dict] = list()
    if cores <= 1:
        rows = evaluate_trials(specs, profile, params)
    else:
        cores = min(cores, len(specs))
        manager: SyncManager = mp.Manager()
        return_dict: DictProxy = manager.dict()
        chunks = [list(c) for c in np.array_split(np.arange(len(specs)), cores)]
        jobs = list()
        for i in range(cores):
            p = mp.Process(
                target=evaluate_trials,
                args=([specs[j] for j in chunks[i]], profile, params, return_dict, i)
            )
            jobs.append(p)
            p.start()
        # end for
        finished: int = 0
        if verbose:
            printProgressBar(finished, cores, prefix="Trials:", suffix="Complete", length=50)
        for job in jobs:
            job.join()  # sync point
            finished += 1
            if verbose:
                printProgressBar(finished, cores, prefix="Trials:", suffix="Complete",
                                 length=50)
        # end for
        for key in sorted(return_dict.keys()):
            rows += return_dict[key]
        if len(rows) != len(specs):
            errmsg = "\n\nERROR: %d trial evaluations were lost" % (len(specs) - len(rows))
            raise ParameterError(errmsg)
    # end if

    table: pd.DataFrame = pd.DataFrame(rows).sort_values("trial").reset_index(drop=True)
    best: int = int(table["J"].idxmin())
    s_phi: float = action_S(profile.norms, params)

    if verbose:
        end: float = time.time()
        print("Evaluated %d trials in %.2fs" % (len(table), end - start))

    return MuEstimate(
        float(table.loc[best, "J"]), str(table.loc[best, "label"]), len(table),
        s_phi, table
    )

# end of estimate_mu()


#-----------------------------------------------------------------------
# scaling map and the set B
#-----------------------------------------------------------------------
def _scaled_K(q: NormQuintuple, params: Params, n: int, lam: float) -> Tuple[float, float]:
    """K(v^lam) and its lam-derivative."""

    h: float = n / 2.0
    val: float = (
        lam ** 2 * q.grad2 - params.a1 * lam ** h * q.l3
        - params.a2 * lam ** n * q.l4 - params.a3 * lam ** (3 * h) * q.l5
    )
    der: float = (
        2.0 * lam * q.grad2 - params.a1 * h * lam ** (h - 1) * q.l3
        - params.a2 * n * lam ** (n - 1) * q.l4
        - params.a3 * 3 * h * lam ** (3 * h - 1) * q.l5
    )
    return val, der

# end of _scaled_K()


def lambda_capital(
    v,
    params: Params,
    n: int,
    delta1: float = DELTA1,
    profile=None,
    eps1: Optional[float] = None
) -> float:
    """Scale Lambda(v) near 1 with K(v^Lambda) = 0.

    Newton's method starts from 1; when an iterate leaves
    (1 - delta1, 1 + delta1) the root is bracketed on that interval
    instead, and a missing sign change is an error. When profile is
    given, v must lie within eps1 (default 0.2 ||phi||_H1) of it.

    Parameters
    ----------
    v : RealField or NormQuintuple
        field near the profile
    params : Params
        coefficients
    n : int
        dimension
    delta1 : float
        half-width of the admissible interval around 1
    profile : Profile, optional
        profile for the neighbourhood check (v must be a RealField)
    eps1 : float, optional
        neighbourhood radius

    Returns
    -------
    float
        Lambda(v)
    """

    errmsg: str
    if profile is not None:
        radius: float = EPS1_REL * h1_norm(profile.field) if eps1 is None else eps1
        dist: float = h1_distance(v, profile.field)
        if dist > radius:
            errmsg = (
                "\n\nERROR: the field lies at H1 distance %.3g from the profile, "
                "outside the neighbourhood of radius %.3g" % (dist, radius)
            )
            raise LambdaRangeError(errmsg)
    # end if

    q: NormQuintuple = _as_norms(v)
    lo: float = 1.0 - delta1
    hi: float = 1.0 + delta1
    lam: float = 1.0
    scale: float = max(q.grad2, np.finfo(float).tiny)
    for _ in range(60):
        val, der = _scaled_K(q, params, n, lam)
        if abs(val) <= 1e-15 * scale:
            return lam
        step: float = val / der if der != 0 else np.inf
        nxt: float = lam - step
        if not (lo < nxt < hi):
            break
        if abs(nxt - lam) <= 1e-15 * lam:
            return nxt
        lam = nxt
    else:
        return lam
    # end for

    f_lo, _ = _scaled_K(q, params, n, lo)
    f_hi, _ = _scaled_K(q, params, n, hi)
    if np.sign(f_lo) == np.sign(f_hi):
        errmsg = (
            "\n\nERROR: K(v^lam) has no root in (%g, %g), the field is outside "
            "the scaling neighbourhood" % (lo, hi)
        )
        raise LambdaRangeError(errmsg)
    return float(brentq(lambda x: _scaled_K(q, params, n, x)[0], lo, hi,
                        xtol=1e-15, rtol=4 * np.finfo(float).eps))

# end of lambda_capital()


def scaling_bound_slack(
    v,
    params: Params,
    n: int,
    mu: float,
    delta1: float = DELTA1
) -> float:
    """S(v) + (Lambda(v) - 1) P(v) - mu, nonnegative near the profile."""

    q: NormQuintuple = _as_norms(v)
    lam: float = lambda_capital(q, params, n, delta1)
    return action_S(q, params) + (lam - 1.0) * pohozaev_P(q, params, n) - mu

# end of scaling_bound_slack()


def in_set_B(
    v,
    params: Params,
    n: int,
    mu_hat: float
) -> Tuple[bool, float, float]:
    """Membership in {v : S(v) < mu, P(v) < 0}.

    Returns
    -------
    bool
        membership (strict inequalities)
    float
        S(v)
    float
        P(v)
    """

    q: NormQuintuple = _as_norms(v)
    s_val: float = action_S(q, params)
    p_val: float = pohozaev_P(q, params, n)
    return (s_val < mu_hat and p_val < 0), s_val, p_val

# end of in_set_B()

