"""From this point will be chosen the path to follow by tripow.

Each command of the command line is implemented by one cmd_* function,
which receives the command object built in tripow.__main__, runs the
computation, writes the run directory and returns the JSON summary
printed on the standard output.
"""


# version of tripow
__version__ = '0.3.0'


from tripow.evolution import (
    InstabilityReport,
    default_config,
    evolve,
    gaussian_data,
    instability_experiment,
    variance,
    virial_check
)
from tripow.field import ComplexField, grad_norm_sq
from tripow.functionals import functional_J, functional_report
from tripow.model import (
    Params,
    case_tag,
    check_blp_conditions,
    check_uniqueness_condition,
    root_analysis
)
from tripow.profile import Profile, h1_membership, solve_profile
from tripow.res_writer import build_report, write_csv, write_json
from tripow.scan_parameters import scan_a2, sign_change
from tripow.TRIPOWException import InsufficientSamplesError
from tripow.utils import DFD_THRESHOLD, DFF_1D_BOUND, uniqueness_threshold
from tripow.variational import MuEstimate, estimate_mu
from tripow.workflow import Classify, Evolve, Nehari, ProfileRun, Scan
from typing import Dict, List
import pandas as pd
import numpy as np


def _print_user_parameters(args_obj) -> None:
    print("User parameters:")
    for key, value in args_obj.to_dict().items():
        print("\t- %s: %s" % (key, value))
    print()  # newline

# end of _print_user_parameters()


def cmd_classify(args_obj: Classify) -> Dict:
    """Existence verdict, root analysis and, for n = 2, 3, the radial
    existence and uniqueness conditions.

    Parameters
    ----------
    args_obj : Classify
        classify arguments

    Returns
    -------
    dict
        verdict report
    """

    if not isinstance(args_obj, Classify):
        raise ValueError("Unknown arguments object type")

    verbose: bool = args_obj.get_verbose()
    if verbose:
        printWelcomeMsg()
        _print_user_parameters(args_obj)

    params: Params = args_obj.get_params()
    n: int = params.n
    tag = case_tag(params)
    roots = root_analysis(params)
    exists: bool = roots.exists
    reason: str = roots.reason

    body: Dict = {
        "case": tag.label,
        "pattern": tag.pattern,
        "boundary": tag.boundary,
        "n": n,
        "exists": exists,
        "reason": reason,
        "roots": roots.to_dict(),
        "thresholds": {
            "dfd_existence": DFD_THRESHOLD,
            "dff_1d_instability": DFF_1D_BOUND,
        },
    }
    if params.a1 != 0 and params.a3 != 0:
        normalized, amp, length = params.normalized()
        body["normalized"] = {
            "a1": normalized.a1,
            "a2": normalized.a2,
            "a3": normalized.a3,
            "amplitude_scale": amp,
            "length_scale": length,
        }
    # end if

    if n > 1:
        blp = check_blp_conditions(params, n)
        body["radial_conditions"] = blp.to_dict()
        body["thresholds"]["uniqueness"] = uniqueness_threshold(n)
        if exists and not blp.all_hold():
            exists = False
            reason = "radial existence conditions %s fail" % ", ".join(
                "(%d)" % i for i in blp.failed
            )
        if exists:
            holds, slack = check_uniqueness_condition(params, n)
            body["uniqueness"] = {"holds": holds, "min_slack": slack}
        body["exists"] = exists
        body["reason"] = reason
    # end if

    report: Dict = build_report(__version__, args_obj, body)
    if args_obj.has_outdir():
        write_json(report, args_obj.get_outdir(), "classify.json", verbose)
    return report

# end of cmd_classify()


def _solve(args_obj: ProfileRun) -> Profile:
    params: Params = args_obj.get_params()
    verbose: bool = args_obj.get_verbose()
    if verbose:
        print("Constructing the profile (case %s, n = %d)" % (
            case_tag(params).label, params.n
        ))
    return solve_profile(params, params.n, verbose=verbose, **args_obj.solver_options())

# end of _solve()


def cmd_profile(args_obj: ProfileRun) -> Dict:
    """Construct the profile; write profile.csv and profile.json.

    Parameters
    ----------
    args_obj : ProfileRun
        profile arguments

    Returns
    -------
    dict
        summary report
    """

    if not isinstance(args_obj, ProfileRun):
        raise ValueError("Unknown arguments object type")

    verbose: bool = args_obj.get_verbose()
    if verbose:
        printWelcomeMsg()
        _print_user_parameters(args_obj)

    params: Params = args_obj.get_params()
    outdir: str = args_obj.get_outdir()
    profile: Profile = _solve(args_obj)

    body: Dict = profile.to_dict()
    body["functionals"] = functional_report(profile.norms, params, params.n).to_dict()
    body["h1"] = h1_membership(profile).to_dict()
    report: Dict = build_report(__version__, args_obj, body)

    write_csv(profile.to_frame(), outdir, "profile.csv", verbose)
    write_json(report, outdir, "profile.json", verbose)

    return build_report(__version__, args_obj, {
        "case": body["case"],
        "n": params.n,
        "peak": profile.peak,
        "residuals": body["residuals"],
        "decay": body["decay"],
        "files": ["profile.csv", "profile.json"],
    })

# end of cmd_profile()


def cmd_instability_scan(args_obj: Scan) -> Dict:
    """Sign of d2S over the a2 range; write scan.csv and scan.json.

    For n = 1 each row is flagged against the closed-form sufficient
    bound of the DFF case, and the first observed sign change is
    reported without any claim on its sharpness.

    Parameters
    ----------
    args_obj : Scan
        scan arguments

    Returns
    -------
    dict
        summary report
    """

    if not isinstance(args_obj, Scan):
        raise ValueError("Unknown arguments object type")

    verbose: bool = args_obj.get_verbose()
    if verbose:
        printWelcomeMsg()
        _print_user_parameters(args_obj)

    params: Params = args_obj.get_params()
    outdir: str = args_obj.get_outdir()
    table: pd.DataFrame = scan_a2(args_obj)
    if params.n == 1:
        table["below_dff_bound"] = (table["case"] == "DFF") & (table["a2"] < DFF_1D_BOUND)

    ok: pd.DataFrame = table[table["status"] == "ok"]
    rel_gap: np.ndarray = np.abs(ok["d2S"] - ok["d2S_fd"]) / np.abs(ok["d2S"])
    body: Dict = {
        "rows": len(table),
        "scored": len(ok),
        "negative": int((ok["d2S"] < 0).sum()),
        "all_negative": bool(len(ok) > 0 and (ok["d2S"] < 0).all()),
        "max_fd_relative_gap": float(rel_gap.max()) if len(ok) > 0 else None,
        "sign_change": sign_change(table),
        "dff_1d_bound": DFF_1D_BOUND if params.n == 1 else None,
        "statuses": {k: int(v) for k, v in table["status"].value_counts().sort_index().items()},
    }
    report: Dict = build_report(__version__, args_obj, body)
    write_csv(table, outdir, "scan.csv", verbose)
    write_json(report, outdir, "scan.json", verbose)

    body["files"] = ["scan.csv", "scan.json"]
    return build_report(__version__, args_obj, body)

# end of cmd_instability_scan()


def _free_flow_error(times: List[float], variances: List[float], grad2: float) -> float:
    # V(t) = V(0) + 4 t^2 ||grad u0||^2 for free flow of real data
    t: np.ndarray = np.asarray(times)
    v: np.ndarray = np.asarray(variances)
    exact: np.ndarray = v[0] + 4.0 * t * t * grad2
    return float(np.max(np.abs(v - exact)) / np.max(np.abs(exact)))

# end of _free_flow_error()


def cmd_evolve(args_obj: Evolve) -> Dict:
    """Evolution run; write trace.csv and evolve.json.

    With --gaussian the initial state is e^(-|x|^2) and the virial
    identity is checked (and, for vanishing coefficients, the closed
    form of the free variance). Otherwise the instability experiment is
    run on the cut-off rescaled profile.

    Parameters
    ----------
    args_obj : Evolve
        evolve arguments

    Returns
    -------
    dict
        verdict report
    """

    if not isinstance(args_obj, Evolve):
        raise ValueError("Unknown arguments object type")

    verbose: bool = args_obj.get_verbose()
    if verbose:
        printWelcomeMsg()
        _print_user_parameters(args_obj)

    params: Params = args_obj.get_params()
    n: int = params.n
    outdir: str = args_obj.get_outdir()
    files: List[str] = list()
    body: Dict

    if args_obj.get_gaussian():
        config = default_config(
            params, n, t_end=args_obj.get_t_end(), L=args_obj.get_box(),
            N=args_obj.get_points(), dt=args_obj.get_dt(),
            save_every=args_obj.get_save_every()
        )
        u0: ComplexField = gaussian_data(config.grid)
        trace = evolve(config, u0, verbose=verbose)
        virial_err = None
        try:
            virial_err = virial_check(trace, params)
        except InsufficientSamplesError:
            pass
        body = {
            "verdict": "gaussian run",
            "virial_err": virial_err,
            "mass_drift": trace.drift("mass"),
            "energy_drift": trace.drift("energy"),
            "variance0": variance(u0),
            "boundary_flag": trace.boundary_flag,
            "discretization": config.to_dict(),
        }
        if params.a1 == 0 and params.a2 == 0 and params.a3 == 0:
            body["free_flow_variance_err"] = _free_flow_error(
                trace.times, trace.variance, grad_norm_sq(u0)
            )
        write_csv(trace.to_frame(), outdir, "trace.csv", verbose)
        files.append("trace.csv")

    else:
        profile: Profile = _solve(args_obj)
        config = None
        if n in (1, 2):
            config = default_config(
                params, n, t_end=args_obj.get_t_end(), L=args_obj.get_box(),
                N=args_obj.get_points(), dt=args_obj.get_dt(),
                save_every=args_obj.get_save_every()
            )
        result: InstabilityReport = instability_experiment(
            params, n, args_obj.get_lambda(), args_obj.get_eps(), config=config,
            profile=profile, R=args_obj.get_cutoff(), verbose=verbose
        )
        body = result.to_dict()
        if config is not None:
            body["discretization"] = config.to_dict()
        if result.trace is not None:
            body["mass_drift"] = result.trace.drift("mass")
            body["energy_drift"] = result.trace.drift("energy")
            write_csv(result.trace.to_frame(), outdir, "trace.csv", verbose)
            files.append("trace.csv")
    # end if

    report: Dict = build_report(__version__, args_obj, body)
    write_json(report, outdir, "evolve.json", verbose)
    files.append("evolve.json")

    report["files"] = files
    return report

# end of cmd_evolve()


def cmd_nehari(args_obj: Nehari) -> Dict:
    """Projected-trial estimate of the ground-state level; write
    trials.csv and nehari.json.

    Parameters
    ----------
    args_obj : Nehari
        nehari arguments

    Returns
    -------
    dict
        estimate report
    """

    if not isinstance(args_obj, Nehari):
        raise ValueError("Unknown arguments object type")

    verbose: bool = args_obj.get_verbose()
    if verbose:
        printWelcomeMsg()
        _print_user_parameters(args_obj)

    params: Params = args_obj.get_params()
    params.require_standard("the ground-state level estimate")
    outdir: str = args_obj.get_outdir()
    profile: Profile = _solve(args_obj)

    estimate: MuEstimate = estimate_mu(
        params, params.n, profile, budget=args_obj.get_trials(),
        seed=args_obj.get_seed(), cores=args_obj.get_cores(), verbose=verbose
    )
    body: Dict = estimate.to_dict()
    body["case"] = case_tag(params).label
    body["J_phi"] = functional_J(profile.norms, params)
    body["min_J_over_S_phi"] = estimate.mu_hat / estimate.S_phi

    report: Dict = build_report(__version__, args_obj, body)
    write_csv(estimate.table, outdir, "trials.csv", verbose)
    write_json(report, outdir, "nehari.json", verbose)

    report["files"] = ["trials.csv", "nehari.json"]
    return report

# end of cmd_nehari()


def printWelcomeMsg() -> None:
    """Prints the welcome message for tripow"""

    for _ in range(50):
        print('*', end='')

    print()  # newline
    print("\n\tWELCOME TO tripow v", __version__, sep='')
    print()  # newline

    for _ in range(50):
        print('*', end='')
    print()  # newline

# end of printWelcomeMsg()

