"""Scan of the instability criterion over a range of a2.

For every a2 the profile is constructed and the second derivative of
the action along the mass-preserving scaling is evaluated both from the
closed form in the norms and by finite differences. The a2 values are
split in chunks scored by separate processes; the rows are merged back
in a2 order, so the table does not depend on the number of cores.
"""

from tripow.TRIPOWException import (
    ConditionViolationError,
    NonExistenceError,
    TRIPOWException
)
from tripow.functionals import d2S_analytic, d2S_fd
from tripow.model import Params, case_tag, classify_existence
from tripow.profile import Profile, solve_profile
from tripow.resultsTmp import ScanResultTmp
from tripow.utils import printProgressBar, sigint_handler
from tripow.workflow import Scan
from multiprocessing.managers import DictProxy, SyncManager
from typing import Dict, List, Optional
import multiprocessing as mp
import pandas as pd
import numpy as np
import signal
import time
import sys


def scan_chunk(
    a2_values: List[float],
    params: Params,
    options: Dict,
    return_dict: Optional[DictProxy] = None,
    procid: int = 0
) -> ScanResultTmp:
    """Score one chunk of a2 values.

    Parameters
    ----------
    a2_values : list
        a2 values of the chunk
    params : Params
        a1, a3 and n (a2 is replaced)
    options : dict
        profile solver options
    return_dict : DictProxy, optional
        shared dictionary (worker process)
    procid : int
        worker index

    Returns
    -------
    ScanResultTmp
        rows of the chunk
    """

    res: ScanResultTmp = ScanResultTmp()
    for a2 in a2_values:
        p: Params = Params(params.a1, float(a2), params.a3, params.n)
        case: str = case_tag(p).label
        _, exists, _ = classify_existence(p)
        if not exists:
            res.append(a2, case, "nonexistent")
            continue

        try:
            profile: Profile = solve_profile(p, p.n, **options)
            d2s: float = d2S_analytic(profile.norms, p, p.n)
            d2s_fd: float = d2S_fd(profile.field, p)
        except (NonExistenceError, ConditionViolationError):
            res.append(a2, case, "nonexistent")
        except TRIPOWException as e:
            res.append(a2, case, "failed: %s" % type(e).__name__)
        else:
            res.append(a2, case, "ok", d2s, d2s_fd, profile.peak)
        # end try
    # end for

    if return_dict is not None:
        return_dict[procid] = res
    return res

# end of scan_chunk()


def sign_change(table: pd.DataFrame) -> Optional[float]:
    """Location of the first sign change of d2S between consecutive
    scored rows, linearly interpolated; None when the sign is constant."""

    ok: pd.DataFrame = table[table["status"] == "ok"]
    a2: np.ndarray = ok["a2"].to_numpy()
    d2s: np.ndarray = ok["d2S"].to_numpy()
    for i in range(len(a2) - 1):
        if np.sign(d2s[i]) != np.sign(d2s[i + 1]):
            return float(a2[i] - d2s[i] * (a2[i + 1] - a2[i]) / (d2s[i + 1] - d2s[i]))
    # end for
    return None

# end of sign_change()


def scan_a2(args_obj: Scan) -> pd.DataFrame:
    """Score the a2 range of the scan command in parallel.

    Parameters
    ----------
    args_obj : Scan
        scan arguments

    Returns
    -------
    pandas.DataFrame
        columns a2, case, status, d2S, d2S_fd, sign, peak
    """

    errmsg: str
    if not isinstance(args_obj, Scan):
        errmsg = "\n\nERROR: incorrect data-type. Exiting"
        raise ValueError(errmsg)

    params: Params = args_obj.get_params()
    a2_values: List[float] = args_obj.get_a2_values()
    options: Dict = args_obj.solver_options()
    verbose: bool = args_obj.get_verbose()
    cores: int = min(args_obj.get_cores(), len(a2_values))
    assert cores >= 1

    manager: SyncManager = mp.Manager()
    return_dict: DictProxy = manager.dict()
    a2_split = np.array_split(np.asarray(a2_values), cores)

    jobs = list()
    proc_finished: int = 0

    original_sigint_handler = signal.signal(signal.SIGINT, signal.SIG_IGN)
    signal.signal(signal.SIGINT, original_sigint_handler)

    if verbose:
        start_s: float = time.time()

    try:
        for i in range(cores):
            p = mp.Process(
                target=scan_chunk, args=(
                    [float(a) for a in a2_split[i]], params, options, return_dict, i
                )
            )
            jobs.append(p)
            p.start()
        # end for

        if verbose:
            printProgressBar(proc_finished, cores, prefix='Progress:',
                             suffix='Complete', length=50)
        for job in jobs:
            job.join()  # sync point
            proc_finished += 1
            if verbose:
                printProgressBar(proc_finished, cores, prefix='Progress:',
                                 suffix='Complete', length=50)
        # end for

    except KeyboardInterrupt:
        sigint_handler()
        sys.exit(2)

    else:
        if verbose:
            end_s: float = time.time()
            print("Scanned %d values of a2 in %.2fs" % (len(a2_values), end_s - start_s))
    # end try

    a2s: List[float] = list()
    cases: List[str] = list()
    statuses: List[str] = list()
    d2S: List[float] = list()
    d2S_fd: List[float] = list()
    peaks: List[float] = list()
    for key in sorted(return_dict.keys()):
        assert isinstance(return_dict[key], ScanResultTmp)

        a2s += return_dict[key].get_a2s()
        cases += return_dict[key].get_cases()
        statuses += return_dict[key].get_statuses()
        d2S += return_dict[key].get_d2S()
        d2S_fd += return_dict[key].get_d2S_fd()
        peaks += return_dict[key].get_peaks()
    # end for

    if len(a2s) != len(a2_values):
        errmsg = "\n\nERROR: %d of %d scan rows were lost by the workers" % (
            len(a2_values) - len(a2s), len(a2_values)
        )
        raise TRIPOWException(errmsg)

    signs: List[str] = [
        "" if status != "ok" else ("negative" if d < 0 else "nonnegative")
        for status, d in zip(statuses, d2S)
    ]
    table: pd.DataFrame = pd.DataFrame({
        "a2": a2s,
        "case": cases,
        "status": statuses,
        "d2S": d2S,
        "d2S_fd": d2S_fd,
        "sign": signs,
        "peak": peaks,
    })
    return table.sort_values("a2", kind="mergesort").reset_index(drop=True)

# end of scan_a2()

