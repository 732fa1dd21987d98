"""Functions to store tripow results.

Every command writes in its own run directory:
* CSV tables (profile samples, scan rows, trial table, evolution trace,
  last finite state on a numerical abort), written with pandas at full
  precision
* JSON reports, with stable key order, which always carry the tripow
  version and the echoed run configuration

Infinite values are serialized as the string "inf" (NaN as null), so the
JSON files stay standard.
"""

from tripow.TRIPOWException import NumericalAbortError
from tripow.utils import CSV_FLOAT_FORMAT
from tripow.workflow import RunConfig
from typing import Any, Dict, Optional
import pandas as pd
import numpy as np
import json
import time
import os


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars and arrays, tuples and non-finite floats to
    plain JSON values."""

    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value: float = float(obj)
        if np.isnan(value):
            return None
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj

# end of to_jsonable()


def build_report(version: str, args_obj: RunConfig, body: Dict) -> Dict:
    """Prefix a report with the version and the echoed configuration."""

    if not isinstance(args_obj, RunConfig):
        errmsg = "\n\nERROR: incorrect data-type. Exiting"
        raise ValueError(errmsg)

    report: Dict = {"version": version, "config": args_obj.to_dict()}
    report.update(body)
    return to_jsonable(report)

# end of build_report()


def dumps(report: Dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, allow_nan=False,
                      ensure_ascii=False)

# end of dumps()


def print_report(report: Dict) -> None:
    """Print a JSON report on the standard output."""

    print(dumps(report))

# end of print_report()


def prepare_outdir(outdir: str) -> str:
    """Create the run directory (existing files are overwritten)."""

    if not os.path.isdir(outdir):
        os.makedirs(outdir, exist_ok=True)
    return os.path.abspath(outdir)

# end of prepare_outdir()


def write_json(report: Dict, outdir: str, fname: str, verbose: bool = False) -> str:
    """Write a JSON report in the run directory.

    Parameters
    ----------
    report : dict
        report
    outdir : str
        run directory
    fname : str
        file name
    verbose : bool
        print timings

    Returns
    -------
    str
        path of the written file
    """

    if verbose:
        start: float = time.time()

    path: str = os.path.join(prepare_outdir(outdir), fname)
    with open(path, mode="w", encoding="utf-8") as outfile:
        outfile.write(dumps(report))
        outfile.write("\n")

    if verbose:
        end: float = time.time()
        print("%s written in %.2fs" % (fname, end - start))

    return path

# end of write_json()


def write_csv(
    table: pd.DataFrame,
    outdir: str,
    fname: str,
    verbose: bool = False
) -> str:
    """Write a table in the run directory at full precision.

    Parameters
    ----------
    table : pandas.DataFrame
        table
    outdir : str
        run directory
    fname : str
        file name
    verbose : bool
        print timings

    Returns
    -------
    str
        path of the written file
    """

    if not isinstance(table, pd.DataFrame):
        errmsg = "\n\nERROR: results must be stored in a pandas DataFrame"
        raise ValueError(errmsg)

    if verbose:
        start: float = time.time()

    path: str = os.path.join(prepare_outdir(outdir), fname)
    table.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, encoding="utf-8")

    if verbose:
        end: float = time.time()
        print("%s written in %.2fs" % (fname, end - start))

    return path

# end of write_csv()


def dump_last_state(
    error: NumericalAbortError,
    outdir: str,
    grid=None
) -> Optional[str]:
    """Write the last finite state carried by a numerical abort.

    The grid defaults to the one carried by the error. Returns the
    written path, None when the error carries no state.
    """

    state = error.last_state
    if state is None:
        return None
    if grid is None:
        grid = error.grid
    values: np.ndarray = np.asarray(state)
    data: Dict = dict()
    if grid is not None and tuple(grid.shape) == values.shape:
        for name, x in zip(("x", "y"), grid.coords()):
            data[name] = x.ravel()
    else:
        data["index"] = np.arange(values.size)
    data["re"] = values.real.ravel()
    data["im"] = values.imag.ravel()
    return write_csv(pd.DataFrame(data), outdir, "last_state.csv")

# end of dump_last_state()

