"""Functions and constant variables used in tripow code"""


from tripow.TRIPOWException import ConfigFileError
from typing import Dict, Optional
import numpy as np
import sys
import os


#-----------------------------------------------------------------------
# constant vars
#-----------------------------------------------------------------------
# surface measure of the unit sphere (n=1 counts both half-lines)
SIGMA = {1: 2.0, 2: 2.0 * np.pi, 3: 4.0 * np.pi}
DIMENSIONS = (1, 2, 3)
# closed-form thresholds
DFD_THRESHOLD = 8.0 / np.sqrt(15.0)
DFF_1D_BOUND = 32.0 / (15.0 * np.sqrt(6.0))
# profile construction
DEFAULT_H = 0.01
TAIL_LEVEL = 1e-6
SHOOT_R0 = 1e-6
SHOOT_XTOL = 1e-12
SHOOT_SEPARATION = 1e-6
OVERSHOOT_TOL = 1e-10
UNDERSHOOT_TOL = 1e-10
ODE_RTOL = 1e-12
ODE_ATOL = 1e-14
QUAD_TOL_1D = 1e-6
QUAD_TOL_RADIAL = 1e-4
MIN_TAIL_NODES = 32
# variational defaults
DELTA1 = 0.5
EPS1_REL = 0.2
BUMPS = 64
# evolution defaults (per dimension)
EVOLVE_BOX = {1: 128.0, 2: 32.0}
EVOLVE_POINTS = {1: 2048, 2: 256}
EVOLVE_DT = {1: 1e-3, 2: 5e-3}
BOUNDARY_STRIP = 0.1
BOUNDARY_MASS = 1e-6
# output
DEFAULT_OUTDIR = "tripow_out"
CSV_FLOAT_FORMAT = "%.17g"
COMMANDS = ("classify", "profile", "scan", "evolve", "nehari")


#-----------------------------------------------------------------------
# functions
#-----------------------------------------------------------------------
def die(code: int) -> None:
    """Stop the execution and exit.

    Parameters
    ----------
    code : int
        stop code
    """

    sys.exit(code)

# end of die()


def sigint_handler() -> None:
    """Print a message when a SIGINT is caught and exit."""

    print("\nCaught SIGINT. tripow will exit")
    die(2)

# end of sigint_handler()


def print_warning(msg: str) -> None:
    """Write a warning line on the standard error.

    Parameters
    ----------
    msg : str
        warning text
    """

    sys.stderr.write("WARNING: " + msg + "\n")

# end of print_warning()


def uniqueness_threshold(n: int) -> float:
    """Lower bound (n - 2) / (2n) required on d/ds[G/g]."""

    return (n - 2.0) / (2.0 * n)

# end of uniqueness_threshold()


def tail_constant(n: int) -> float:
    """Leading coefficient C of the algebraic tail C / r^2 of the
    normalized profile in dimension n.

    Balancing the Laplacian of C r^-2 against the quadratic term of g
    gives C = 2 (4 - n).

    Parameters
    ----------
    n : int
        dimension

    Returns
    -------
    float
        tail constant
    """

    return 2.0 * (4.0 - n)

# end of tail_constant()


def tail_free_exponent(n: int) -> float:
    """Exponent of the decaying free mode on top of the C / r^2 tail."""

    c: float = tail_constant(n)
    return (-(n - 2.0) - np.sqrt((n - 2.0) ** 2 + 8.0 * c)) / 2.0

# end of tail_free_exponent()


def read_config_file(path: str) -> Dict[str, str]:
    """Read a plain-text configuration file of key = value lines.

    Blank lines and lines starting with '#' are skipped. Keys are
    normalized to argument destinations (dashes become underscores).

    Parameters
    ----------
    path : str
        configuration file

    Returns
    -------
    dict
        raw string values by key
    """

    errmsg: str
    if not os.path.isfile(path):
        errmsg = "\n\nERROR: unable to find the configuration file %s" % path
        raise ConfigFileError(errmsg)

    values: Dict[str, str] = dict()
    with open(path, mode="r", encoding="utf-8") as infile:
        for lineno, line in enumerate(infile, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                errmsg = "\n\nERROR: line %d of %s is not a key = value pair" % (
                    lineno, path
                )
                raise ConfigFileError(errmsg)
            key, value = line.split("=", 1)
            key = key.strip().lstrip("-").replace("-", "_")
            if not key:
                errmsg = "\n\nERROR: empty key at line %d of %s" % (lineno, path)
                raise ConfigFileError(errmsg)
            values[key] = value.strip()
        # end for
    # end with

    return values

# end of read_config_file()


def printProgressBar(iteration: int,
                     total: int,
                     prefix: Optional[str] = '',
                     suffix: Optional[str] = '',
                     decimals: Optional[int] = 1,
                     length: Optional[int] = 50,
                     fill: Optional[str] = '=',
                     printEnd: Optional[str] = "\r"
) -> None:
    """Print a progress bar.

    The progress bar is printed while scanning coefficient ranges and
    while evaluating Nehari trials.

    Parameters
    ----------
    iteration : int
        iteration number
    total : int
        total number of iterations to do
    prefix : str
        string to print in front of the bar
    suffix : str
        string to print at the end of the bar
    decimals : int
        number of decimal digits to display
    length : int
        length of the bar (# characters to use)
    fill : str
        string to fill the bar
    printEnd : str
        string to print at end of the whole bar 'structure'
    """

    percent: str = ("{0:." + str(decimals) + "f}").format(
        100 * (iteration / float(total))
    )
    filledLength: int = int(length * iteration // total)
    bar: str = fill * filledLength + ' ' * (length - filledLength)

    print('\r%s [%s] %s%% %s' % (prefix, bar, percent, suffix), end=printEnd)

    # new line when the bar is completely filled
    if iteration == total:
        print()

# end of printProgressBar()

