#!/usr/bin/env python
#
# MIT License
#
# Copyright (c) 2026 The tripow developers
#
# Permission is hereby granted, free of charge, to any person obtaining
# a copy of this software and associated documentation files (the
# "Software"), to deal in the Software without restriction, including
# without limitation the rights to use, copy, modify, merge, publish,
# distribute, sublicense, and/or sell copies of the Software, and to
# permit persons to whom the Software is furnished to do so, subject to
# the following conditions:
#
# The above copyright notice and this permission notice shall be
# included in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
# MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
# IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY
# CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT,
# TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE
# SOFTWARE OR THE USE OR OTHER DEALINGS IN THE SOFTWARE.


"""
tripow version {version}

Zero-frequency standing waves of the triple-power NLS

    i u_t + Δu + a1|u|u + a2|u|^2 u + a3|u|^3 u = 0,   n = 1, 2, 3.

tripow classifies coefficient triples, constructs the algebraically
decaying profiles, evaluates the action, Nehari and Pohozaev functionals
on them, tests the sign condition for their instability and runs
split-step evolutions with virial and tube-distance diagnostics.

Usage:

    * existence verdict (JSON on the standard output):

        tripow classify --a1 -1 --a2 -1 --a3 1 --n 1

    * profile construction (profile.csv, profile.json):

        tripow profile --a2 0 --n 3 [options]

    * sign of the instability criterion over a range of a2 (scan.csv, scan.json):

        tripow scan --n 1 --a2-min 0.1 --a2-max 0.8 --a2-step 0.1 [options]

    * evolution of the cut-off rescaled profile, or of a Gaussian (trace.csv, evolve.json):

        tripow evolve --a2 -1 --n 1 --lambda 1.05 --eps 0.1 [options]
        tripow evolve --a1 0 --a2 0 --a3 0 --gaussian --t-end 1 [options]

    * ground-state level from projected trials (trials.csv, nehari.json):

        tripow nehari --a2 0 --n 1 --trials 200 [options]

Options can also be given in a plain-text file (--config FILE) of
"key = value" lines; command-line flags override the file.

Exit codes: 0 ok, 2 usage, 3 no profile exists, 4 numerical failure.

Run "tripow --help" to see all command-line options.
"""


from tripow.TRIPOWArgumentParser import TRIPOWArgumentParser
from tripow.TRIPOWException import (
    ConditionViolationError,
    ConfigFileError,
    NonExistenceError,
    NumericalAbortError,
    ParameterError,
    TRIPOWException
)
from tripow.workflow import Classify, Evolve, Nehari, ProfileRun, RunConfig, Scan
from tripow.utils import (
    COMMANDS,
    DEFAULT_H,
    DEFAULT_OUTDIR,
    DIMENSIONS,
    TAIL_LEVEL,
    die,
    read_config_file,
    sigint_handler
)
from tripow.tripow import (
    __version__,
    cmd_classify,
    cmd_evolve,
    cmd_instability_scan,
    cmd_nehari,
    cmd_profile
)
from tripow.res_writer import dump_last_state, print_report
from typing import Dict, List, Optional
import multiprocessing as mp
import contextlib
import argparse
import time
import sys


def get_parser() -> TRIPOWArgumentParser:
    """Create the TRIPOWArgumentParser object reading the command-line
    arguments given to tripow

    Returns
    -------
    TRIPOWArgumentParser
        parser object for the tripow command line
    """

    parser: TRIPOWArgumentParser = TRIPOWArgumentParser(usage=__doc__,
                                                        add_help=False)

    group = parser.add_argument_group("Options")
    group.add_argument("-h", "--help", action="help", help="Show this help "
                       "message and exit")
    group.add_argument("--version", action="version", help="Show software "
                       "version and exit", version=__version__)
    group.add_argument("-j", "--cores", type=int, default=0, metavar="NCORES",
                       nargs='?', const=0, help="Number of worker processes "
                       "(scan, nehari). Use 0 to auto-detect. Default: "
                       "%(default)s")

    ####################################################################
    # mandatory arguments
    ####################################################################
    group.add_argument("command", type=str, default='',
                       help="Mandatory argument placed immediately after "
                       "\"tripow\". One of: " + ", ".join(COMMANDS))

    ####################################################################
    # coefficients and solver
    ####################################################################
    group.add_argument("--a1", type=float, default=-1.0, metavar="A1",
                       help="Coefficient of |u|u. Default: %(default)s")
    group.add_argument("--a2", type=float, default=0.0, metavar="A2",
                       help="Coefficient of |u|^2 u. Default: %(default)s")
    group.add_argument("--a3", type=float, default=1.0, metavar="A3",
                       help="Coefficient of |u|^3 u. Default: %(default)s")
    group.add_argument("--n", type=int, default=1, metavar="N",
                       help="Space dimension (1, 2 or 3). Default: %(default)s")
    group.add_argument("--h", type=float, default=DEFAULT_H, metavar="H",
                       help="Spacing of the radial grid. Default: %(default)s")
    group.add_argument("--tail-level", type=float, default=TAIL_LEVEL,
                       metavar="LEVEL", dest="tail_level", help="The profile "
                       "is truncated where it falls below LEVEL times its "
                       "peak. Default: %(default)s")

    ####################################################################
    # scan arguments
    ####################################################################
    group.add_argument("--a2-min", type=float, default=None, metavar="A2MIN",
                       dest="a2_min", help="First a2 of the scan")
    group.add_argument("--a2-max", type=float, default=None, metavar="A2MAX",
                       dest="a2_max", help="Last a2 of the scan")
    group.add_argument("--a2-step", type=float, default=None, metavar="STEP",
                       dest="a2_step", help="a2 increment of the scan")

    ####################################################################
    # evolve arguments
    ####################################################################
    group.add_argument("--lambda", type=float, default=1.05, metavar="LAMBDA",
                       dest="lam", help="Scale of the initial data, in "
                       "[0.8, 1.25]. Default: %(default)s")
    group.add_argument("--eps", type=float, default=0.1, metavar="EPS",
                       help="Tube radius relative to the H1 norm of the "
                       "profile. Default: %(default)s")
    group.add_argument("--gaussian", action='store_true', default=False,
                       help="Evolve exp(-|x|^2) instead of the cut-off profile")
    group.add_argument("--t-end", type=float, default=50.0, metavar="T",
                       dest="t_end", help="Evolution horizon. Default: %(default)s")
    group.add_argument("--dt", type=float, default=None, metavar="DT",
                       help="Time step (default depends on the dimension)")
    group.add_argument("--points", type=int, default=None, metavar="NPOINTS",
                       help="Grid points per axis, a power of two (default "
                       "depends on the dimension)")
    group.add_argument("--box", type=float, default=None, metavar="L",
                       help="Half-length of the periodic box (default depends "
                       "on the dimension)")
    group.add_argument("--save-every", type=int, default=10, metavar="STEPS",
                       dest="save_every", help="Steps between two saved "
                       "diagnostics. Default: %(default)s")
    group.add_argument("--cutoff", type=float, default=None, metavar="R",
                       help="Cut-off radius of the initial data (default 0.45 "
                       "box)")

    ####################################################################
    # nehari arguments
    ####################################################################
    group.add_argument("--trials", type=int, default=200, metavar="NTRIALS",
                       help="Number of projected trials. Default: %(default)s")
    group.add_argument("--seed", type=int, default=0, metavar="SEED",
                       help="Seed of the random trial generator. Default: "
                       "%(default)s")

    ####################################################################
    # output and run control
    ####################################################################
    group.add_argument("-o", "--out", type=str, default='', metavar='OUTDIR',
                       help="Output directory. Default: tripow_out_<command> "
                       "(classify prints only, unless given)")
    group.add_argument("--config", type=str, default='', metavar="FILE",
                       help="Plain-text file of key = value lines; flags "
                       "override its values")
    group.add_argument("--verbose", default=False, action='store_true',
                       help="Output a lot of additional information about the "
                       "execution")

    return parser

# end of get_parser()


def apply_config_file(parser: TRIPOWArgumentParser, path: str) -> None:
    """Use the values of a configuration file as parser defaults.

    Parameters
    ----------
    parser : TRIPOWArgumentParser
        parser
    path : str
        configuration file
    """

    # keys are destinations or long flag names (--lambda -> lambda)
    actions: Dict = dict()
    for a in parser._actions:
        if a.dest in ("help", "version", "command", "config"):
            continue
        actions[a.dest] = a
        for opt in a.option_strings:
            if opt.startswith("--"):
                actions[opt[2:].replace("-", "_")] = a
    # end for
    values: Dict[str, str] = read_config_file(path)
    defaults: Dict = dict()
    for key, raw in values.items():
        if key not in actions:
            errmsg = "\n\nERROR: unknown key '%s' in %s" % (key, path)
            raise ConfigFileError(errmsg)
        action = actions[key]
        if isinstance(action, argparse._StoreTrueAction):
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                errmsg = "\n\nERROR: '%s' expects a boolean (got '%s')" % (key, raw)
                raise ConfigFileError(errmsg)
            defaults[action.dest] = raw.lower() in ("true", "1", "yes")
        else:
            try:
                defaults[action.dest] = action.type(raw) if action.type is not None else raw
            except ValueError:
                errmsg = "\n\nERROR: invalid value '%s' for '%s'" % (raw, key)
                raise ConfigFileError(errmsg)
        # end if
    # end for
    parser.set_defaults(**defaults)

# end of apply_config_file()


def build_workflow(parser: TRIPOWArgumentParser, args: argparse.Namespace) -> RunConfig:
    """Check the arguments consistency and build the command object.

    Inconsistent arguments stop the execution through parser.error
    (exit code 2).
    """

    if args.command not in COMMANDS:
        parser.error("Do not know what to do. Available commands: " +
                     ", ".join(COMMANDS))

    if args.n not in DIMENSIONS:
        parser.error("The dimension must be 1, 2 or 3")

    # cores (shared by all the commands)
    if args.cores is None or args.cores == 0:
        args.cores = mp.cpu_count()
    elif args.cores < 0:
        parser.error("The number of cores cannot be negative")

    if not args.h > 0:
        parser.error("The grid spacing must be positive")

    if not 0 < args.tail_level < 1:
        parser.error("The truncation level must lie in (0, 1)")

    if args.command != "classify" and not args.out:
        args.out = "_".join([DEFAULT_OUTDIR, args.command])

    if args.command == "classify":
        return Classify(args)

    if args.command == "profile":
        return ProfileRun(args)

    if args.command == "scan":
        if args.a2_min is None or args.a2_max is None or args.a2_step is None:
            parser.error("The scan needs --a2-min, --a2-max and --a2-step")
        if not args.a2_step > 0:
            parser.error("The a2 step must be positive")
        if args.a2_max < args.a2_min:
            parser.error("--a2-max cannot be smaller than --a2-min")
        return Scan(args)

    if args.command == "evolve":
        if not 0.8 <= args.lam <= 1.25:
            parser.error("The scale --lambda must lie in [0.8, 1.25]")
        if not args.eps > 0:
            parser.error("The tube radius --eps must be positive")
        if not args.t_end > 0:
            parser.error("The horizon --t-end must be positive")
        if args.dt is not None and not args.dt > 0:
            parser.error("The time step must be positive")
        if args.save_every < 1:
            parser.error("--save-every must be at least 1")
        if args.cutoff is not None and not args.cutoff > 0:
            parser.error("The cut-off radius must be positive")
        if args.gaussian and args.n == 3:
            parser.error("Time evolution is available for n = 1, 2 only")
        return Evolve(args)

    # nehari
    if args.trials < 4:
        parser.error("At least 4 trials are needed")
    return Nehari(args)

# end of build_workflow()


def run_workflow(workflow: RunConfig) -> Dict:
    if isinstance(workflow, Classify):
        return cmd_classify(workflow)

    elif isinstance(workflow, Scan):
        return cmd_instability_scan(workflow)

    elif isinstance(workflow, Evolve):
        return cmd_evolve(workflow)

    elif isinstance(workflow, Nehari):
        return cmd_nehari(workflow)

    elif isinstance(workflow, ProfileRun):
        return cmd_profile(workflow)

    else:
        raise ValueError("Unknown arguments object type")
    # end if

# end of run_workflow()


def main(cmdLineargs: Optional[List[str]] = None) -> None:

    try:
        # starting point of the execution time
        start: float = time.time()

        parser: TRIPOWArgumentParser = get_parser()

        if cmdLineargs is None:
            cmdLineargs: List[str] = sys.argv[1:]  # take input args

        # no argument given
        if len(cmdLineargs) == 0:
            parser.error_noargs()
            die(2)

        # the first argument must be a command
        if (cmdLineargs[0] not in ("-h", "--help", "--version") and
                cmdLineargs[0] not in COMMANDS):
            parser.error(
                "The first argument must be one of: " + ", ".join(COMMANDS))
            die(2)

        args: argparse.Namespace = parser.parse_args(cmdLineargs)

        if args.config:
            try:
                apply_config_file(parser, args.config)
            except ConfigFileError as e:
                parser.error(str(e).strip())
            args = parser.parse_args(cmdLineargs)
        # end if

        if args.verbose:
            print("Parsing arguments...", file=sys.stderr)
            start_args_parse: float = time.time()

        workflow: RunConfig
        try:
            workflow = build_workflow(parser, args)
        except ParameterError as e:
            parser.error(str(e).strip())

        if args.verbose:
            end_args_parse: float = time.time()
            print("Arguments parsed in %.2fs" % (end_args_parse - start_args_parse),
                  file=sys.stderr)

        try:
            # the standard output carries only the JSON report
            with contextlib.redirect_stdout(sys.stderr):
                report: Dict = run_workflow(workflow)

        except (ParameterError, ConfigFileError) as e:
            sys.stderr.write(str(e).lstrip() + "\n")
            die(2)

        except (NonExistenceError, ConditionViolationError) as e:
            sys.stderr.write(str(e).lstrip() + "\n")
            die(3)

        except NumericalAbortError as e:
            sys.stderr.write(str(e).lstrip() + "\n")
            path = dump_last_state(e, workflow.get_outdir())
            if path is not None:
                sys.stderr.write("Last finite state (t = %s) written in %s\n" % (
                    e.last_time, path
                ))
            die(4)

        except TRIPOWException as e:
            sys.stderr.write(str(e).lstrip() + "\n")
            die(4)
        # end try

        print_report(report)

        end: float = time.time()  # tripow execution finishes here

        if args.verbose:
            print("Elapsed time %.2fs" % (end - start), file=sys.stderr)

    except KeyboardInterrupt:
        sigint_handler()

    finally:
        pass
    # end try

# end of main()


########################################################################
#
# Entry point for tripow
#
########################################################################

if __name__ == "__main__":
    main()

