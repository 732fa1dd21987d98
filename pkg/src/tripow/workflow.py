"""Workflow classes definition.

tripow provides five commands:
* classify: existence verdict for a coefficient triple
* profile: construction of the zero-frequency profile
* scan: sign of the instability criterion over a range of a2
* evolve: split-step evolution and instability experiment
* nehari: upper bound of the ground-state level from projected trials

For each command a class is created, which carries all the arguments
needed while executing it. Every class serializes its arguments with
to_dict(), the configuration echoed in the JSON outputs.
"""

from tripow.model import Params
from typing import Dict, List, Optional
from argparse import Namespace
import numpy as np


class RunConfig(object):
    """
    Base class of the command objects: coefficients, dimension and the
    options shared by every command.

    ...

    Attributes
    ----------
    _command : str
        command name
    _params : Params
        coefficients and dimension
    _outdir : str
        output directory
    _cores : int
        number of worker processes
    _seed : int
        seed of the random generators
    _verbose : bool
        if True will be printed information about the execution
    _config : str
        configuration file given with --config ('' when none)

    Methods
    -------
    get_command()
        return the command name
    get_params()
        return the coefficients
    get_n()
        return the dimension
    get_outdir()
        return the output directory
    get_cores()
        return the number of worker processes
    get_seed()
        return the seed
    get_verbose()
        return the verbose flag
    to_dict()
        serializable echo of the configuration
    """

    #-------------------------------------------------------------------
    # RunConfig attributes
    #-------------------------------------------------------------------
    _command: str
    _params: Params
    _outdir: str
    _cores: int
    _seed: int
    _verbose: bool
    _config: str


    #-------------------------------------------------------------------
    # RunConfig methods
    #-------------------------------------------------------------------
    def __init__(self, command: str, args: Namespace):
        errmsg: str = "\n\nERROR: incorrect command line arguments object type"
        if not isinstance(args, Namespace):
            raise ValueError(errmsg)

        for name in ("a1", "a2", "a3"):
            if not isinstance(getattr(args, name), float):
                raise ValueError(errmsg)

        if not isinstance(args.n, int):
            raise ValueError(errmsg)

        if not isinstance(args.out, str):
            raise ValueError(errmsg)

        if not isinstance(args.cores, int):
            raise ValueError(errmsg)

        if not isinstance(args.seed, int):
            raise ValueError(errmsg)

        if not isinstance(args.verbose, bool):
            raise ValueError(errmsg)

        self._command = command
        self._params = Params(args.a1, args.a2, args.a3, args.n)
        self._outdir = args.out
        self._cores = args.cores
        self._seed = args.seed
        self._verbose = args.verbose
        self._config = args.config if args.config else ''


    def get_command(self) -> str:
        return self._command


    def get_params(self) -> Params:
        return self._params


    def get_n(self) -> int:
        return self._params.n


    def get_outdir(self) -> str:
        if self._outdir:
            return self._outdir
        else:
            raise ValueError("Unknown output directory")


    def has_outdir(self) -> bool:
        return bool(self._outdir)


    def get_cores(self) -> int:
        if self._cores:
            return self._cores
        else:
            raise ValueError("Unknown number of cores to use")


    def get_seed(self) -> int:
        return self._seed


    def get_verbose(self) -> bool:
        return self._verbose


    def to_dict(self) -> Dict:
        return {
            "command": self._command,
            "a1": self._params.a1,
            "a2": self._params.a2,
            "a3": self._params.a3,
            "n": self._params.n,
            "seed": self._seed,
            "cores": self._cores,
            "out": self._outdir,
            "config": self._config,
        }

# end of RunConfig


class Classify(RunConfig):
    """
    This class represents the classify command: existence verdict,
    root analysis, radial conditions and the uniqueness check.
    """

    def __init__(self, args: Namespace):
        super().__init__("classify", args)

# end of Classify


class ProfileRun(RunConfig):
    """
    This class represents the profile command.

    ...

    Attributes
    ----------
    _h : float
        grid spacing
    _tail_level : float
        relative truncation level of the profile
    """

    #-------------------------------------------------------------------
    # ProfileRun attributes
    #-------------------------------------------------------------------
    _h: float
    _tail_level: float


    #-------------------------------------------------------------------
    # ProfileRun methods
    #-------------------------------------------------------------------
    def __init__(self, args: Namespace, command: str = "profile"):
        super().__init__(command, args)
        errmsg: str = "\n\nERROR: incorrect command line arguments object type"
        if not isinstance(args.h, float):
            raise ValueError(errmsg)

        if not isinstance(args.tail_level, float):
            raise ValueError(errmsg)

        self._h = args.h
        self._tail_level = args.tail_level


    def get_h(self) -> float:
        return self._h


    def get_tail_level(self) -> float:
        return self._tail_level


    def solver_options(self) -> Dict:
        return {"h": self._h, "tail_level": self._tail_level}


    def to_dict(self) -> Dict:
        config: Dict = super().to_dict()
        config.update({"h": self._h, "tail_level": self._tail_level})
        return config

# end of ProfileRun


class Scan(ProfileRun):
    """
    This class represents the scan command: a2 runs over
    a2_min, a2_min + a2_step, ..., up to a2_max.

    ...

    Attributes
    ----------
    _a2_min : float
        first a2
    _a2_max : float
        last a2
    _a2_step : float
        a2 increment
    """

    #-------------------------------------------------------------------
    # Scan attributes
    #-------------------------------------------------------------------
    _a2_min: float
    _a2_max: float
    _a2_step: float


    #-------------------------------------------------------------------
    # Scan methods
    #-------------------------------------------------------------------
    def __init__(self, args: Namespace):
        super().__init__(args, "scan")
        errmsg: str = "\n\nERROR: incorrect command line arguments object type"
        for name in ("a2_min", "a2_max", "a2_step"):
            if not isinstance(getattr(args, name), float):
                raise ValueError(errmsg)

        self._a2_min = args.a2_min
        self._a2_max = args.a2_max
        self._a2_step = args.a2_step


    def get_a2_values(self) -> List[float]:
        count: int = int(np.floor((self._a2_max - self._a2_min) / self._a2_step + 1e-9)) + 1
        return [round(self._a2_min + i * self._a2_step, 12) for i in range(count)]


    def to_dict(self) -> Dict:
        config: Dict = super().to_dict()
        config.update({
            "a2_min": self._a2_min,
            "a2_max": self._a2_max,
            "a2_step": self._a2_step,
        })
        return config

# end of Scan


class Evolve(ProfileRun):
    """
    This class represents the evolve command.

    ...

    Attributes
    ----------
    _lam : float
        scale of the initial data
    _eps : float
        tube radius relative to the H1 norm of the profile
    _gaussian : bool
        evolve the Gaussian e^(-|x|^2) instead of the cut-off profile
    _t_end : float
        horizon
    _dt : float, optional
        time step (per-dimension default when None)
    _points : int, optional
        points per axis
    _box : float, optional
        box half-length
    _save_every : int
        steps between saved diagnostics
    _cutoff : float, optional
        cut-off radius R (0.45 box when None)
    """

    #-------------------------------------------------------------------
    # Evolve attributes
    #-------------------------------------------------------------------
    _lam: float
    _eps: float
    _gaussian: bool
    _t_end: float
    _dt: Optional[float]
    _points: Optional[int]
    _box: Optional[float]
    _save_every: int
    _cutoff: Optional[float]


    #-------------------------------------------------------------------
    # Evolve methods
    #-------------------------------------------------------------------
    def __init__(self, args: Namespace):
        super().__init__(args, "evolve")
        errmsg: str = "\n\nERROR: incorrect command line arguments object type"
        if not isinstance(args.lam, float) or not isinstance(args.eps, float):
            raise ValueError(errmsg)

        if not isinstance(args.gaussian, bool):
            raise ValueError(errmsg)

        if not isinstance(args.t_end, float) or not isinstance(args.save_every, int):
            raise ValueError(errmsg)

        self._lam = args.lam
        self._eps = args.eps
        self._gaussian = args.gaussian
        self._t_end = args.t_end
        self._dt = args.dt
        self._points = args.points
        self._box = args.box
        self._save_every = args.save_every
        self._cutoff = args.cutoff


    def get_lambda(self) -> float:
        return self._lam


    def get_eps(self) -> float:
        return self._eps


    def get_gaussian(self) -> bool:
        return self._gaussian


    def get_t_end(self) -> float:
        return self._t_end


    def get_dt(self) -> Optional[float]:
        return self._dt


    def get_points(self) -> Optional[int]:
        return self._points


    def get_box(self) -> Optional[float]:
        return self._box


    def get_save_every(self) -> int:
        return self._save_every


    def get_cutoff(self) -> Optional[float]:
        return self._cutoff


    def to_dict(self) -> Dict:
        config: Dict = super().to_dict()
        config.update({
            "lambda": self._lam,
            "eps": self._eps,
            "gaussian": self._gaussian,
            "t_end": self._t_end,
            "dt": self._dt,
            "points": self._points,
            "box": self._box,
            "save_every": self._save_every,
            "cutoff": self._cutoff,
        })
        return config

# end of Evolve


class Nehari(ProfileRun):
    """
    This class represents the nehari command.

    ...

    Attributes
    ----------
    _trials : int
        number of projected trials
    """

    _trials: int

    def __init__(self, args: Namespace):
        super().__init__(args, "nehari")
        if not isinstance(args.trials, int):
            raise ValueError("\n\nERROR: incorrect command line arguments object type")

        self._trials = args.trials


    def get_trials(self) -> int:
        return self._trials


    def to_dict(self) -> Dict:
        config: Dict = super().to_dict()
        config["trials"] = self._trials
        return config

# end of Nehari

