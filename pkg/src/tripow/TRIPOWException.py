"""Custom Exception redefinition for tripow.

The base class TRIPOWException, which inherits from Exception, is
then extended with custom exceptions fitting the errors which can
occur while classifying coefficients, constructing profiles,
evaluating functionals or integrating the flow.

"""

from typing import List, Optional

import numpy as np


class TRIPOWException(Exception):
    """Class to represent an exception which can occur while running
    tripow.

    It is the base for the other more specific tripow exceptions.
    """

    pass


class ParameterError(TRIPOWException):
    """Raise when coefficients, dimensions or numerical options are not
    valid (e.g. n outside {1,2,3}, negative amplitudes, unnormalized
    coefficients where the normalization is required)
    """

    pass


class ConfigFileError(TRIPOWException):
    """Raise when the key = value configuration file cannot be read or
    contains unknown keys
    """

    pass


class NonExistenceError(TRIPOWException):
    """Raise when a profile is requested for coefficients admitting no
    positive zero-frequency profile
    """

    pass


class ConditionViolationError(TRIPOWException):
    """Raise when the radial existence conditions are not satisfied.

    The indices (1-5) of the failed conditions are stored in the
    failed attribute.
    """

    def __init__(self, msg: str, failed: Optional[List[int]] = None):
        super().__init__(msg)
        self.failed = [] if failed is None else list(failed)


class BracketError(TRIPOWException):
    """Raise when the shooting bracket (undershoot, overshoot) cannot be
    found
    """

    pass


class StagnationError(TRIPOWException):
    """Raise when the shooting bisection stops improving before reaching
    the requested tolerance
    """

    pass


class QuadratureError(TRIPOWException):
    """Raise when the first-integral quadrature does not meet its
    tolerance or the integrand loses positivity
    """

    pass


class ProfileError(TRIPOWException):
    """Raise when a constructed profile fails positivity, monotonicity or
    residual acceptance
    """

    pass


class ResidualError(TRIPOWException):
    """Raise when the constraint residuals of a profile are too large to
    trust the instability criterion
    """

    pass


class TailDataError(TRIPOWException):
    """Raise when the tail window does not contain enough positive nodes
    to fit the algebraic decay
    """

    pass


class LambdaRangeError(TRIPOWException):
    """Raise when the Newton iteration for the scaling map leaves the
    admissible interval around 1
    """

    pass


class GridMismatchError(TRIPOWException):
    """Raise when two fields living on different grids are combined
    """

    pass


class InsufficientSamplesError(TRIPOWException):
    """Raise when a time series is too short for the requested
    finite-difference diagnostic
    """

    pass


class NumericalAbortError(TRIPOWException):
    """Raise when the time integration produces non-finite values.

    The last finite state, its time and the periodic grid it lives on are
    stored in the last_state, last_time and grid attributes, to be dumped
    before exiting.
    """

    def __init__(
        self,
        msg: str,
        last_state: Optional[np.ndarray] = None,
        last_time: Optional[float] = None,
        grid=None
    ):
        super().__init__(msg)
        self.last_state = last_state
        self.last_time = last_time
        self.grid = grid

