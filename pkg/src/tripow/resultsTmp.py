"""Definition of ScanResultTmp class.

The class is used to store intermediate results of the a2 scan: one
instance is filled by each worker process and the instances are then
merged in a single table.
"""

from typing import List, Optional
import numpy as np


class ScanResultTmp(object):
    """
    This class stores the rows computed by one scan worker.

    ...

    Attributes
    ----------
    _a2s : list
        scanned a2 values
    _cases : list
        sign pattern of each row
    _statuses : list
        'ok', 'nonexistent' or 'failed: <error>'
    _d2S : list
        analytic second derivative of S along the scaling (nan when skipped)
    _d2S_fd : list
        finite-difference second derivative (nan when skipped)
    _peaks : list
        profile peak (nan when skipped)

    Methods
    -------
    append(a2, case, status, d2S, d2S_fd, peak)
        add one row
    get_a2s()
        return the scanned a2 values
    get_cases()
        return the sign patterns
    get_statuses()
        return the row statuses
    get_d2S()
        return the analytic values
    get_d2S_fd()
        return the finite-difference values
    get_peaks()
        return the peaks
    """

    #-------------------------------------------------------------------
    # ScanResultTmp attributes
    #-------------------------------------------------------------------
    _a2s: List[float]
    _cases: List[str]
    _statuses: List[str]
    _d2S: List[float]
    _d2S_fd: List[float]
    _peaks: List[float]


    #-------------------------------------------------------------------
    # ScanResultTmp methods
    #-------------------------------------------------------------------
    def __init__(self):
        self._a2s = list()
        self._cases = list()
        self._statuses = list()
        self._d2S = list()
        self._d2S_fd = list()
        self._peaks = list()


    def append(
        self,
        a2: float,
        case: str,
        status: str,
        d2S: Optional[float] = None,
        d2S_fd: Optional[float] = None,
        peak: Optional[float] = None
    ) -> None:
        assert isinstance(status, str)
        assert status == "ok" or (d2S is None and d2S_fd is None)

        self._a2s.append(float(a2))
        self._cases.append(case)
        self._statuses.append(status)
        self._d2S.append(np.nan if d2S is None else float(d2S))
        self._d2S_fd.append(np.nan if d2S_fd is None else float(d2S_fd))
        self._peaks.append(np.nan if peak is None else float(peak))


    def get_a2s(self) -> List[float]:
        return self._a2s


    def get_cases(self) -> List[str]:
        return self._cases


    def get_statuses(self) -> List[str]:
        return self._statuses


    def get_d2S(self) -> List[float]:
        return self._d2S


    def get_d2S_fd(self) -> List[float]:
        return self._d2S_fd


    def get_peaks(self) -> List[float]:
        return self._peaks


    def __len__(self) -> int:
        return len(self._a2s)

# end of ScanResultTmp

