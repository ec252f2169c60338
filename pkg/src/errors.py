"""Exception hierarchy"""

from pathlib import Path
from typing import Optional, Union


class FixglueError(Exception):
    """Base class for all library errors"""


class DegreeMismatchError(FixglueError, ValueError):
    """Operands act on different numbers of points or coordinates"""


class NotAnInvolutionError(FixglueError, ValueError):
    """A permutation expected to be a fixed-point-free involution is not"""


class NotCommutingError(FixglueError, ValueError):
    """Permutations expected to commute do not"""


class NotASubgroupError(FixglueError, ValueError):
    """A generator of the would-be subgroup is not in the supergroup"""


class EnumerationBoundError(FixglueError):
    """An enumeration would exceed its configured bound"""


class SearchBudgetExceeded(FixglueError):
    """A backtrack search ran past its leaf budget"""


class EmptyCodeError(FixglueError, ValueError):
    """Operation undefined on the zero code"""


class CodeFormatError(FixglueError, ValueError):
    """Malformed record in a code database file"""

    def __init__(self, message: str, path: Optional[Union[str, Path]] = None, line: Optional[int] = None):
        self.path = str(path) if path is not None else None
        self.line = line
        where = ""
        if self.path is not None:
            where = f"{self.path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(f"{where}{message}")
