"""Exception hierarchy.

Every error carries a short ``category`` string that the command line
driver prints as the machine-parseable error class.
"""

import numpy as np


class ASBSRError(Exception):
    category = "error"


class InvalidArgument(ASBSRError, ValueError):
    category = "invalid-argument"


class SingularSystemError(ASBSRError, np.linalg.LinAlgError):
    """The sub-transform matrix for the given positions is not invertible."""

    category = "singular-system"

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class InfeasibleError(ASBSRError, ValueError):
    category = "infeasible"


class ParseError(ASBSRError, ValueError):
    """Malformed image file; ``offset`` is the byte position of the problem."""

    category = "parse-error"

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedFormatError(ASBSRError, ValueError):
    category = "unsupported-format"
