"""Exception hierarchy shared across the package.

Two families matter for callers: ``InputError`` covers malformed user data
(bad polynomial text, inconsistent chart dimensions, unreadable scene files),
``ComputationError`` covers runs that were set up correctly but could not be
completed at the configured working precision or degree bounds.
"""


class LincontactError(Exception):
    """Base class for all package errors."""


class InputError(LincontactError):
    """User-supplied data is malformed or inconsistent."""


class PolyParseError(InputError):
    """Polynomial text could not be parsed against the declared variables."""


class ChartError(InputError):
    """A local chart violates one of its structural requirements.

    ``code`` is a stable machine-readable tag, e.g. ``NON-VANISHING`` or
    ``NON-TRANSVERSE-BASE``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class ComputationError(LincontactError):
    """A computation could not be certified within its configured bounds."""


class TruncationInsufficient(ComputationError):
    """Some combination of system members vanishes through the working degree.

    Either the truncation degree is too small, or the system is degenerate
    (a nonzero combination vanishes identically on the chart).
    """

    def __init__(self, truncation: int, deficient: int):
        super().__init__(
            f"{deficient} independent combination(s) vanish through total "
            f"degree {truncation}; increase the truncation or check the "
            f"system for degeneracy"
        )
        self.truncation = truncation
        self.deficient = deficient


class NotFiniteLength(ComputationError):
    """Quotient dimension did not stabilize below the degree bound."""

    def __init__(self, max_degree: int, history: tuple, diagnosis: str):
        super().__init__(
            f"quotient dimension did not stabilize by degree {max_degree} "
            f"(history {list(history)}): {diagnosis}"
        )
        self.max_degree = max_degree
        self.history = history
        self.diagnosis = diagnosis
