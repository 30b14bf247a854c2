"""Error type shared by all modules.

Every failure mode carries a stable machine-readable code (e.g.
"NON_ORIENTABLE", "NOT_A_COCYCLE") so the CLI and the tests can match on
it without parsing prose.
"""


class Error(Exception):
    """Validation or consistency failure with a stable code string."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}" if message else code)


class InconsistencyError(Error):
    """Internal cross-check failed (VERDICT_INCONSISTENT family).

    Raised when two independent computations of the same verdict disagree;
    this signals a bug, not a bad input, and maps to CLI exit code 2.
    """
