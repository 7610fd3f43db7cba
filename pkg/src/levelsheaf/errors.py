"""Exception types.  The CLI maps each one to a fixed exit code."""


class MalformedInput(ValueError):
    """A JSON document does not have the expected shape."""


class PreconditionError(ValueError):
    """Arguments are well formed but violate an operation's precondition."""


class OracleBudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured enumeration cap."""
