"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should
raise the most specific type that applies.
"""


class MatrixFormatError(ValueError):
    """Input file or payload could not be parsed as a matrix."""


class ValidationError(ValueError):
    """Input parsed fine but violates a documented precondition."""


class NumericalContractError(RuntimeError):
    """A computed quantity failed its post-hoc accuracy check."""


class ConstructionError(RuntimeError):
    """A randomized construction failed after exhausting its retries."""
