"""Exception hierarchy shared across the package."""


class HypminError(Exception):
    """Base class for all package errors."""


class ContractError(HypminError, ValueError):
    """An input violates the documented precondition of an operation."""


class ResourceLimitError(HypminError, RuntimeError):
    """An enumeration or iteration cap was exceeded."""


class UnstableInputError(ContractError):
    """Minimization did not terminate within its guard; the input is likely unstable."""


class NeedsManualPrimesError(ContractError):
    """Automatic prime detection is impossible for this input."""
