class BaseMatchstreamError(Exception):
    """
    Base class for all matchstream errors.
    """

    pass


class ValidationError(BaseMatchstreamError):
    """
    Raised when an input file or command line arg is not valid.
    """

    pass


class ParameterError(BaseMatchstreamError):
    """
    Raised when a numeric parameter lies outside of its domain.
    """

    pass


class EnumerationGuardError(ParameterError):
    """
    Raised when the number of threshold pairs to enumerate exceeds the configured cap.
    """

    pass


class StructuralError(BaseMatchstreamError):
    """
    Raised when a matching, augmentation or bipartite input is structurally invalid.
    """

    pass


class UsageError(BaseMatchstreamError):
    """
    Raised when a stateful object is used out of protocol.
    """

    pass


class InvariantViolation(BaseMatchstreamError):
    """
    Raised when a guarantee that is asserted at run time does not hold.
    """

    pass


class BudgetViolationError(BaseMatchstreamError):
    """
    Raised when a strict memory meter is charged beyond its budget.
    """

    pass


class OracleOversizeError(BaseMatchstreamError):
    """
    Raised when an exact oracle is asked to solve an instance beyond its budget.
    """

    pass
