"""Exception hierarchy shared by every module in the package."""


class DescentLabError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolationError(DescentLabError, ValueError):
    """An argument failed a documented precondition."""


class ResourceLimitError(DescentLabError):
    """A computation was refused because it exceeds a documented size limit.

    Raised before significant work starts, so callers can fall back or
    shrink the request.  The CLI maps this to exit code 3.
    """


class CacheError(DescentLabError):
    """An on-disk table cache file is malformed or inconsistent."""
