"""Exception types raised across the package."""


class InputError(ValueError):
    """Arguments violate a documented precondition."""


class ConsistencyError(RuntimeError):
    """An internal identity that must hold exactly did not.

    Seeing one of these means a convention or implementation bug, never bad
    user input.
    """
