class CircleError(Exception):
    """Base error; ``exit_code`` is what the command line returns for it."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ZeroNorm(CircleError, ValueError):
    exit_code = 2


class BadRange(CircleError, ValueError):
    exit_code = 2


class DomainError(CircleError, ValueError):
    exit_code = 2


class TruncationError(CircleError):
    exit_code = 2


class ConsistencyError(CircleError):
    """An identity that must hold by construction failed (a convention bug, not bad input)."""

    exit_code = 3

    def __init__(self, identity: str, detail: str):
        super().__init__(f"{identity}: {detail}")
        self.identity = identity


class TruncationWarning(UserWarning):
    pass
