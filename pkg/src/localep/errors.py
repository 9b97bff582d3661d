class LocalepError(Exception):
    pass


class MalformedInput(LocalepError, ValueError):
    pass


class UnsupportedPattern(LocalepError, ValueError):
    """Pattern graph has no edges or has isolated vertices."""


class BudgetExceeded(LocalepError):
    """A search or step counter passed its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} budget of {cap} exceeded")
        self.what = what
        self.cap = cap


class InvariantError(LocalepError, AssertionError):
    """An invariant that the construction guarantees was found broken."""


class NoDangerousPath(LocalepError):
    pass


class WrongBranch(LocalepError):
    pass
