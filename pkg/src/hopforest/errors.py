"""Exception taxonomy shared by every module and mapped to CLI exit codes."""


class HopfError(Exception):
    """Base class for all library errors."""


class InvalidInput(HopfError, ValueError):
    """The caller supplied an object that violates a precondition."""


class NotAPartialOrder(InvalidInput):
    pass


class NoUniqueBottom(InvalidInput):
    pass


class NoUniqueTop(InvalidInput):
    pass


class NotComparable(InvalidInput):
    pass


class NotALattice(InvalidInput):
    pass


class ChainNotInInterval(InvalidInput):
    pass


class NotAForest(InvalidInput):
    pass


class InputDecomposable(InvalidInput):
    pass


class SizeLimit(InvalidInput):
    pass


class InvariantViolation(HopfError, AssertionError):
    """Two routes that must agree did not; always a bug, never bad input."""


class EngineMismatch(InvariantViolation):
    pass
