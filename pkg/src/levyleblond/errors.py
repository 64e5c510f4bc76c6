"""Exception types raised by the library."""


class LevyLeblondError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(LevyLeblondError, ValueError):
    pass


class SingularMatrixError(LevyLeblondError, ValueError):
    pass


class EvanescentModeError(LevyLeblondError, ValueError):
    """Requested propagating modes below the potential."""


class BranchOverlapError(LevyLeblondError, ValueError):
    """Finite and divergent eigenvalue branches cannot be separated."""


class NotBoundStateError(LevyLeblondError, ValueError):
    pass


class SupercriticalCouplingError(LevyLeblondError, ValueError):
    pass


class DegenerateRecursionError(LevyLeblondError, ArithmeticError):
    pass


class InconsistentEnergyError(LevyLeblondError, ArithmeticError):
    pass


class RootNotBracketedError(LevyLeblondError, ArithmeticError):
    pass


class WrongStateError(LevyLeblondError, ArithmeticError):
    """Shooting converged onto a state with the wrong node count."""


class GridInadequateError(LevyLeblondError, ValueError):
    pass
