"""Error hierarchy shared by every star-forge package.

All errors derive from ``StarForgeError`` which is itself a ``ValueError``:
every failure in this library is a bad-input or failed-identity condition,
never an I/O problem.
"""


class StarForgeError(ValueError):
    """Base class of every star-forge error."""


class ProfileMismatch(StarForgeError):
    """Two operands were built under different truncation profiles."""


class NonInvertible(StarForgeError):
    """A series (or matrix) has a non-invertible constant part."""


class ZeroElement(StarForgeError):
    """An operation undefined on zero (filtration degree) received zero."""


class NonDivisible(StarForgeError):
    """An exact division by hbar was requested on a non-divisible element."""


class GrammarError(StarForgeError):
    """Text in the coefficient grammar failed to parse."""


class ArityMismatch(StarForgeError):
    """Argument count does not match the cochain arity."""


class ArityOverflow(StarForgeError):
    """Reserved: polyvector arity above the dimension (zero is returned)."""


class NotAntisymmetric(StarForgeError):
    """A matrix that must be antisymmetric is not."""


class NotClosed(StarForgeError):
    """A differential form that must be closed is not."""


class NotFormal(StarForgeError):
    """A formal series that must vanish at hbar^0 does not."""


class DegeneratePi1(StarForgeError):
    """The leading (hbar^1) Poisson term is not invertible."""


class DegenerateOmega(StarForgeError):
    """The symplectic matrix has a non-invertible constant part."""


class FiltrationViolation(StarForgeError):
    """An element lies below the required filtration level."""


class NonTermination(StarForgeError):
    """A filtered series failed to raise its filtration degree."""


class NoConvergence(StarForgeError):
    """A fixed-point recursion exceeded its iteration bound."""


class ZerothOrderViolation(StarForgeError):
    """An ODE right-hand side has an hbar^0 part."""


class NonConstantZerothOrder(StarForgeError):
    """An hbar^0 part that must be a scalar constant is not."""


class NonInvertibleInitialCondition(StarForgeError):
    """An ODE initial condition has no inverse."""


class NonConstantCocycle(StarForgeError):
    """Transition data is not a constant scalar cocycle."""


class IncompatibleConnection(StarForgeError):
    """A connection violates torsion-freeness or compatibility with pi."""


class NotDeltaFlat(StarForgeError):
    """A fiber cochain has coefficients depending on the fiber variables."""


class CheckFailed(StarForgeError):
    """A verification residual was nonzero."""
