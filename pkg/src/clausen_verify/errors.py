"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class PreconditionError(ValueError):
    """Parameters violate the hypotheses a formula or class relies on."""


class NonConvergenceError(ArithmeticError):
    """A series cannot be summed to the requested accuracy."""


class DivergenceError(NonConvergenceError):
    """The series is provably divergent at the requested point."""


class IterationCapError(NonConvergenceError):
    """Summation would need more terms than the hard cap allows."""


class SingularityError(ZeroDivisionError):
    """A sampled functional has a (numerically) vanishing denominator."""
