"""Exception taxonomy shared by all modules."""


class VrlatError(Exception):
    """Base class for all library errors."""


class ConfigError(VrlatError):
    """Mixed value groups or mismatched ring backends."""


class DomainError(VrlatError):
    """An operation's mathematical precondition is violated."""


class IndeterminateValuation(VrlatError):
    """The answer is not determined at the current working precision.

    Callers should retry with a higher precision cap rather than guess.
    """


class NoSolution(VrlatError):
    """A solvability test failed (e.g. Artin-Schreier residue obstruction)."""


class SplitError(VrlatError):
    """A sublattice does not split off (Cramer divisibility fails)."""


class NotApproximatelyIsometric(VrlatError):
    """The given map does not preserve the form to the required depth."""


class UnsupportedRegime(VrlatError):
    """Parameters fall in a regime the classification does not cover."""
