"""Exception hierarchy. Every precondition failure is a DomainError subclass
so front ends can map them to a single exit status."""


class DomainError(ValueError):
    """Input outside the domain where a formula is defined."""


class RegimeError(DomainError):
    """Non-oscillatory regime (gamma^2 A^2 >= 1 or its coherent analogue)."""


class BoundStateError(DomainError):
    """Requested level does not exist as a bound state."""


class NormalizabilityError(DomainError):
    """Coherent-state shape parameter lambda_cs <= 0."""


class GridError(ValueError):
    """Grid too coarse, mismatched or otherwise unusable."""
