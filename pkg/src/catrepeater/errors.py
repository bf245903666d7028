"""Exception types shared across the package."""


class DegenerateInputError(ValueError):
    """Raised when a normalization constant vanishes, e.g. the odd cat at zero amplitude."""


class UndefinedFidelityError(ValueError):
    """Raised when a fidelity is requested for an event of zero probability."""


class TailBoundError(ValueError):
    """Raised when a Fock cutoff discards more probability mass than the tolerance allows."""
