"""Exception types shared across the package.

Plain ValueError is raised for malformed inputs (zero wave vector, a point
outside the box, a sigma that is not a half-integer, ...). The subclasses below
mark failure modes that callers are expected to distinguish programmatically.
"""


class ResolutionError(ValueError):
    """Grid too coarse for the requested mode or operator."""


class IncompleteBasisError(ValueError):
    """A spectral sum would silently drop coupled states outside the cutoff."""


class MissingBindingError(LookupError):
    """A formal phase symbol was evaluated without a numeric binding."""


class CoherenceError(ValueError):
    """Two expansions do not share chain-rule-correlated phases."""


class ContradictionError(ValueError):
    """A phase constraint system admits no solution."""


class SizeLimitError(ValueError):
    """Requested object grows factorially past the supported size."""
