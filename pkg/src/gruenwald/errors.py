"""Exception hierarchy shared by all gruenwald modules."""


class GruenwaldError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GruenwaldError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ZeroFindingError(GruenwaldError):
    """A root search failed to converge or to verify its residual."""


class MissingSampleError(GruenwaldError, KeyError):
    """A node inside the truncation window has no sample value."""

    def __str__(self) -> str:
        # KeyError would repr() the message; report it verbatim instead.
        return Exception.__str__(self)


class TypeEstimateError(GruenwaldError):
    """Fewer than three usable ladder points survived for a type estimate."""


class WitnessNotFoundError(GruenwaldError):
    """A probe scan found no point satisfying the requested inequality.

    The message reports the largest observed excess so callers can see how
    far the scan stayed below the certification floor.
    """


class HypothesisError(GruenwaldError):
    """A verifiable hypothesis of a convergence statement failed on the grid."""


class UsageError(GruenwaldError):
    """Invalid command-line arguments or experiment configuration."""
