"""
Exception types raised by the computation services
"""


class ZakspaceError(ValueError):
    """Base class for every validation failure"""


class InvalidDimensionError(ZakspaceError):
    pass


class NotCoprimeError(ZakspaceError):
    """The two factors of a bipartition share a prime"""


class IndexRangeError(ZakspaceError):
    pass


class DimensionMismatchError(ZakspaceError):
    pass


class BasisMismatchError(ZakspaceError):
    """Amplitudes expressed in different bases were combined"""


class ZeroVectorError(ZakspaceError):
    pass


class LocalizationPreconditionError(ZakspaceError):
    """Uniform state does not live on the smaller member of the pair"""


class NormalizationError(ZakspaceError):
    """A state flagged normalized does not have unit norm"""
