"""Exception types shared across the package."""


class FqRankError(Exception):
    """Base class for all fqrank errors."""


class NotPrimePower(FqRankError):
    """Field size q is not a prime power."""


class TooLarge(FqRankError):
    """Field size q exceeds the table-building cap."""


class DimensionMismatch(FqRankError):
    """Vector/matrix dimensions are incompatible."""


class EvenCharacteristic(FqRankError):
    """Alternating-model operation requested over a field of even q."""


class EmptySupport(FqRankError):
    """Entry distribution has no support."""


class InvalidSpec(FqRankError):
    """Model specification is internally inconsistent."""


class CodimensionTooLarge(FqRankError):
    """Subspace codimension exceeds the exact state-space guard."""


class TooLargeToEnumerate(FqRankError):
    """Requested exhaustive enumeration exceeds the size guard."""


class CapExceeded(FqRankError):
    """Chain state would escape the configured corank cap."""
