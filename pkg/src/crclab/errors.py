"""Exception types raised across the package."""


class CrclabError(Exception):
    """Base class for every error raised by crclab."""


class NotPrime(CrclabError, ValueError):
    pass


class DegreeTooLarge(CrclabError, ValueError):
    pass


class DivisionByZero(CrclabError, ZeroDivisionError):
    pass


class NoEmbedding(CrclabError, ValueError):
    pass


class CharMismatch(CrclabError, ValueError):
    pass


class LengthTooSmall(CrclabError, ValueError):
    pass


class EmptyMatrix(CrclabError, ValueError):
    pass


class FieldMismatch(CrclabError, ValueError):
    pass


class CapExceeded(CrclabError):
    """A computation would exceed a configured size cap."""


class SyndromeSpaceTooLarge(CapExceeded):
    pass


class DualTooLarge(CapExceeded):
    pass


class AmbientTooLarge(CapExceeded):
    pass


class GraphTooLarge(CapExceeded):
    pass


class TooLargeForGenericIso(CapExceeded):
    pass


class SlowModeRequired(CapExceeded):
    pass


class Disconnected(CrclabError, ValueError):
    pass


class BadParameters(CrclabError, ValueError):
    pass


class UnsupportedProvenance(CrclabError, ValueError):
    pass


class Mismatch(CrclabError):
    """An explicit isomorphism candidate failed verification."""

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator
