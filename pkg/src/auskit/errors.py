"""Shared exception types."""


class AuskitError(Exception):
    pass


class ParseError(AuskitError):
    """Malformed algebra file or module expression."""


class BadRelation(AuskitError):
    """Relation whose terms are not parallel paths, or with an unknown arrow."""


class NotFiniteDimensional(AuskitError):
    """Path-length cap hit before the quotient algebra stabilized."""


class CapExceeded(AuskitError):
    """A configured enumeration cap was exceeded."""


class VerificationFailure(AuskitError):
    """An internal certificate did not hold; results must not be trusted."""
