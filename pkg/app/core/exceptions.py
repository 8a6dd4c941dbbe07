class PreconditionError(ValueError):
    """An operation was called outside of the parameter range it is defined on."""


class LimitExceededError(ValueError):
    """A configured size cap (character table, brute force, full scan) was exceeded."""


class ArtifactFormatError(ValueError):
    """A certificate, LP text or permutation file could not be parsed."""
