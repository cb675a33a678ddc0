class InvalidWitness(ValueError):
    """A supplied witness does not satisfy its defining identity."""


class PDependent(ValueError):
    """Slots required to be p-independent are not; carries the dependence witness."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class SearchCapExceeded(RuntimeError):
    pass


class ProviderFailure(RuntimeError):
    """A witness provider could not produce a witness for some induction level."""

    def __init__(self, message, level=None, alpha=None):
        super().__init__(message)
        self.level = level
        self.alpha = alpha
