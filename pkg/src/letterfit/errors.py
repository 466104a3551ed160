"""Exception types raised by letterfit."""


class LetterFitError(Exception):
    """Base class for all letterfit errors."""


class EmptyDocument(LetterFitError):
    pass


class EmptyCounts(LetterFitError):
    pass


class ProfileMismatch(LetterFitError):
    pass


class SpaceNotTracked(LetterFitError):
    pass


class DomainError(LetterFitError, ValueError):
    """A model was evaluated outside the region where it is defined."""


class InsufficientData(LetterFitError):
    pass


class SingularJacobian(LetterFitError):
    """The Jacobian lost rank; ``params`` holds the last stable parameters."""

    def __init__(self, message, params=None):
        super().__init__(message)
        self.params = params


class LengthMismatch(LetterFitError, ValueError):
    pass


class TooFewRanks(LetterFitError):
    pass


class ManifestError(LetterFitError):
    pass
