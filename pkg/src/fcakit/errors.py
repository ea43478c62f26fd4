"""Exception types shared across the toolkit."""


class FcaError(Exception):
    """Base class for all fcakit errors."""


class CxtParseError(FcaError, ValueError):
    """A context file could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(CxtParseError):
    """The fixed header section of a CXT file is wrong."""


class DimensionMismatch(CxtParseError):
    """Row or name counts disagree with the declared dimensions."""


class BadCell(CxtParseError):
    """An incidence row contains a character other than 'X', 'x' or '.'."""


class DuplicateName(FcaError, ValueError):
    """Object or attribute names must be pairwise distinct."""


class InvalidName(FcaError, ValueError):
    """Names must be nonempty and free of line breaks."""


class IndexOutOfRange(FcaError, IndexError):
    """An object or attribute index (or index set) exceeds the context size."""


class NotALattice(FcaError, ValueError):
    """The given finite order is not a lattice (or not even a partial order)."""


class NoPendingQuestion(FcaError, RuntimeError):
    """An exploration answer was given but no question is open."""


class NotFinished(FcaError, RuntimeError):
    """Exploration results were requested before the session completed."""


class NotACounterexample(FcaError, ValueError):
    """The offered object does not refute the current question."""


class ViolatesAcceptedImplication(FcaError, ValueError):
    """The offered object contradicts an implication accepted earlier.

    The violated implication is available as ``.implication``.
    """

    def __init__(self, message, implication):
        self.implication = implication
        super().__init__(message)


class UnknownContext(FcaError, KeyError):
    """No context stored under that name."""


class UnknownSession(FcaError, KeyError):
    """No exploration session stored under that id."""
