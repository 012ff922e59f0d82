"""Exception and warning types shared across the pipeline."""


class CodeclError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedLanguage(CodeclError):
    pass


class UnsupportedForLanguage(CodeclError):
    """A transform was requested for a language that lacks the construct."""


class EmptyTree(CodeclError):
    pass


class EmptyCorpus(CodeclError):
    pass


class EmptySequence(CodeclError):
    pass


class UnknownCharacter(CodeclError):
    """Input to encode() contains a character never seen at training time."""


class IdOutOfRange(CodeclError):
    pass


class SequenceTooLong(CodeclError):
    pass


class DimensionMismatch(CodeclError):
    pass


class ShapeMismatch(CodeclError):
    pass


class NonPositiveTemperature(CodeclError):
    pass


class ZeroVector(CodeclError):
    pass


class BatchTooSmall(CodeclError):
    pass


class EmptyCounts(CodeclError):
    pass


class MalformedRecord(CodeclError):
    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class DanglingPairId(CodeclError):
    pass


class FormatVersionError(CodeclError):
    """A serialized artifact declares an unsupported major format version."""


class UsageError(CodeclError):
    pass


class CollapseWarning(RuntimeWarning):
    """Batch embedding variance fell below the anti-collapse floor."""
