"""Exception hierarchy shared by all swiim modules."""

from __future__ import annotations


class SwiimError(Exception):
    """Base class for every error raised by this package."""


# --- image operations ---------------------------------------------------


class ParamOutOfRange(SwiimError):
    pass


class OutOfBounds(SwiimError):
    pass


class InvalidAngle(SwiimError):
    pass


# --- journal ------------------------------------------------------------


class JournalError(SwiimError):
    """Base for journal parse/serialize/append failures.

    ``line`` is 1-based and set whenever the error was detected while
    reading text; it stays None for programmatic (append-time) failures.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class JournalSyntaxError(JournalError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}", line)
        self.column = column


class SchemaError(JournalError):
    def __init__(self, message: str, seq: int | None = None,
                 op: str | None = None, key: str | None = None,
                 line: int | None = None):
        super().__init__(message, line)
        self.seq = seq
        self.op = op
        self.key = key


class SequenceError(JournalError):
    pass


class DuplicateImport(JournalError):
    pass


class InvariantViolation(JournalError):
    pass


# --- session ------------------------------------------------------------


class NothingToUndo(SwiimError):
    pass


class NothingToRedo(SwiimError):
    pass


# --- replay -------------------------------------------------------------


class ReplayError(SwiimError):
    pass


class SourceMismatch(ReplayError):
    pass


class IndexOutOfRange(ReplayError):
    pass


class MissingAsset(ReplayError):
    pass


class EntryExecutionError(ReplayError):
    """An op raised while re-executing journal entry ``seq``."""

    def __init__(self, seq: int, op: str, cause: Exception):
        super().__init__(f"entry {seq} ({op}): {cause}")
        self.seq = seq
        self.op = op
        self.cause = cause


# --- codecs -------------------------------------------------------------


class CodecError(SwiimError):
    pass


class UnsupportedFormat(CodecError):
    pass


class CorruptFile(CodecError):
    pass


class FormatMismatch(CodecError):
    pass


class EncodeError(CodecError):
    pass
