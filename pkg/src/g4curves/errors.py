"""Exception types raised by the kernel."""

from __future__ import annotations


class G4Error(Exception):
    """Base class for all errors raised by g4curves."""


class DomainError(G4Error, ValueError):
    """An elementary function was evaluated outside its domain.

    ``where`` is filled in by the expression evaluator with the byte offset of
    the offending call, when known.
    """

    def __init__(self, func: str, value: float, where: int | None = None):
        self.func = func
        self.value = value
        self.where = where
        super().__init__(self._message())

    def _message(self) -> str:
        msg = f"{self.func}: argument {self.value!r} outside domain"
        if self.where is not None:
            msg += f" (at offset {self.where})"
        return msg

    def at(self, where: int) -> "DomainError":
        if self.where is None:
            self.where = where
            self.args = (self._message(),)
        return self


class ParseError(G4Error, ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class CurveFormatError(G4Error, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InvalidMotionError(G4Error, ValueError):
    pass


class DegenerateFrameError(G4Error):
    """Raised where an operation needs a full frame but the curve degenerates."""

    def __init__(self, s: float, reason: str):
        self.s = s
        self.reason = reason
        super().__init__(f"degenerate frame at s={s!r}: {reason}")
