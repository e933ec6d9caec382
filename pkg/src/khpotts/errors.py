"""Exception types raised across the package."""


class KhPottsError(Exception):
    """Base class for all computation errors."""


class MalformedParity(KhPottsError):
    pass


class PoleAtZero(KhPottsError, ZeroDivisionError):
    pass


class MalformedDiagram(KhPottsError, ValueError):
    pass


class PDSyntaxError(KhPottsError, SyntaxError):
    """Unparseable PD text; ``position`` is the character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ArityError(KhPottsError, ValueError):
    pass


class NotASite(KhPottsError, ValueError):
    pass


class TooLarge(KhPottsError):
    """A computation would exceed a configured cap; ``required`` is the size asked for."""

    def __init__(self, message, required=None, cap=None):
        super().__init__(message)
        self.required = required
        self.cap = cap


class NotPlanar(KhPottsError, ValueError):
    pass


class Disconnected(KhPottsError, ValueError):
    pass


class DomainError(KhPottsError, ValueError):
    pass
