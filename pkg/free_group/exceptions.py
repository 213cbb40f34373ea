"""
Error hierarchy shared by every lab app.

Apps that own more specific failures (boundary depth, action validity,
relation validity) subclass LabError in their own exceptions module.
"""


class LabError(Exception):
    """Base class for all lab errors."""


class RankMismatch(LabError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"rank mismatch: expected {expected}, got {got}")


class InvalidLetter(LabError):
    pass


class InvalidParameter(LabError):
    pass


class SpecParseError(LabError):
    """Text input could not be parsed; `position` is a 0-based character offset."""

    def __init__(self, message, position=0, text=""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class ResourceCapExceeded(LabError):
    """A configured resource cap would be exceeded; `cap` names the setting."""

    def __init__(self, cap, limit, requested):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(f"{cap} exceeded: requested {requested}, limit {limit}")
