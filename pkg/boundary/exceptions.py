from free_group.exceptions import LabError


class InsufficientDepth(LabError):
    """The answer depends on letters beyond the depth the prefix carries."""

    def __init__(self, message, needed=None, depth=None):
        self.needed = needed
        self.depth = depth
        if needed is not None:
            message = f"{message} (needs depth {needed}, have {depth})"
        super().__init__(message)


class EvenRadiusRequired(LabError):
    pass


class IncompatiblePair(LabError):
    pass
