from free_group.exceptions import LabError


class InvalidAction(LabError):
    """A generator map is not a bijection or does not preserve lambda."""

    def __init__(self, message, generator=None, point=None):
        self.generator = generator
        self.point = point
        super().__init__(message)
