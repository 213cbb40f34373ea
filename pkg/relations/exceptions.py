from free_group.exceptions import LabError


class InvalidRelation(LabError):
    """A relation, family or automorphism breaks its finite invariants."""

    def __init__(self, message, element=None):
        self.element = element
        if element is not None:
            message = f"{message} (element {element})"
        super().__init__(message)
