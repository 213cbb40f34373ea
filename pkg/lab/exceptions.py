from free_group.exceptions import LabError


class ConfigInvalid(LabError):
    """A run configuration failed validation; `errors` maps field -> messages."""

    def __init__(self, errors):
        self.errors = errors
        details = "; ".join(f"{field}: {' '.join(str(m) for m in messages)}" for field, messages in errors.items())
        super().__init__(f"invalid run configuration ({details})")
