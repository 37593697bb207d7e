__all__ = ["FigureInputError"]


class FigureInputError(Exception):
    """A CSV input is missing or does not follow the expected layout.

    The message always names the offending path.
    """

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)
        self.reason = reason
