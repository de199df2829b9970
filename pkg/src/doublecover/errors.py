"""Exception hierarchy.

Each class carries a stable ``exit_code`` used by the command-line front end.
"""


class DoubleCoverError(Exception):
    exit_code = 1


class ParseError(DoubleCoverError):
    exit_code = 3

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ShapeMismatch(DoubleCoverError):
    exit_code = 4


class CompositionNonzero(DoubleCoverError):
    """``d_i . d_{i+1}`` is not the zero matrix."""

    exit_code = 5

    def __init__(self, degree, row, col, value):
        self.degree, self.row, self.col, self.value = degree, row, col, value
        super().__init__(
            f"d_{degree} . d_{degree + 1} is nonzero: entry ({row}, {col}) = {value}"
        )


class NotMinimal(DoubleCoverError):
    exit_code = 6

    def __init__(self, degree, row, col, value):
        self.degree, self.row, self.col, self.value = degree, row, col, value
        super().__init__(
            f"boundary d_{degree} entry ({row}, {col}) = {value} "
            "does not vanish at t = 1"
        )


class OddEntry(DoubleCoverError):
    exit_code = 7

    def __init__(self, degree, row, col, value):
        self.degree, self.row, self.col, self.value = degree, row, col, value
        super().__init__(
            f"boundary d_{degree} entry ({row}, {col}) = {value} is odd; cannot halve"
        )


class ZeroOmega(DoubleCoverError):
    """The sign character is trivial on some component."""

    exit_code = 8


class EmptyOmega(DoubleCoverError):
    exit_code = 9


class DuplicateLine(DoubleCoverError):
    exit_code = 10


class ShapeViolation(DoubleCoverError):
    exit_code = 11
