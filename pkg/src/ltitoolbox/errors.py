"""
Exceptions raised by the toolbox.

Every library error derives from `ToolboxError`; the CLI maps all of them to exit code 1.
"""


class ToolboxError(Exception):
    """Base class of all toolbox errors."""


class ArgumentError(ToolboxError, ValueError):
    """An argument violates the precondition of an operation."""


class DomainError(ToolboxError, ValueError):
    """An operation is evaluated outside its mathematical domain.

    Attributes:
        pole (complex): The offending pole, when the error is a pole hit.
    """

    pole: complex

    def __init__(self, msg: str, pole: complex = None):
        """Init instance."""
        super().__init__(msg)
        self.pole = pole


class DataError(ToolboxError, ValueError):
    """Input data is malformed or contains non-finite values."""


class NumericalError(ToolboxError, ArithmeticError):
    """A numerical procedure failed or cannot be trusted."""


class UnsupportedStructureError(ToolboxError, NotImplementedError):
    """The input has a structure the algorithm does not handle, e.g. repeated poles."""
