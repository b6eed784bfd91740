"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SingularityError(ArithmeticError):
    """A formula was evaluated exactly at one of its poles."""


class NoResonanceError(DomainError):
    """The Drude metal has no real plasmon resonance in the given medium."""


class NumericalError(ArithmeticError):
    """A numerical solve failed (singular matrix, non-finite result)."""


class ConfigError(ValueError):
    """Invalid scenario document or override.

    ``field`` is the dotted path of the offending entry and ``line`` the
    1-based line in the source document, when known.
    """

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = ""
        if field is not None:
            where += f"{field}: "
        if line is not None:
            where = f"line {line}: " + where
        super().__init__(where + message)
