from django.core.exceptions import ValidationError


class CalculusError(ValidationError):
    """Base of every error raised by the calculus.

    Subclasses carry a default ``code`` so callers can branch on ``exc.code``
    the same way form code does.
    """
    default_code = 'calculus'

    def __init__(self, message, code=None, params=None):
        super().__init__(message, code=code or self.default_code, params=params)

    def __str__(self):
        return self.render()

    def render(self):
        if self.params:
            return self.message % self.params
        return self.message


class PresentationError(CalculusError):
    default_code = 'presentation'


class ParseError(PresentationError):
    default_code = 'syntax'

    def __init__(self, message, line, column, code=None, params=None):
        super().__init__(message, code=code, params=params)
        self.line = line
        self.column = column

    def render(self):
        return f"line {self.line}, column {self.column}: {super().render()}"


class GroupError(CalculusError):
    default_code = 'group'


class TermError(CalculusError):
    default_code = 'term'


class BoundExceeded(CalculusError):
    default_code = 'bound_exceeded'


class ProjectionError(CalculusError):
    default_code = 'projection'


class HypothesisError(CalculusError):
    default_code = 'hypothesis'


class FunctorError(CalculusError):
    default_code = 'functor'
