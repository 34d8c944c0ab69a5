class LogspaceError(Exception):

    """Base class for errors raised by logspace."""


class DomainError(LogspaceError, ValueError):

    """A point or interval falls outside a function's domain."""


class PreconditionError(LogspaceError, ValueError):

    """An operation was called with inputs it doesn't accept."""


class IntegrationError(LogspaceError):

    """The integrand couldn't be evaluated inside a panel."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point

    def __str__(self):
        message = super().__str__()
        if self.point is None:
            return message
        return '{message} (at x={point!r})'.format(message=message, point=self.point)


class InfiniteMassError(LogspaceError):

    """A density integrates to +inf, so the measure isn't finite."""


class ClassificationError(LogspaceError):

    """A form combination can't be classified analytically."""


class RootFindingError(LogspaceError):

    def __init__(self, message, segment=None):
        super().__init__(message)
        self.segment = segment


class NotIsometricError(LogspaceError):

    """Two spaces fail an isometry criterion.

    ``criterion`` names the failing check, e.g. "total mass".

    """

    def __init__(self, message, criterion=None):
        super().__init__(message)
        self.criterion = criterion


class NoAutomorphismError(NotIsometricError):

    """Atomic weight multisets differ; no measure-preserving map exists."""

    def __init__(self, message):
        super().__init__(message, criterion='atom weights')


class IncomparableError(LogspaceError):

    """Two decompositions don't share the same component structure."""


class UnsupportedFormError(LogspaceError, KeyError):

    def __str__(self):
        return Exception.__str__(self)


class OracleRefusedError(LogspaceError):

    """Input too large for an exhaustive oracle."""


class ScenarioError(LogspaceError):

    """A scenario document is malformed.

    ``path`` locates the offending field, e.g.
    ``space.density.segments[1].form``.

    """

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path

    def __str__(self):
        message = super().__str__()
        if not self.path:
            return message
        return '{path}: {message}'.format(path=self.path, message=message)
