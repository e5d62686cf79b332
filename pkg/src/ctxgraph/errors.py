"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class CtxGraphError(Exception):
    """Base class for errors raised by ctxgraph."""


class InvalidParameter(CtxGraphError, ValueError):
    """A numeric parameter is outside the domain of an operation."""


class InvalidInput(CtxGraphError, ValueError):
    """Structured input (graph spec, edge list, event list) is malformed."""


class ResourceCapError(CtxGraphError):
    """An operation would exceed a configured size or time budget.

    ``partial`` optionally carries whatever was computed before the cap hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
