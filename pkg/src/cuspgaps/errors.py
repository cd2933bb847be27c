"""Exceptions raised by the exact engine.

ValueError is reserved for caller mistakes (bad arguments, violated
preconditions).  EngineError and its subclasses signal that an internal
consistency certificate failed, which always indicates a bug rather than
bad input.
"""


class EngineError(RuntimeError):
    """An internal exact-arithmetic certificate failed."""


class NotInSpanError(EngineError):
    """A q-expansion expected to lie in a basis span does not."""


class AssemblyError(EngineError):
    """Operator assembly produced a matrix violating its defining identity."""
