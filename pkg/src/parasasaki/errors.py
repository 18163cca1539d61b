class StructureError(ValueError):
    """Invalid algebraic input (singular metric, bad shapes, broken axioms)."""


class JacobiError(StructureError):
    pass


class ConsistencyError(RuntimeError):
    """A closed-form expression disagrees with the direct computation.

    ``expected`` and ``computed`` hold the two component tables
    (index tuple -> Poly) so callers can show both.
    """

    def __init__(self, message: str, expected=None, computed=None):
        super().__init__(message)
        self.expected = expected or {}
        self.computed = computed or {}


class ManifoldParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
