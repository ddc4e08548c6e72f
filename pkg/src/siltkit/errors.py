"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 1); internal
consistency failures derive from :class:`ConsistencyError` (exit code 2).
"""


class SiltkitError(Exception):
    pass


class InputError(SiltkitError):
    pass


class ConsistencyError(SiltkitError):
    pass


class NonAdmissibleRelation(InputError):
    pass


class NonParallelRelation(NonAdmissibleRelation):
    pass


class DimensionUnbounded(InputError):
    pass


class EmptyVertexSet(InputError):
    pass


class EmptyComplement(InputError):
    pass


class BadParameters(InputError):
    pass


class SingularCartan(InputError):
    pass


class SizeMismatch(InputError):
    pass


class NotBasic(InputError):
    pass


class NotTriangular(InputError):
    pass


class NotWeaklySymmetric(InputError):
    pass


class IncompletePoset(InputError):
    pass


class UnsupportedFormat(InputError):
    pass


class UnknownIdentifier(InputError):
    pass


class NotCertifiedSilting(InputError):
    pass


class DSLSyntaxError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ApproximationFailure(ConsistencyError):
    pass


class KeyCollision(ConsistencyError):
    """Two non-isomorphic silting objects share a g-matrix key."""
