"""Exception hierarchy.

Every error is a ``ValueError`` subclass so callers that only care about
bad input can catch that.
"""


class AcstructError(ValueError):
    pass


# graded rings
class OddDegreeGenerator(AcstructError):
    pass


class InconsistentRelations(AcstructError):
    pass


class RingMismatch(AcstructError):
    pass


class NonNilpotentInput(AcstructError):
    pass


# manifolds
class DimensionMismatch(AcstructError):
    pass


class EmptyList(AcstructError):
    pass


class OddDimension(AcstructError):
    pass


class NotRationalHomologySphere(AcstructError):
    pass


class InvalidDescriptor(AcstructError):
    pass


# decision rules
class NotApplicableDimension(AcstructError):
    pass


class ParityViolation(AcstructError):
    pass


class PreconditionFlagsMissing(AcstructError):
    pass


class InvalidDimensions(AcstructError):
    pass


class MissingChernData(AcstructError):
    pass


# command line / files
class CapExceeded(AcstructError):
    pass


class ParseError(AcstructError):
    pass


class SchemaError(AcstructError):
    pass
