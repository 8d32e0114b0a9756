"""Exception hierarchy.

Every error raised on purpose by the library derives from ``SpanChromError``
(itself a ``ValueError``), so callers can catch input problems in one place.
"""


class SpanChromError(ValueError):
    pass


# finite fields
class NotPrime(SpanChromError):
    pass


class OrderTooLarge(SpanChromError):
    pass


class MixedAmbient(SpanChromError):
    pass


class CapExceeded(SpanChromError):
    pass


# graphs
class IndexOutOfRange(SpanChromError):
    pass


class SelfLoop(SpanChromError):
    pass


class GraphFormatError(SpanChromError):
    pass


# colourings
class MalformedColouring(SpanChromError):
    pass


class NoExtension(SpanChromError):
    pass


# complexes and rings
class NameClash(SpanChromError):
    pass


class BadDegrees(SpanChromError):
    pass


class ContextMismatch(SpanChromError):
    pass


class NotASimplex(SpanChromError):
    pass


# steenrod
class InvalidColouring(SpanChromError):
    pass


class DimensionMismatch(SpanChromError):
    pass


class NotAnG(SpanChromError):
    pass


class Sq4NotInPrincipalIdeal(SpanChromError):
    def __init__(self, generator, image):
        self.generator = generator
        self.image = image
        super().__init__(f"Sq^4({generator}) = {image} is not in ({generator})")


class ExtractionInvalid(SpanChromError):
    pass


class BadPrime(SpanChromError):
    pass


class WrongShape(SpanChromError):
    pass


class NotAPartition(SpanChromError):
    pass
