"""Exception hierarchy. Every validation error carries a witness tuple."""


class NervekitError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(NervekitError, ValueError):
    """Malformed input data (bad ids, missing keys, wrong shapes)."""


class ParseError(InputError):
    pass


class CycleError(InputError):
    """x <= y <= x with x != y: the space is not T0, hence not sober."""


class UnknownPoint(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotContinuous(InputError):
    pass


class NotEtale(InputError):
    pass


class NotACover(InputError):
    pass


class NotLocallyTotal(InputError):
    pass


class NotOpen(InputError):
    pass


class MonotonicityViolation(InputError):
    pass


class CategoryAxiomViolation(InputError):
    pass


class FunctorViolation(InputError):
    pass


class InvalidLinearOrder(InputError):
    pass


class InvalidAction(InputError):
    pass


class TruncationTooShallow(NervekitError, ValueError):
    pass


class BicategoryError(InputError):
    """Base for bicategory validation failures."""


class StructureError(BicategoryError):
    """Tables reference unknown cells or have wrong sources/targets."""


class HomCategoryViolation(BicategoryError):
    """Vertical composition is not associative/unital in some hom-category."""


class InterchangeViolation(BicategoryError):
    pass


class NonInvertibleConstraint(BicategoryError):
    pass


class NaturalityViolation(BicategoryError):
    pass


class PentagonViolation(BicategoryError):
    pass


class TriangleViolation(BicategoryError):
    pass
