# -*- coding: utf-8 -*-
#
# Exceptions raised by the shuffles app.
#


class ShuffleError(Exception):
    """
    Base class for every error raised by the shuffles library.
    """
    pass


class MeasureError(ShuffleError):
    pass


class OverlappingGaps(MeasureError):
    pass


class OutOfRange(MeasureError):
    pass


class DegenerateGap(MeasureError):
    pass


class NotPurelyAtomic(MeasureError):
    pass


class UnknownMeasure(MeasureError):
    """
    A measure name or spec could not be resolved.
    """
    pass


class InvalidCoupling(ShuffleError):
    """
    A coupling does not have uniform marginals (a grid copula whose
    rows or columns do not sum to 1/m, or a shuffle map which does
    not preserve Lebesgue measure).
    """
    pass


class IncomparableSamples(ShuffleError):
    pass


class WindowTooSmall(ShuffleError):
    pass


class CapExceeded(ShuffleError):
    pass


class ExactUnavailable(ShuffleError):
    pass


class DimensionMismatch(ShuffleError):
    pass


class EmptyCounts(ShuffleError):
    pass
