"""Exception hierarchy.

Everything raised on bad input derives from :class:`AggregationError`, which
is a ``ValueError`` so callers that only care about "bad value" can catch that.
:class:`BudgetError` subclasses mark work-size refusals rather than bad data.
"""


class AggregationError(ValueError):
    pass


class NonZeroAtOrigin(AggregationError):
    pass


class NotMonotone(AggregationError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"values decrease at index {index}")


class LengthMismatch(AggregationError):
    pass


class EvalDomainError(AggregationError):
    pass


class ArityMismatch(AggregationError):
    pass


class BadAxis(AggregationError):
    pass


class BadParameters(AggregationError):
    pass


class ScheduleNotNested(AggregationError):
    pass


class ScheduleTooShort(AggregationError):
    pass


class NotProper(AggregationError):
    pass


class BadSeries(AggregationError):
    pass


class BudgetError(AggregationError):
    pass


class LatticeTooLarge(BudgetError):
    pass


class TooLarge(BudgetError):
    pass
