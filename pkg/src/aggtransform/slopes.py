"""Lower/upper slope of a unary function at zero, ``liminf`` and ``limsup`` of h(t)/t."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class SlopeSource(Enum):
    CLOSED_FORM = "CLOSED_FORM"
    NUMERIC_TREND = "NUMERIC_TREND"


class SlopeVerdict(Enum):
    POINT = "POINT"
    BAND = "BAND"
    DEGENERATE_LOW = "DEGENERATE_LOW"
    DEGENERATE_HIGH = "DEGENERATE_HIGH"
    INCONCLUSIVE = "INCONCLUSIVE"


def classify_limits(a: float, b: float) -> SlopeVerdict:
    if a == b:
        if a == 0.0:
            return SlopeVerdict.DEGENERATE_LOW
        if math.isinf(a):
            return SlopeVerdict.DEGENERATE_HIGH
        return SlopeVerdict.POINT
    return SlopeVerdict.BAND


@dataclass(frozen=True)
class SlopeBounds:
    liminf_est: float
    limsup_est: float
    source: SlopeSource
    verdict: SlopeVerdict

    def __post_init__(self):
        a, b = float(self.liminf_est), float(self.limsup_est)
        if math.isnan(a) or math.isnan(b) or a < 0 or a > b:
            raise ValueError(f"slope bounds need 0 <= liminf <= limsup, got ({a}, {b})")
        object.__setattr__(self, "liminf_est", a)
        object.__setattr__(self, "limsup_est", b)

    @classmethod
    def closed_form(cls, a: float, b: float) -> "SlopeBounds":
        return cls(a, b, SlopeSource.CLOSED_FORM, classify_limits(float(a), float(b)))

    @property
    def inconclusive(self) -> bool:
        return self.verdict is SlopeVerdict.INCONCLUSIVE

    @property
    def point(self) -> float | None:
        """The derivative at 0+ when both slopes agree."""
        return self.liminf_est if self.liminf_est == self.limsup_est else None

    def scaled(self, factor: float) -> "SlopeBounds":
        def mul(v):
            return v if v == 0.0 or math.isinf(v) else v * factor
        return SlopeBounds.closed_form(mul(self.liminf_est), mul(self.limsup_est)) \
            if self.source is SlopeSource.CLOSED_FORM else \
            SlopeBounds(mul(self.liminf_est), mul(self.limsup_est), self.source, self.verdict)

    def to_json(self) -> dict:
        return {
            "liminf_est": _num(self.liminf_est),
            "limsup_est": _num(self.limsup_est),
            "source": self.source.value,
            "verdict": self.verdict.value,
        }


def _num(v: float):
    return "inf" if math.isinf(v) else v
