"""Slope-at-zero estimation and properness classifiers.

Whether ``h^*`` stays finite depends only on ``limsup h(t)/t`` at 0+, and
whether ``h_*`` stays positive only on ``liminf h(t)/t``. For n-ary ``A`` the
superadditive side is decided by the diagonal ``x -> A(x, ..., x)`` and the
subadditive side by the marginals ``x -> A(x e_i)``: a single marginal with
positive lower slope is enough, because monotonicity gives
``A(y) >= A_i(y_i)`` and hence ``A_*(x) >= (A_i)_*(x_i) > 0``.

Limits cannot be read off a finite schedule, so numeric estimates use
window trends with configurable thresholds and closed forms win whenever
the catalog knows them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .catalog import (FunctionSpec, SeriesSpec, Table, diagonal, evaluate_many, known_slopes,
                      marginal, sample_nd)
from .errors import BadParameters, BadSeries, NotProper, ScheduleTooShort
from .numerics import LatticeND, validate_properness
from .slopes import SlopeBounds, SlopeSource, SlopeVerdict

MIN_SCHEDULE = 8
UNDERFLOW_GUARD = 1e-300


def default_schedule(h: FunctionSpec, x0: float = 1.0, depth: int = 40) -> np.ndarray:
    """Dyadic points ``x0 * 2^-k`` merged with the family's anchors, decreasing."""
    table = _find_table(h)
    if table is not None:
        axis = table.fn.lattice.axes[0]
        return axis.points[:0:-1]
    t = x0 * 2.0 ** -np.arange(depth + 1)
    anchors = h.anchors(UNDERFLOW_GUARD)
    anchors = anchors[(anchors > UNDERFLOW_GUARD) & (anchors <= x0)]
    return np.unique(np.concatenate((t, anchors)))[::-1]


def _find_table(spec):
    while spec is not None:
        if isinstance(spec, Table):
            return spec
        spec = getattr(spec, "inner", None)
    return None


def _stable(x: np.ndarray, tol: float) -> bool:
    lo, hi = float(np.min(x)), float(np.max(x))
    if lo == hi:
        return True
    return lo > 0 and math.isfinite(hi) and hi / lo - 1.0 <= tol


def estimate_slope_bounds(h: FunctionSpec, t_schedule: Optional[Sequence[float]] = None,
                          use_closed_form: bool = True, windows: int = 4, growth: float = 2.0,
                          point_spread: float = 0.01, stable_tol: float = 0.05) -> SlopeBounds:
    """Estimate ``liminf`` / ``limsup`` of h(t)/t as t -> 0+.

    The ratios along the schedule are split into ``windows`` consecutive
    windows. Over the last three windows, maxima growing by ``growth`` read
    as an infinite upper slope and minima shrinking by ``growth`` as a zero
    lower slope; otherwise the last window's extremes are the estimates.
    """
    if use_closed_form:
        known = known_slopes(h)
        if known is not None:
            return known
    t = np.asarray(default_schedule(h) if t_schedule is None else t_schedule, dtype=np.float64)
    if t.ndim != 1 or len(t) < MIN_SCHEDULE:
        raise ScheduleTooShort(f"need at least {MIN_SCHEDULE} schedule points, got {t.size}")
    if np.any(np.diff(t) >= 0):
        raise BadParameters("the schedule must be strictly decreasing")
    if t[-1] <= UNDERFLOW_GUARD:
        raise BadParameters(f"schedule points must stay above {UNDERFLOW_GUARD}")
    r = evaluate_many(h, t) / t
    wins = [w for w in np.array_split(r, min(windows, len(r) // 2)) if len(w)]
    if len(wins) < 3:
        raise ScheduleTooShort("need at least three windows")
    lows = np.array([w.min() for w in wins[-3:]])
    highs = np.array([w.max() for w in wins[-3:]])

    with np.errstate(invalid="ignore"):
        lim_high = highs[-1] >= growth * highs[0] and highs[-1] > 0
        max_falls = highs[-1] * growth <= highs[0]
        lim_low = lows[-1] * growth <= lows[0]
        min_rises = lows[-1] >= growth * lows[0] and lows[-1] > 0

    a = 0.0 if lim_low else (math.inf if min_rises else float(lows[-1]))
    b = math.inf if lim_high else (0.0 if max_falls else float(highs[-1]))

    def out(a, b, verdict):
        return SlopeBounds(a, b, SlopeSource.NUMERIC_TREND, verdict)

    if a > b:
        return out(float(lows[-1]), float(highs[-1]), SlopeVerdict.INCONCLUSIVE)
    if a == b == 0.0:
        return out(0.0, 0.0, SlopeVerdict.DEGENERATE_LOW)
    if a == b == math.inf:
        return out(a, b, SlopeVerdict.DEGENERATE_HIGH)
    if a == 0.0 and b == math.inf:
        return out(a, b, SlopeVerdict.BAND)
    if a == 0.0:
        return out(a, b, SlopeVerdict.BAND if _stable(highs, stable_tol) else SlopeVerdict.INCONCLUSIVE)
    if b == math.inf:
        return out(a, b, SlopeVerdict.BAND if _stable(lows, stable_tol) else SlopeVerdict.INCONCLUSIVE)
    tail = np.concatenate(wins[-3:])
    if tail.max() - tail.min() <= point_spread * tail.max():
        c = float(r[-1])
        return out(c, c, SlopeVerdict.POINT)
    if _stable(lows, stable_tol) and _stable(highs, stable_tol):
        return out(a, b, SlopeVerdict.BAND)
    return out(a, b, SlopeVerdict.INCONCLUSIVE)


# membership ------------------------------------------------------------------

class Tri(Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class MembershipVerdict:
    in_K_super: Tri
    in_K_sub: Tri
    per_marginal: tuple
    diagonal: SlopeBounds
    rationale: str = ""

    def to_json(self) -> dict:
        return {
            "in_K_super": self.in_K_super.value,
            "in_K_sub": self.in_K_sub.value,
            "diagonal": self.diagonal.to_json(),
            "per_marginal": [m.to_json() for m in self.per_marginal],
            "rationale": self.rationale,
        }


def validation_lattice(spec: FunctionSpec, n: int, max_points: int = 100_000) -> LatticeND:
    table = _find_table(spec)
    if table is not None:
        return table.fn.lattice
    count = 8
    while count > 1 and (count + 1) ** n > max_points:
        count -= 1
    return LatticeND.uniform(0.125, count, n)


def classify_membership(spec: FunctionSpec, n: int, schedule: Optional[Sequence[float]] = None,
                        lattice: Optional[LatticeND] = None, **slope_options) -> MembershipVerdict:
    """Decide membership of ``spec`` in the classes whose transforms stay proper."""
    lattice = lattice or validation_lattice(spec, n)
    report = validate_properness(sample_nd(spec, lattice))
    if not report.is_proper:
        why = "infinite at " + str(report.infinite_points[0]) if report.infinite_points \
            else "no positive finite value at strictly positive grid points"
        raise NotProper(f"{spec.family} is not proper on the validation lattice: {why}")

    diag = estimate_slope_bounds(diagonal(spec, n), schedule, **slope_options)
    margs = tuple(estimate_slope_bounds(marginal(spec, n, i), schedule, **slope_options)
                  for i in range(1, n + 1))

    if diag.inconclusive:
        sup = Tri.UNKNOWN
    else:
        sup = Tri.YES if math.isfinite(diag.limsup_est) else Tri.NO
    if any(not m.inconclusive and m.liminf_est > 0 for m in margs):
        sub = Tri.YES
    elif all(not m.inconclusive and m.liminf_est == 0 for m in margs):
        sub = Tri.NO
    else:
        sub = Tri.UNKNOWN

    notes = [f"diagonal upper slope {diag.limsup_est:g} ({diag.source.value})"]
    notes += [f"marginal {i} lower slope {m.liminf_est:g} ({m.source.value})"
              for i, m in enumerate(margs, 1)]
    return MembershipVerdict(sup, sub, margs, diag, "; ".join(notes))


# series ------------------------------------------------------------------------

class SeriesStatus(Enum):
    CONVERGENT = "CONVERGENT"
    DIVERGENT = "DIVERGENT"
    INCONCLUSIVE = "INCONCLUSIVE"


class Implication(Enum):
    SUB_DEGENERATE = "SUB_DEGENERATE"
    SUPER_DEGENERATE = "SUPER_DEGENERATE"
    NONE = "NONE"


@dataclass(frozen=True)
class SeriesReport:
    sum_a: float
    a_status: SeriesStatus
    sum_h: float
    h_status: SeriesStatus
    implication: Implication
    block_ratios_a: tuple = field(default=())
    block_ratios_h: tuple = field(default=())

    def to_json(self) -> dict:
        def total(s, status):
            return "DIVERGING" if status is SeriesStatus.DIVERGENT else s
        return {
            "sum_a": total(self.sum_a, self.a_status), "a_status": self.a_status.value,
            "sum_h": total(self.sum_h, self.h_status), "h_status": self.h_status.value,
            "implication": self.implication.value,
        }


def dyadic_block_ratios(terms: np.ndarray) -> np.ndarray:
    """Ratios of consecutive sums over ``j in [2^b, 2^(b+1))`` (1-based j)."""
    n_blocks = int(math.floor(math.log2(len(terms) + 1)))
    sums = np.array([math.fsum(terms[2 ** b - 1: 2 ** (b + 1) - 1]) for b in range(n_blocks)])
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = sums[1:] / sums[:-1]
    return np.where(np.isnan(ratios), 0.0, ratios)


def series_status(terms: np.ndarray, blocks: int = 4, convergent_below: float = 0.9,
                  divergent_above: float = 0.95) -> tuple:
    if np.isinf(terms).any():
        return SeriesStatus.DIVERGENT, np.array([math.inf])
    ratios = dyadic_block_ratios(terms)
    tail = ratios[-blocks:]
    if np.all(tail < convergent_below):
        return SeriesStatus.CONVERGENT, ratios
    if np.all(tail > divergent_above):
        return SeriesStatus.DIVERGENT, ratios
    return SeriesStatus.INCONCLUSIVE, ratios


def series_diagnostic(h: FunctionSpec, series: SeriesSpec, J: int = 10_000, blocks: int = 4,
                      convergent_below: float = 0.9, divergent_above: float = 0.95) -> SeriesReport:
    """Compare the behaviour of ``sum a_j`` and ``sum h(a_j)``.

    A divergent ``sum a_j`` with convergent ``sum h(a_j)`` forces the lower
    slope of h to 0 (subadditive transform degenerates); the mirrored case
    forces the upper slope to infinity. The flags are heuristics on dyadic
    block sums.
    """
    if int(J) != J or J < 100:
        raise BadSeries(f"need at least 100 terms, got {J!r}")
    a = np.asarray(series.terms(int(J)), dtype=np.float64)
    if not (np.all(a > 0) and np.all(np.isfinite(a))):
        raise BadSeries("series terms must be positive and finite")
    if np.any(np.diff(a) > 0):
        raise BadSeries("series terms must be decreasing")
    ha = evaluate_many(h, a)
    opts = dict(blocks=blocks, convergent_below=convergent_below, divergent_above=divergent_above)
    sa, ra = series_status(a, **opts)
    sh, rh = series_status(ha, **opts)
    if sa is SeriesStatus.DIVERGENT and sh is SeriesStatus.CONVERGENT:
        imp = Implication.SUB_DEGENERATE
    elif sa is SeriesStatus.CONVERGENT and sh is SeriesStatus.DIVERGENT:
        imp = Implication.SUPER_DEGENERATE
    else:
        imp = Implication.NONE
    return SeriesReport(math.fsum(a), sa, math.fsum(ha), sh, imp, tuple(ra), tuple(rh))
