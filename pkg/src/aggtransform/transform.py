"""Grid transforms: subadditive and superadditive closures, comparisons, refinement.

On a uniform grid the infimum over families with ``sum(parts) >= x`` equals
the infimum over families with ``sum(parts) == x``: any part can be shrunk
until the sum is exact, and a monotone function does not increase under
shrinking. Likewise padding a family with extra parts never lowers a sum of
nonnegative values, so the supremum over ``sum(parts) <= x`` is attained with
equality. Both transforms are therefore the closures

    H[0] = 0,   H[k] = min / max over nonzero j <= k of  A[j] + H[k - j]

Grid decompositions are a subset of all decompositions, so the grid value
of the subadditive transform is an upper bound of the true value and the
grid value of the superadditive transform is a lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .catalog import FunctionSpec, evaluate_many, sample_1d
from .errors import BadParameters, LatticeTooLarge, ScheduleNotNested
from .numerics import Grid1D, GridFn1D, GridFnND, as_grid_fn_nd

DEFAULT_BUDGET = 10 ** 9


class Direction(Enum):
    SUB = "SUB"
    SUPER = "SUPER"


class BoundSide(Enum):
    UPPER_BOUND_OF_TRUE = "UPPER_BOUND_OF_TRUE"
    LOWER_BOUND_OF_TRUE = "LOWER_BOUND_OF_TRUE"


BOUND_SIDE = {Direction.SUB: BoundSide.UPPER_BOUND_OF_TRUE,
              Direction.SUPER: BoundSide.LOWER_BOUND_OF_TRUE}


@dataclass(frozen=True, eq=False)
class TransformResult:
    fn: object
    direction: Direction
    bound_side: BoundSide
    choices: Optional[np.ndarray] = None

    def __post_init__(self):
        if BOUND_SIDE[self.direction] is not self.bound_side:
            raise ValueError(f"{self.direction} results carry {BOUND_SIDE[self.direction]}")

    @property
    def lattice(self):
        return as_grid_fn_nd(self.fn).lattice

    @property
    def values(self) -> np.ndarray:
        return self.fn.values

    def parts(self, index) -> list:
        """One optimal decomposition of ``index`` into lattice indices (needs witnesses)."""
        if self.choices is None:
            raise ValueError("transform was computed without witnesses")
        shape = self.values.shape
        k = np.array(np.atleast_1d(index), dtype=np.int64)
        out = []
        while k.any():
            j = np.array(np.unravel_index(int(self.choices[tuple(k)]), shape), dtype=np.int64)
            out.append(tuple(int(v) for v in j) if len(shape) > 1 else int(j[0]))
            k = k - j
        return sorted(out)


def _check_budget(shape, budget):
    if budget is not None:
        visits = kernels.pair_visits(shape)
        if visits > budget:
            raise LatticeTooLarge(f"{visits:.3g} cell-pair visits exceed the budget of {budget:.3g}")


def _result(f, values, choices, direction, witnesses):
    if isinstance(f, GridFn1D):
        fn = GridFn1D(f.grid, values)
    else:
        fn = GridFnND(f.lattice, values)
    return TransformResult(fn, direction, BOUND_SIDE[direction], choices if witnesses else None)


def _closure_1d(h: GridFn1D, direction, witnesses, budget, backend):
    _check_budget(h.values.shape, budget)
    H, choice = kernels.closure_1d(h.values, direction is Direction.SUB, backend)
    return _result(h, H, choice, direction, witnesses)


def subadditive_1d(h: GridFn1D, witnesses: bool = False, budget: Optional[int] = None,
                   backend: Optional[str] = None) -> TransformResult:
    return _closure_1d(h, Direction.SUB, witnesses, budget, backend)


def superadditive_1d(h: GridFn1D, witnesses: bool = False, budget: Optional[int] = None,
                     backend: Optional[str] = None) -> TransformResult:
    return _closure_1d(h, Direction.SUPER, witnesses, budget, backend)


def _closure_nd(A, direction, witnesses, budget, backend):
    if isinstance(A, GridFn1D):
        return _closure_1d(A, direction, witnesses, budget, backend)
    _check_budget(A.values.shape, budget)
    H, choice = kernels.closure_nd(A.values, direction is Direction.SUB, backend)
    return _result(A, H, choice, direction, witnesses)


def subadditive_nd(A: GridFnND, witnesses: bool = False, budget: Optional[int] = DEFAULT_BUDGET,
                   backend: Optional[str] = None) -> TransformResult:
    return _closure_nd(A, Direction.SUB, witnesses, budget, backend)


def superadditive_nd(A: GridFnND, witnesses: bool = False, budget: Optional[int] = DEFAULT_BUDGET,
                     backend: Optional[str] = None) -> TransformResult:
    return _closure_nd(A, Direction.SUPER, witnesses, budget, backend)


def transform(f, direction: Direction, **kwargs) -> TransformResult:
    direction = Direction(direction)
    return (subadditive_nd if direction is Direction.SUB else superadditive_nd)(f, **kwargs)


def _restrict(f, stride):
    if stride == 1:
        return f
    g = as_grid_fn_nd(f).restrict(stride)
    return g.to_1d() if isinstance(f, GridFn1D) else g


def _excess(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """``lhs - rhs`` clamped below at 0, with inf - inf read as 0."""
    with np.errstate(invalid="ignore"):
        diff = lhs - rhs
    diff[np.isinf(lhs) & np.isinf(rhs)] = 0.0
    return np.maximum(diff, 0.0)


@dataclass(frozen=True, eq=False)
class CompareReport:
    lhs: object
    rhs: object
    max_violation: float
    outer_stride: int = 1


def double_transform_compare(A, outer_stride: int = 1, budget: Optional[int] = DEFAULT_BUDGET,
                             backend: Optional[str] = None) -> CompareReport:
    """Grid values of ``(A_*)^*`` (lhs) and ``(A^*)_*`` (rhs).

    With ``outer_stride == 1`` both outer transforms run on the same lattice.
    There every unit part ``e_i`` is indivisible, and one can check that both
    sides then equal the linear function ``sum_i k_i * A[e_i]`` exactly; the
    comparison is informative only through rounding. ``outer_stride = m``
    runs the outer transform on the sublattice of indices divisible by ``m``,
    so the outer step only sees inner values at scales ``>= m * step`` where
    the inner transform is well resolved.
    """
    sub = subadditive_nd(A, budget=budget, backend=backend).fn
    sup = superadditive_nd(A, budget=budget, backend=backend).fn
    lhs = superadditive_nd(_restrict(sub, outer_stride), budget=budget, backend=backend).fn
    rhs = subadditive_nd(_restrict(sup, outer_stride), budget=budget, backend=backend).fn
    violation = float(_excess(lhs.values, rhs.values).max())
    return CompareReport(lhs, rhs, violation, outer_stride)


def additivity_deviation(D) -> float:
    """``max |D(x+y) - D(x) - D(y)|`` over lattice pairs with ``x + y`` in range."""
    vals = as_grid_fn_nd(D).values
    shape = vals.shape
    worst = 0.0
    for x in np.ndindex(*shape):
        if not any(x):
            continue
        head = tuple(slice(0, n - xi) for n, xi in zip(shape, x))
        tail = tuple(slice(xi, n) for n, xi in zip(shape, x))
        total = vals[tail]
        parts = vals[x] + vals[head]
        with np.errstate(invalid="ignore"):
            dev = np.abs(total - parts)
        dev[np.isinf(total) & np.isinf(parts)] = 0.0
        worst = max(worst, float(dev.max()))
        if math.isinf(worst):
            break
    return worst


# refinement ------------------------------------------------------------------

class Trend(Enum):
    CONVERGING = "CONVERGING"
    DIVERGING = "DIVERGING"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class ProbeVerdict:
    trend: Trend
    limit: Optional[float] = None


@dataclass(frozen=True, eq=False)
class RefinementStudy:
    probe_points: tuple
    schedule: tuple
    direction: Direction
    estimates: np.ndarray
    verdicts: tuple = field(default=())


def _check_nested(schedule, rtol=1e-9):
    for coarse, fine in zip(schedule, schedule[1:]):
        ratio = coarse / fine
        if not (fine > 0 and ratio > 1.5 and abs(ratio - round(ratio)) <= rtol * ratio):
            raise ScheduleNotNested(f"step {fine!r} does not strictly refine {coarse!r}")


def trend_verdict(est: np.ndarray, direction: Direction, growth: float = 1.5,
                  shrink: float = 2.0) -> ProbeVerdict:
    est = np.asarray(est, dtype=np.float64)
    if len(est) < 3:
        return ProbeVerdict(Trend.INCONCLUSIVE)
    e0, e1, e2 = est[-3:]
    if direction is Direction.SUPER and e1 >= growth * e0 and e2 >= growth * e1 and e2 > 0:
        return ProbeVerdict(Trend.DIVERGING)
    if e0 == e1 == e2:
        return ProbeVerdict(Trend.CONVERGING, float(e2))
    if not np.isfinite(est[-3:]).all():
        return ProbeVerdict(Trend.INCONCLUSIVE)
    d1, d2 = e1 - e0, e2 - e1
    if d1 != 0 and abs(d2) * shrink <= abs(d1):
        rho = d2 / d1
        # geometric tail of the differences
        return ProbeVerdict(Trend.CONVERGING, max(0.0, float(e2 + d2 * rho / (1.0 - rho))))
    return ProbeVerdict(Trend.INCONCLUSIVE)


def refine(spec: FunctionSpec, direction, probe_points: Sequence[float], schedule: Sequence[float],
           growth: float = 1.5, shrink: float = 2.0, budget: Optional[int] = None,
           backend: Optional[str] = None) -> RefinementStudy:
    """Grid transform values at ``probe_points`` along a nested step schedule."""
    direction = Direction(direction)
    schedule = tuple(float(s) for s in schedule)
    probes = tuple(float(p) for p in probe_points)
    if not schedule or not probes:
        raise BadParameters("need at least one step and one probe point")
    _check_nested(schedule)
    x_max = max(probes)
    estimates = np.empty((len(schedule), len(probes)))
    for t, step in enumerate(schedule):
        count = int(round(x_max / step))
        grid = Grid1D(step, max(count, 1))
        idx = [grid.index_of(p) for p in probes]
        h = sample_1d(spec, grid)
        res = _closure_1d(h, direction, False, budget, backend)
        estimates[t] = res.values[idx]
    verdicts = tuple(trend_verdict(estimates[:, p], direction, growth, shrink) for p in range(len(probes)))
    return RefinementStudy(probes, schedule, direction, estimates, verdicts)


# closed forms ----------------------------------------------------------------

class Shape(Enum):
    CONVEX = "CONVEX"
    CONCAVE = "CONCAVE"


def closed_form_shortcut(spec: FunctionSpec, shape, c: float) -> tuple:
    """``(sub, super)`` for a convex or concave unary h with finite h'(0+) = c.

    Convex: ``(c*x, h)``. Concave: ``(h, c*x)``. The shape is not checked.
    """
    shape = Shape(shape)
    c = float(c)
    if not (c >= 0 and math.isfinite(c)):
        raise BadParameters(f"the derivative at 0+ must be finite and nonnegative, got {c!r}")

    def h(x):
        return evaluate_many(spec, np.atleast_1d(np.asarray(x, dtype=np.float64)))

    def line(x):
        return c * np.atleast_1d(np.asarray(x, dtype=np.float64))

    return (line, h) if shape is Shape.CONVEX else (h, line)
