"""Extended reals, uniform grids and validated monotone grid functions.

Values live in ``[0, inf]`` and are stored as float64 with ``inf`` standing
for the point at infinity. Because every value is nonnegative, float
addition already saturates (``inf + x == inf``) and never produces NaN, so
the kernels can work on raw arrays once inputs have been validated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import AggregationError, LengthMismatch, NonZeroAtOrigin, NotMonotone

INF = math.inf


class ExtReal(float):
    """A float restricted to ``[0, inf]``."""

    def __new__(cls, value=0.0):
        v = float(value)
        if math.isnan(v):
            raise AggregationError("NaN is not an extended nonnegative real")
        if v < 0.0:
            raise AggregationError(f"negative value {v!r} is not allowed")
        return super().__new__(cls, v)

    def __add__(self, other):
        return ExtReal(float(self) + float(ExtReal(other)))

    __radd__ = __add__

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self)

    def __repr__(self):
        return f"ExtReal({float(self)!r})"


def ext_sum(values: Iterable) -> ExtReal:
    total = ExtReal(0.0)
    for v in values:
        total = total + v
    return total


def as_ext_array(values, shape=None) -> np.ndarray:
    """Convert to a read-only float64 array, rejecting NaN and negatives."""
    arr = np.array(values, dtype=np.float64)
    if shape is not None and arr.shape != tuple(shape):
        raise LengthMismatch(f"expected shape {tuple(shape)}, got {arr.shape}")
    if np.isnan(arr).any():
        raise AggregationError("NaN is not an extended nonnegative real")
    if (arr < 0).any():
        raise AggregationError("negative values are not allowed")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Grid1D:
    """The points ``0, step, 2*step, ..., count*step``."""

    step: float
    count: int

    def __post_init__(self):
        step = float(self.step)
        if not (step > 0 and math.isfinite(step)):
            raise AggregationError(f"grid step must be positive and finite, got {self.step!r}")
        if int(self.count) != self.count or self.count < 1:
            raise AggregationError(f"grid count must be a positive integer, got {self.count!r}")
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def from_points(cls, points: Sequence[float], rtol: float = 1e-12) -> "Grid1D":
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 1 or len(pts) < 2 or pts[0] != 0.0:
            raise AggregationError("grid points must start at 0 and have at least two entries")
        step = pts[1]
        expected = np.arange(len(pts)) * step
        if not np.allclose(pts, expected, rtol=rtol, atol=0.0):
            raise AggregationError("only uniform grids are supported")
        return cls(step, len(pts) - 1)

    @property
    def x_max(self) -> float:
        return self.count * self.step

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.count + 1) * self.step

    def index_of(self, x: float, rtol: float = 1e-9) -> int:
        k = round(x / self.step)
        if k < 0 or k > self.count or abs(k * self.step - x) > rtol * max(abs(x), self.step):
            raise AggregationError(f"{x!r} is not a point of {self}")
        return int(k)


@dataclass(frozen=True)
class LatticeND:
    axes: tuple

    def __post_init__(self):
        axes = tuple(self.axes)
        if not axes:
            raise AggregationError("a lattice needs at least one axis")
        if not all(isinstance(a, Grid1D) for a in axes):
            raise AggregationError("lattice axes must be Grid1D instances")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def uniform(cls, step: float, count: int, ndim: int) -> "LatticeND":
        return cls(tuple(Grid1D(step, count) for _ in range(ndim)))

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(a.count + 1 for a in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def steps(self) -> tuple:
        return tuple(a.step for a in self.axes)

    def point(self, index) -> tuple:
        return tuple(i * a.step for i, a in zip(index, self.axes))

    def points(self) -> np.ndarray:
        """All lattice points as an array of shape ``(size, ndim)`` in C order."""
        grids = np.meshgrid(*[a.points for a in self.axes], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    def sublattice(self, stride: int) -> "LatticeND":
        if stride < 1 or any(a.count % stride for a in self.axes):
            raise AggregationError(f"stride {stride} does not divide every axis count")
        return LatticeND(tuple(Grid1D(a.step * stride, a.count // stride) for a in self.axes))


def _first_violation_1d(values: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(values[1:] < values[:-1])
    return int(bad[0]) + 1 if len(bad) else None


def _first_violation_nd(values: np.ndarray) -> Optional[tuple]:
    worst = None
    for axis in range(values.ndim):
        hi = np.take(values, range(1, values.shape[axis]), axis=axis)
        lo = np.take(values, range(0, values.shape[axis] - 1), axis=axis)
        bad = np.argwhere(hi < lo)
        if len(bad):
            idx = bad[0].copy()
            idx[axis] += 1
            idx = tuple(int(i) for i in idx)
            if worst is None or idx < worst:
                worst = idx
    return worst


@dataclass(frozen=True, eq=False)
class GridFn1D:
    """Monotone samples ``values[k] = h(k * grid.step)`` with ``values[0] == 0``."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.grid.count + 1:
            raise LengthMismatch(
                f"grid has {self.grid.count + 1} points but {len(self.values)} values were given")
        vals = as_ext_array(self.values)
        if vals[0] != 0.0:
            raise NonZeroAtOrigin(f"value at the origin is {vals[0]!r}, expected 0")
        bad = _first_violation_1d(vals)
        if bad is not None:
            raise NotMonotone(bad)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return ExtReal(self.values[k])

    def __eq__(self, other):
        if not isinstance(other, GridFn1D):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    def at(self, x: float) -> ExtReal:
        return ExtReal(self.values[self.grid.index_of(x)])

    def as_nd(self) -> "GridFnND":
        return GridFnND(LatticeND((self.grid,)), self.values)


@dataclass(frozen=True, eq=False)
class GridFnND:
    """Samples of an ``n``-ary function on a lattice, values indexed by lattice index."""

    lattice: LatticeND
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != self.lattice.shape:
            raise LengthMismatch(f"lattice has shape {self.lattice.shape}, values have {vals.shape}")
        vals = as_ext_array(vals)
        if vals[(0,) * vals.ndim] != 0.0:
            raise NonZeroAtOrigin("value at the origin must be 0")
        bad = _first_violation_nd(vals)
        if bad is not None:
            raise NotMonotone(bad)
        object.__setattr__(self, "values", vals)

    @property
    def ndim(self) -> int:
        return self.lattice.ndim

    def __getitem__(self, index) -> ExtReal:
        return ExtReal(self.values[tuple(index)])

    def __eq__(self, other):
        if not isinstance(other, GridFnND):
            return NotImplemented
        return self.lattice == other.lattice and np.array_equal(self.values, other.values)

    def at(self, x: Sequence[float]) -> ExtReal:
        idx = tuple(a.index_of(xi) for a, xi in zip(self.lattice.axes, x))
        return ExtReal(self.values[idx])

    def restrict(self, stride: int) -> "GridFnND":
        """The function on the sublattice of indices divisible by ``stride``."""
        sub = self.lattice.sublattice(stride)
        sl = tuple(slice(None, None, stride) for _ in range(self.ndim))
        return GridFnND(sub, self.values[sl])

    def to_1d(self) -> GridFn1D:
        if self.ndim != 1:
            raise AggregationError("only a one-axis lattice converts to GridFn1D")
        return GridFn1D(self.lattice.axes[0], self.values)


def make_grid_fn_1d(grid: Grid1D, values) -> GridFn1D:
    return GridFn1D(grid, values)


def make_grid_fn_nd(lattice: LatticeND, values) -> GridFnND:
    return GridFnND(lattice, values)


def as_grid_fn_nd(f) -> GridFnND:
    return f.as_nd() if isinstance(f, GridFn1D) else f


@dataclass(frozen=True)
class PropernessReport:
    is_aggregation: bool
    is_proper: bool
    witness_positive_finite: Optional[tuple]
    infinite_points: list = field(default_factory=list)


def validate_properness(f) -> PropernessReport:
    """Check the two properness conditions at the grid points of ``f``.

    The positivity witness is searched among lattice points with every
    coordinate strictly positive; finiteness is required everywhere since
    every grid point has finite coordinates.
    """
    f = as_grid_fn_nd(f)
    vals = f.values
    is_aggregation = vals[(0,) * vals.ndim] == 0.0 and _first_violation_nd(vals) is None
    interior = vals[tuple(slice(1, None) for _ in range(vals.ndim))]
    hits = np.argwhere((interior > 0) & np.isfinite(interior))
    witness = tuple(int(i) + 1 for i in hits[0]) if len(hits) else None
    infinite = [tuple(int(i) for i in p) for p in np.argwhere(np.isinf(vals))]
    return PropernessReport(
        is_aggregation=bool(is_aggregation),
        is_proper=bool(is_aggregation and witness is not None and not infinite),
        witness_positive_finite=witness,
        infinite_points=infinite,
    )
