"""Symbolic function families and the two oscillator constructions.

Every family is a frozen dataclass. Evaluation is vectorised: a family
evaluates an ``(m, n)`` array of points at once, and :func:`evaluate` is the
single-point wrapper returning an :class:`~aggtransform.numerics.ExtReal`.

Families with ``arity = None`` accept any number of coordinates (``Max``,
``Median``, ``LogProd``, ``ExpSum``, ``MeanComposed``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import ClassVar, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import AggregationError, ArityMismatch, BadAxis, BadParameters, BadSeries, EvalDomainError
from .numerics import ExtReal, Grid1D, GridFn1D, GridFnND, LatticeND, as_ext_array
from .slopes import SlopeBounds

LOG_CUTOFF = math.exp(-2.0)
INF = math.inf


class FunctionSpec:
    family: ClassVar[str] = ""
    arity: ClassVar[Optional[int]] = None

    def _eval(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def anchors(self, t_min: float = 0.0) -> np.ndarray:
        """Points where the family pins h(t)/t to its extreme ratios (empty if none)."""
        return np.empty(0)

    def params(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"family": self.family, **self.params()}

    def __call__(self, *x):
        return evaluate(self, x)


def _points(spec: FunctionSpec, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[1] < 1:
        raise ArityMismatch(f"expected points of shape (m, n), got {X.shape}")
    if spec.arity is not None and X.shape[1] != spec.arity:
        raise ArityMismatch(f"{spec.family} takes {spec.arity} coordinates, got {X.shape[1]}")
    if np.isnan(X).any() or (X < 0).any() or np.isinf(X).any():
        raise EvalDomainError("coordinates must be finite and nonnegative")
    return X


def evaluate_many(spec: FunctionSpec, X) -> np.ndarray:
    """Evaluate at each row of ``X`` (a 1-D input is read as m unary points)."""
    X = _points(spec, X)
    with np.errstate(over="ignore"):
        out = np.asarray(spec._eval(X), dtype=np.float64)
    if np.isnan(out).any() or (out < 0).any():
        raise EvalDomainError(f"{spec.family} produced a value outside [0, inf]")
    return out


def evaluate(spec: FunctionSpec, x) -> ExtReal:
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    return ExtReal(evaluate_many(spec, x[None, :])[0])


def _check_positive(name, v, allow_zero=False):
    v = float(v)
    ok = (v >= 0 if allow_zero else v > 0) and math.isfinite(v)
    if not ok:
        raise BadParameters(f"{name} must be {'nonnegative' if allow_zero else 'positive'} and finite, got {v!r}")
    return v


# unary families ------------------------------------------------------------

@dataclass(frozen=True)
class Power(FunctionSpec):
    p: float
    family: ClassVar[str] = "Power"
    arity: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "p", _check_positive("p", self.p))

    def _eval(self, X):
        return X[:, 0] ** self.p

    def params(self):
        return {"p": self.p}


@dataclass(frozen=True)
class Linear(FunctionSpec):
    c: float
    family: ClassVar[str] = "Linear"
    arity: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "c", _check_positive("c", self.c, allow_zero=True))

    def _eval(self, X):
        return self.c * X[:, 0]

    def params(self):
        return {"c": self.c}


@dataclass(frozen=True)
class _LogFamily(FunctionSpec):
    """``core(x)`` on ``]0, cutoff]``, then the chord line through the origin."""

    cutoff: float = LOG_CUTOFF
    arity: ClassVar[int] = 1

    def __post_init__(self):
        c = float(self.cutoff)
        # derivative of x*ln(x)^2 is positive only below e^-2
        if not (0 < c <= LOG_CUTOFF * (1 + 1e-12)):
            raise BadParameters(f"cutoff must lie in ]0, e^-2], got {c!r}")
        object.__setattr__(self, "cutoff", min(c, LOG_CUTOFF))

    def _core(self, x):
        raise NotImplementedError

    def _eval(self, X):
        x = X[:, 0]
        out = np.zeros_like(x)
        low = (x > 0) & (x <= self.cutoff)
        out[low] = self._core(x[low])
        high = x > self.cutoff
        out[high] = x[high] * (self._core(np.array([self.cutoff]))[0] / self.cutoff)
        return out

    def params(self):
        return {} if self.cutoff == LOG_CUTOFF else {"cutoff": self.cutoff}


@dataclass(frozen=True)
class LogShift(_LogFamily):
    family: ClassVar[str] = "LogShift"

    def _core(self, x):
        return x / np.log(x) ** 2


@dataclass(frozen=True)
class LogFactor(_LogFamily):
    family: ClassVar[str] = "LogFactor"

    def _core(self, x):
        return x * np.log(x) ** 2


def _interp_exact(x, xs, vs):
    """Piecewise-linear interpolation through ``(xs, vs)`` that hits node values exactly."""
    out = np.interp(x, xs, vs)
    pos = np.searchsorted(xs, x)
    pos = np.clip(pos, 0, len(xs) - 1)
    hit = xs[pos] == x
    out[hit] = vs[pos[hit]]
    return out


ANCHOR_FLOOR = 1e-300


@dataclass(frozen=True)
class BandOscillator(FunctionSpec):
    """Piecewise-linear h with h(q^k) = a*q^k for odd k and b*q^k for even k >= 2.

    Beyond the largest anchor ``q`` the function continues with slope ``b``.
    Chords between points of the two lines stay between them, so
    ``a*x <= h(x) <= b*x`` everywhere.
    """

    a: float
    b: float
    q: float
    family: ClassVar[str] = "BandOscillator"
    arity: ClassVar[int] = 1

    def __post_init__(self):
        a, b, q = (float(v) for v in (self.a, self.b, self.q))
        if not (0 < a < b < INF):
            raise BadParameters(f"need 0 < a < b < inf, got a={a!r}, b={b!r}")
        if not (0 < q < a / b):
            raise BadParameters(f"need 0 < q < a/b = {a / b!r}, got q={q!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "q", q)
        # scalar pow, so that anchors match q ** k computed in plain Python
        depth = int(math.ceil(math.log(ANCHOR_FLOOR) / math.log(q))) + 1
        object.__setattr__(self, "_qpow", np.array([q ** k for k in range(depth + 2)]))

    def anchor_value(self, k):
        k = np.asarray(k)
        return np.where(k % 2 == 1, self.a, self.b) * self._qpow[k]

    def _eval(self, X):
        x = X[:, 0]
        out = np.zeros_like(x)
        big = x > self.q
        out[big] = self.a * self.q + self.b * (x[big] - self.q)
        mid = (x > 0) & ~big
        xm = x[mid]
        qp = self._qpow
        last = len(qp) - 2
        # x lies in [q^(k+1), q^k]; the float log estimate is corrected once each way
        k = np.clip(np.floor(np.log(xm) / math.log(self.q)), 1, last).astype(np.int64)
        k = np.where((xm > qp[k]) & (k > 1), k - 1, k)
        k = np.where((xm < qp[k + 1]) & (k < last), k + 1, k)
        hi_x, lo_x = qp[k], qp[k + 1]
        hi_v, lo_v = self.anchor_value(k), self.anchor_value(k + 1)
        val = lo_v + (xm - lo_x) * ((hi_v - lo_v) / (hi_x - lo_x))
        val = np.where(xm == hi_x, hi_v, np.where(xm == lo_x, lo_v, val))
        # below the anchor floor stay on the last chord through 0
        val = np.where(xm < lo_x, xm * (lo_v / lo_x), val)
        out[mid] = val
        return out

    def anchors(self, t_min: float = 0.0) -> np.ndarray:
        qp = self._qpow[1:]
        return qp[qp >= max(t_min, ANCHOR_FLOOR)]

    def params(self):
        return {"a": self.a, "b": self.b, "q": self.q}


def degenerate_anchor_points(k_max: int) -> np.ndarray:
    """``x_k = 2^(-2^k)`` for k = 1..k_max (decreasing)."""
    return np.array([2.0 ** -(2 ** k) for k in range(1, k_max + 1)])


@dataclass(frozen=True)
class DegenerateOscillator(FunctionSpec):
    """Piecewise-linear h through x_k^(5/4) (odd k) and x_k^(3/4) (even k), x_k = 2^(-2^k).

    Above x_1 the chord slope h(x_1)/x_1 continues; below the last anchor
    the function is closed linearly to the origin.
    """

    k_max: int = 8
    family: ClassVar[str] = "DegenerateOscillator"
    arity: ClassVar[int] = 1

    def __post_init__(self):
        if int(self.k_max) != self.k_max or not 1 <= self.k_max <= 8:
            raise BadParameters(f"k_max must be an integer in [1, 8], got {self.k_max!r}")
        object.__setattr__(self, "k_max", int(self.k_max))
        xs, vs = self.anchor_table()
        if not (np.all(np.diff(xs) > 0) and np.all(np.diff(vs) > 0)):
            raise BadParameters("anchor values are not increasing")  # pragma: no cover

    def anchor_table(self):
        """Anchors in increasing x order, as ``(xs, values)``."""
        k = np.arange(1, self.k_max + 1)
        xs = degenerate_anchor_points(self.k_max)
        vs = np.where(k % 2 == 1, xs ** 1.25, xs ** 0.75)
        return xs[::-1].copy(), vs[::-1].copy()

    def _eval(self, X):
        x = X[:, 0]
        xs, vs = self.anchor_table()
        out = _interp_exact(x, np.concatenate(([0.0], xs)), np.concatenate(([0.0], vs)))
        top = x > xs[-1]
        out[top] = x[top] * (vs[-1] / xs[-1])
        return out

    def anchors(self, t_min: float = 0.0) -> np.ndarray:
        xs = degenerate_anchor_points(self.k_max)
        return xs[xs >= t_min]

    def params(self):
        return {"k_max": self.k_max}

    def to_json(self):
        xs, vs = self.anchor_table()
        return {"family": self.family, "k_max": self.k_max,
                "anchors": [[float(x), float(v)] for x, v in zip(xs[::-1], vs[::-1])]}


# n-ary families ------------------------------------------------------------

@dataclass(frozen=True)
class Max(FunctionSpec):
    family: ClassVar[str] = "Max"

    def _eval(self, X):
        return X.max(axis=1)


@dataclass(frozen=True)
class Median(FunctionSpec):
    family: ClassVar[str] = "Median"

    def _eval(self, X):
        return np.median(X, axis=1)


@dataclass(frozen=True)
class WeightedSum(FunctionSpec):
    w: tuple

    family: ClassVar[str] = "WeightedSum"

    def __post_init__(self):
        w = tuple(_check_positive("weight", v, allow_zero=True) for v in np.atleast_1d(self.w))
        if not w:
            raise BadParameters("WeightedSum needs at least one weight")
        object.__setattr__(self, "w", w)

    @property
    def arity(self):
        return len(self.w)

    def _eval(self, X):
        out = np.zeros(X.shape[0])
        for i, wi in enumerate(self.w):
            out += wi * X[:, i]
        return out

    def params(self):
        return {"w": list(self.w)}


@dataclass(frozen=True)
class LogProd(FunctionSpec):
    """``ln(prod(1 + x_i))``, summed as logs."""

    family: ClassVar[str] = "LogProd"

    def _eval(self, X):
        return np.log1p(X).sum(axis=1)


@dataclass(frozen=True)
class ExpSum(FunctionSpec):
    """``sum(exp(x_i)) - n``."""

    family: ClassVar[str] = "ExpSum"

    def _eval(self, X):
        return np.expm1(X).sum(axis=1)


def _require_unary(spec, what):
    if not isinstance(spec, FunctionSpec) or spec.arity != 1:
        raise ArityMismatch(f"{what} needs a unary spec, got {spec!r}")


@dataclass(frozen=True)
class MeanComposed(FunctionSpec):
    """``h(mean(x))`` for a unary ``inner``."""

    inner: FunctionSpec
    family: ClassVar[str] = "MeanComposed"

    def __post_init__(self):
        _require_unary(self.inner, "MeanComposed")

    def _eval(self, X):
        return self.inner._eval(X.mean(axis=1, keepdims=True))

    def anchors(self, t_min=0.0):
        return self.inner.anchors(t_min)

    def params(self):
        return {"inner": self.inner.to_json()}


@dataclass(frozen=True, eq=False)
class Table(FunctionSpec):
    """Sampled values on a lattice; evaluable only at lattice points."""

    fn: GridFnND
    family: ClassVar[str] = "Table"

    def __post_init__(self):
        if isinstance(self.fn, GridFn1D):
            object.__setattr__(self, "fn", self.fn.as_nd())

    def __eq__(self, other):
        return isinstance(other, Table) and self.fn == other.fn

    __hash__ = None

    @property
    def arity(self):
        return self.fn.ndim

    def _eval(self, X):
        idx = []
        for d, axis in enumerate(self.fn.lattice.axes):
            k = np.rint(X[:, d] / axis.step)
            if (k > axis.count).any():
                raise EvalDomainError("point outside the table's lattice")
            if (np.abs(k * axis.step - X[:, d]) > 1e-9 * np.maximum(X[:, d], axis.step)).any():
                raise EvalDomainError("Table is only defined at its lattice points")
            idx.append(k.astype(np.int64))
        return self.fn.values[tuple(idx)]

    def params(self):
        lat = self.fn.lattice
        return {"step": list(lat.steps), "count": [a.count for a in lat.axes],
                "values": _encode_values(self.fn.values)}


@dataclass(frozen=True)
class Diagonal(FunctionSpec):
    inner: FunctionSpec
    n: int
    family: ClassVar[str] = "Diagonal"
    arity: ClassVar[int] = 1

    def _eval(self, X):
        return self.inner._eval(np.repeat(X[:, :1], self.n, axis=1))

    def anchors(self, t_min=0.0):
        return self.inner.anchors(t_min)

    def params(self):
        return {"inner": self.inner.to_json(), "n": self.n}


@dataclass(frozen=True)
class Marginal(FunctionSpec):
    """``x -> A(x * e_axis)``; ``axis`` counts from 1."""

    inner: FunctionSpec
    n: int
    axis: int
    family: ClassVar[str] = "Marginal"
    arity: ClassVar[int] = 1

    def _eval(self, X):
        pts = np.zeros((X.shape[0], self.n))
        pts[:, self.axis - 1] = X[:, 0]
        return self.inner._eval(pts)

    def anchors(self, t_min=0.0):
        scale = self.n if isinstance(self.inner, MeanComposed) else 1
        return self.inner.anchors(t_min / scale) * scale

    def params(self):
        return {"inner": self.inner.to_json(), "n": self.n, "axis": self.axis}


def _check_arity(spec: FunctionSpec, n: int):
    if int(n) != n or n < 1:
        raise ArityMismatch(f"arity must be a positive integer, got {n!r}")
    if spec.arity is not None and spec.arity != n:
        raise ArityMismatch(f"{spec.family} has arity {spec.arity}, not {n}")


def diagonal(spec: FunctionSpec, n: int) -> FunctionSpec:
    _check_arity(spec, n)
    if n == 1 and spec.arity == 1:
        return spec
    return Diagonal(spec, int(n))


def marginal(spec: FunctionSpec, n: int, i: int) -> FunctionSpec:
    _check_arity(spec, n)
    if int(i) != i or not 1 <= i <= n:
        raise BadAxis(f"axis must be in 1..{n}, got {i!r}")
    if n == 1 and spec.arity == 1:
        return spec
    return Marginal(spec, int(n), int(i))


def make_band_oscillator(a: float, b: float, q: float) -> BandOscillator:
    return BandOscillator(a, b, q)


def make_degenerate_oscillator(k_max: int = 8) -> DegenerateOscillator:
    return DegenerateOscillator(k_max)


def known_slopes(spec: FunctionSpec) -> Optional[SlopeBounds]:
    """Closed-form (liminf, limsup) of h(t)/t at 0+, when the family determines them."""
    cf = SlopeBounds.closed_form
    if isinstance(spec, Power):
        if spec.p > 1:
            return cf(0.0, 0.0)
        if spec.p < 1:
            return cf(INF, INF)
        return cf(1.0, 1.0)
    if isinstance(spec, Linear):
        return cf(spec.c, spec.c)
    if isinstance(spec, LogShift):
        return cf(0.0, 0.0)
    if isinstance(spec, LogFactor):
        return cf(INF, INF)
    if isinstance(spec, BandOscillator):
        return cf(spec.a, spec.b)
    if isinstance(spec, DegenerateOscillator):
        # the family being modelled; the k_max cut only moves the tail below 2^-2^k_max
        return cf(0.0, INF)
    if isinstance(spec, Diagonal):
        return _diagonal_slopes(spec.inner, spec.n)
    if isinstance(spec, Marginal):
        return _marginal_slopes(spec.inner, spec.n, spec.axis)
    return None


def _diagonal_slopes(inner, n):
    cf = SlopeBounds.closed_form
    if isinstance(inner, (Max, Median)):
        return cf(1.0, 1.0)
    if isinstance(inner, WeightedSum):
        s = math.fsum(inner.w)
        return cf(s, s)
    if isinstance(inner, (LogProd, ExpSum)):
        return cf(float(n), float(n))
    if isinstance(inner, MeanComposed):
        return known_slopes(inner.inner)
    if inner.arity == 1:
        return known_slopes(inner)
    return None


def _marginal_slopes(inner, n, axis):
    cf = SlopeBounds.closed_form
    if isinstance(inner, Max):
        return cf(1.0, 1.0)
    if isinstance(inner, Median):
        # median of one x and n-1 zeros
        c = 1.0 if n == 1 else (0.5 if n == 2 else 0.0)
        return cf(c, c)
    if isinstance(inner, WeightedSum):
        return cf(inner.w[axis - 1], inner.w[axis - 1])
    if isinstance(inner, (LogProd, ExpSum)):
        return cf(1.0, 1.0)
    if isinstance(inner, MeanComposed):
        s = known_slopes(inner.inner)
        return None if s is None else s.scaled(1.0 / n)
    if inner.arity == 1:
        return known_slopes(inner)
    return None


# sampling ------------------------------------------------------------------

def sample_nd(spec: FunctionSpec, lattice: LatticeND) -> GridFnND:
    _check_arity(spec, lattice.ndim)
    vals = evaluate_many(spec, lattice.points()).reshape(lattice.shape)
    return GridFnND(lattice, vals)


def sample_1d(spec: FunctionSpec, grid: Grid1D) -> GridFn1D:
    _check_arity(spec, 1)
    return GridFn1D(grid, evaluate_many(spec, grid.points))


# series --------------------------------------------------------------------

class SeriesSpec:
    kind: ClassVar[str] = ""

    def terms(self, J: int) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Harmonic(SeriesSpec):
    kind: ClassVar[str] = "Harmonic"

    def terms(self, J):
        return 1.0 / np.arange(1, J + 1)


def inverse(g: FunctionSpec, y: np.ndarray) -> np.ndarray:
    """Solve g(x) = y for an increasing unary g."""
    _require_unary(g, "inverse")
    y = np.asarray(y, dtype=np.float64)
    if isinstance(g, Power):
        return y ** (1.0 / g.p)
    if isinstance(g, Linear):
        if g.c == 0:
            raise BadSeries("a constant function has no inverse")
        return y / g.c
    out = np.empty_like(y)
    for i, yi in enumerate(y):
        hi = 1.0
        while evaluate(g, hi) < yi:
            hi *= 2.0
            if hi > 1e300:
                raise BadSeries(f"{g.family} never reaches {yi!r}")
        out[i] = brentq(lambda x: float(evaluate(g, x)) - yi, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)
    return out


@dataclass(frozen=True)
class InverseImage(SeriesSpec):
    """``a_j = g^{-1}(1/j)``."""

    g: FunctionSpec
    kind: ClassVar[str] = "InverseImage"

    def terms(self, J):
        return inverse(self.g, 1.0 / np.arange(1, J + 1))


@dataclass(frozen=True, eq=False)
class Explicit(SeriesSpec):
    values: tuple
    kind: ClassVar[str] = "Explicit"

    def terms(self, J):
        v = np.asarray(self.values, dtype=np.float64)
        if len(v) < J:
            raise BadSeries(f"only {len(v)} explicit terms, {J} requested")
        return v[:J]


# JSON ----------------------------------------------------------------------

def _encode_values(arr):
    return np.vectorize(lambda v: "inf" if math.isinf(v) else float(v), otypes=[object])(arr).tolist()


def _decode_number(v):
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "+inf", "infinity"):
            return INF
        raise BadParameters(f"unexpected string {v!r} where a number was expected")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise BadParameters(f"expected a number, got {v!r}")
    return float(v)


def _decode_values(v):
    if isinstance(v, list):
        return [_decode_values(x) for x in v]
    return _decode_number(v)


_SIMPLE = {cls.family: cls for cls in (Max, Median, LogProd, ExpSum)}
_INFORMATIONAL = {"anchors", "comment"}


def from_json(obj: dict) -> FunctionSpec:
    if not isinstance(obj, dict) or "family" not in obj:
        raise BadParameters("a function spec is a JSON object with a 'family' field")
    fam = obj["family"]
    args = {k: v for k, v in obj.items() if k != "family" and k not in _INFORMATIONAL}

    def take(*names, optional=()):
        unknown = set(args) - set(names) - set(optional)
        missing = set(names) - set(args)
        if unknown or missing:
            raise BadParameters(f"{fam}: unknown fields {sorted(unknown)}, missing {sorted(missing)}")
        return args

    try:
        if fam in _SIMPLE:
            take()
            return _SIMPLE[fam]()
        if fam == "Power":
            return Power(_decode_number(take("p")["p"]))
        if fam == "Linear":
            return Linear(_decode_number(take("c")["c"]))
        if fam in ("LogShift", "LogFactor"):
            a = take(optional=("cutoff",))
            cls = LogShift if fam == "LogShift" else LogFactor
            return cls(_decode_number(a["cutoff"])) if "cutoff" in a else cls()
        if fam == "BandOscillator":
            a = take("a", "b", "q")
            return BandOscillator(*(_decode_number(a[k]) for k in "abq"))
        if fam == "DegenerateOscillator":
            a = take(optional=("k_max",))
            return DegenerateOscillator(a.get("k_max", 8))
        if fam == "WeightedSum":
            return WeightedSum(tuple(_decode_number(v) for v in take("w")["w"]))
        if fam == "MeanComposed":
            return MeanComposed(from_json(take("inner")["inner"]))
        if fam == "Diagonal":
            a = take("inner", "n")
            return diagonal(from_json(a["inner"]), a["n"])
        if fam == "Marginal":
            a = take("inner", "n", "axis")
            return marginal(from_json(a["inner"]), a["n"], a["axis"])
        if fam == "Table":
            a = take("step", "count", "values")
            steps = np.atleast_1d(a["step"]).tolist()
            counts = np.atleast_1d(a["count"]).tolist()
            if len(steps) != len(counts):
                raise BadParameters("Table: step and count lists differ in length")
            lattice = LatticeND(tuple(Grid1D(_decode_number(s), c) for s, c in zip(steps, counts)))
            return Table(GridFnND(lattice, as_ext_array(_decode_values(a["values"]))))
    except (TypeError, KeyError) as exc:
        raise BadParameters(f"malformed {fam} spec: {exc}") from exc
    raise BadParameters(f"unknown family {fam!r}")


def dumps(spec: FunctionSpec) -> str:
    return json.dumps(spec.to_json(), sort_keys=True, indent=2)


def loads(text: str) -> FunctionSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParameters(f"invalid JSON: {exc}") from exc
    return from_json(obj)


__all__ = [
    "FunctionSpec", "Power", "Linear", "LogShift", "LogFactor", "BandOscillator",
    "DegenerateOscillator", "Max", "Median", "WeightedSum", "LogProd", "ExpSum",
    "MeanComposed", "Table", "Diagonal", "Marginal", "evaluate", "evaluate_many",
    "diagonal", "marginal", "make_band_oscillator", "make_degenerate_oscillator",
    "known_slopes", "sample_1d", "sample_nd", "SeriesSpec", "Harmonic", "InverseImage",
    "Explicit", "inverse", "from_json", "dumps", "loads", "AggregationError",
]
