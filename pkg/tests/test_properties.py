"""Invariants of the closures on random monotone grid functions.

Values are small integers (plus optional inf tails) so every sum is exact in
float64 and the identities can be checked with zero tolerance.
"""

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from aggtransform import kernels
from aggtransform.numerics import ExtReal, Grid1D, GridFn1D, GridFnND, LatticeND, ext_sum
from aggtransform.oracle import brute_nd, brute_sub_1d, brute_super_1d
from aggtransform.transform import (Direction, subadditive_1d, subadditive_nd, superadditive_1d,
                                    superadditive_nd)

CASES = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
INF = np.inf


@st.composite
def monotone_1d(draw, max_n=40, with_inf=True):
    n = draw(st.integers(1, max_n))
    steps = draw(st.lists(st.integers(0, 5), min_size=n, max_size=n))
    v = np.concatenate(([0.0], np.cumsum(steps, dtype=float)))
    if with_inf and draw(st.booleans()):
        v[draw(st.integers(1, n)):] = INF
    return GridFn1D(Grid1D(draw(st.sampled_from([1.0, 0.5, 0.125])), n), v)


def pairs(shape):
    for x in np.ndindex(*shape):
        if any(x):
            yield x


def check_pairwise(vals, sub):
    """H[x+y] <= H[x] + H[y] (sub) or >= (super) for every x, y with x + y in range."""
    shape = vals.shape
    for x in pairs(shape):
        head = tuple(slice(0, n - xi) for n, xi in zip(shape, x))
        tail = tuple(slice(xi, n) for n, xi in zip(shape, x))
        total, parts = vals[tail], vals[x] + vals[head]
        ok = total <= parts if sub else total >= parts
        assert ok.all()


@st.composite
def nd_fn(draw, max_dim=3, max_axis=5, with_inf=True):
    ndim = draw(st.integers(1, max_dim))
    counts = draw(st.lists(st.integers(1, max_axis), min_size=ndim, max_size=ndim))
    shape = tuple(c + 1 for c in counts)
    size = int(np.prod(shape))
    inc = np.array(draw(st.lists(st.integers(0, 3), min_size=size, max_size=size)), dtype=float)
    v = inc.reshape(shape)
    for axis in range(ndim):
        v = np.cumsum(v, axis=axis)
    v = v - v.flat[0]
    if with_inf and draw(st.booleans()):
        corner = tuple(draw(st.integers(0, m - 1)) for m in shape)
        if any(corner):
            v[tuple(slice(c, None) for c in corner)] = INF
    return GridFnND(LatticeND(tuple(Grid1D(1.0, c) for c in counts)), v)


CLOSURES_1D = [(subadditive_1d, True), (superadditive_1d, False)]
CLOSURES_ND = [(subadditive_nd, True), (superadditive_nd, False)]


class TestOneDimensional:
    @CASES
    @given(monotone_1d())
    def test_sandwich(self, h):
        assert (subadditive_1d(h).values <= h.values).all()
        assert (h.values <= superadditive_1d(h).values).all()

    @CASES
    @given(monotone_1d())
    def test_sub_and_superadditive(self, h):
        check_pairwise(subadditive_1d(h).values, sub=True)
        check_pairwise(superadditive_1d(h).values, sub=False)

    @CASES
    @given(monotone_1d())
    def test_idempotent(self, h):
        for closure, _ in CLOSURES_1D:
            once = closure(h).fn
            assert closure(once).fn == once

    @CASES
    @given(monotone_1d())
    def test_monotone_output(self, h):
        for closure, _ in CLOSURES_1D:
            v = closure(h).values
            assert v[0] == 0 and (np.diff(v[np.isfinite(v)]) >= 0).all()
            assert (v[1:] >= v[:-1]).all()

    @CASES
    @given(monotone_1d(with_inf=False), st.data())
    def test_order_preserving(self, h, data):
        bump = data.draw(st.lists(st.integers(0, 2), min_size=len(h) - 1, max_size=len(h) - 1))
        bigger = GridFn1D(h.grid, h.values + np.concatenate(([0.0], np.cumsum(bump, dtype=float))))
        for closure, _ in CLOSURES_1D:
            assert (closure(h).values <= closure(bigger).values).all()

    @CASES
    @given(monotone_1d(max_n=12))
    def test_oracle(self, h):
        sub, sup = subadditive_1d(h).values, superadditive_1d(h).values
        for k in range(1, len(h)):
            assert brute_sub_1d(h, k)[0] == sub[k]
            assert brute_super_1d(h, k)[0] == sup[k]

    @pytest.mark.skipif("numba" not in kernels.available_backends(), reason="numba not installed")
    @CASES
    @given(monotone_1d(max_n=80))
    def test_backends(self, h):
        for closure, _ in CLOSURES_1D:
            a = closure(h, witnesses=True, backend="numpy")
            b = closure(h, witnesses=True, backend="numba")
            assert np.array_equal(a.values, b.values) and np.array_equal(a.choices, b.choices)


class TestMultiDimensional:
    @CASES
    @given(nd_fn())
    def test_sandwich(self, A):
        assert (subadditive_nd(A).values <= A.values).all()
        assert (A.values <= superadditive_nd(A).values).all()

    @CASES
    @given(nd_fn())
    def test_sub_and_superadditive(self, A):
        check_pairwise(subadditive_nd(A).values, sub=True)
        check_pairwise(superadditive_nd(A).values, sub=False)

    @CASES
    @given(nd_fn())
    def test_idempotent(self, A):
        for closure, _ in CLOSURES_ND:
            once = closure(A).fn
            assert closure(once).fn == once

    @CASES
    @given(nd_fn())
    def test_monotone_output(self, A):
        # the GridFnND constructor re-validates origin and monotonicity
        for closure, _ in CLOSURES_ND:
            out = closure(A).fn
            GridFnND(out.lattice, np.array(out.values))

    @CASES
    @given(nd_fn(max_dim=2, max_axis=4))
    def test_oracle(self, A):
        sub, sup = subadditive_nd(A).values, superadditive_nd(A).values
        for idx in np.ndindex(*A.values.shape):
            assert brute_nd(A, idx, Direction.SUB)[0] == sub[idx]
            assert brute_nd(A, idx, Direction.SUPER)[0] == sup[idx]

    @pytest.mark.skipif("numba" not in kernels.available_backends(), reason="numba not installed")
    @CASES
    @given(nd_fn(max_axis=6))
    def test_thread_determinism(self, A):
        out = []
        saved = os.environ.get("AGG_THREADS")
        try:
            for threads in ("1", "4"):
                os.environ["AGG_THREADS"] = threads
                out.append([closure(A, witnesses=True, backend="numba") for closure, _ in CLOSURES_ND])
        finally:
            if saved is None:
                os.environ.pop("AGG_THREADS", None)
            else:
                os.environ["AGG_THREADS"] = saved
        for a, b in zip(*out):
            assert np.array_equal(a.values, b.values) and np.array_equal(a.choices, b.choices)

    @pytest.mark.skipif("numba" not in kernels.available_backends(), reason="numba not installed")
    @CASES
    @given(nd_fn(max_axis=6))
    def test_backends(self, A):
        for closure, _ in CLOSURES_ND:
            a = closure(A, witnesses=True, backend="numpy")
            b = closure(A, witnesses=True, backend="numba")
            assert np.array_equal(a.values, b.values) and np.array_equal(a.choices, b.choices)


@CASES
@given(st.lists(st.one_of(st.integers(0, 10).map(float), st.just(INF),
                          st.floats(0, 1e6, allow_nan=False)), max_size=6), st.randoms())
def test_ext_sum_order_free(values, rnd):
    total = ext_sum(values)
    shuffled = list(values)
    rnd.shuffle(shuffled)
    exact = all(v == INF or v == int(v) for v in values)
    if exact or INF in values:
        assert ext_sum(shuffled) == total
    assert isinstance(total, ExtReal) and total >= 0
