import itertools
import math

import numpy as np
import pytest

from aggtransform.catalog import ExpSum, LogProd, Max, Median, Power, sample_1d, sample_nd
from aggtransform.errors import AggregationError, LengthMismatch, NonZeroAtOrigin, NotMonotone
from aggtransform.numerics import (ExtReal, Grid1D, GridFn1D, GridFnND, LatticeND, ext_sum,
                                   make_grid_fn_1d, make_grid_fn_nd, validate_properness)

INF = math.inf


class TestExtReal:
    def test_rejects_nan_and_negatives(self):
        with pytest.raises(AggregationError):
            ExtReal(float("nan"))
        with pytest.raises(AggregationError):
            ExtReal(-1e-300)

    def test_saturates(self):
        assert ExtReal(INF) + 3 == INF
        assert 2 + ExtReal(INF) == INF
        assert isinstance(ExtReal(1) + 2, ExtReal)

    def test_infinity_is_maximal(self):
        assert ExtReal(INF) > ExtReal(1e308)
        assert not ExtReal(INF).is_finite

    def test_sum_is_order_free(self):
        pool = [0.0, 0.5, 1.0, 2.0, INF]
        for size in range(1, 4):
            for combo in itertools.product(pool, repeat=size):
                sums = {ext_sum(p) for p in itertools.permutations(combo)}
                assert len(sums) == 1
                a = combo[0]
                rest = ext_sum(combo[1:])
                assert ExtReal(a) + rest == ext_sum(combo)


class TestGrids:
    def test_points(self):
        g = Grid1D(0.25, 4)
        assert g.points.tolist() == [0, 0.25, 0.5, 0.75, 1.0]
        assert g.x_max == 1.0
        assert g.index_of(0.75) == 3

    def test_off_grid_index(self):
        with pytest.raises(AggregationError):
            Grid1D(0.25, 4).index_of(0.3)

    @pytest.mark.parametrize("step,count", [(0, 3), (-1, 3), (INF, 3), (1, 0), (1, 2.5)])
    def test_bad_grid(self, step, count):
        with pytest.raises(AggregationError):
            Grid1D(step, count)

    def test_nonuniform_rejected(self):
        assert Grid1D.from_points([0, 0.5, 1.0]) == Grid1D(0.5, 2)
        with pytest.raises(AggregationError):
            Grid1D.from_points([0, 0.5, 1.2])

    def test_lattice(self):
        lat = LatticeND.uniform(1.0, 2, 2)
        assert lat.shape == (3, 3)
        assert lat.size == 9
        pts = lat.points()
        assert pts.shape == (9, 2)
        assert pts[5].tolist() == [1, 2]
        assert lat.sublattice(2).shape == (2, 2)
        with pytest.raises(AggregationError):
            LatticeND.uniform(1.0, 3, 2).sublattice(2)


class TestGridFn:
    def test_valid(self):
        f = make_grid_fn_1d(Grid1D(1, 2), [0, 1, 2])
        assert f[2] == 2
        assert f.at(1.0) == 1

    def test_not_monotone_reports_index(self):
        with pytest.raises(NotMonotone) as exc:
            make_grid_fn_1d(Grid1D(1, 2), [0, 2, 1])
        assert exc.value.index == 2

    def test_nonzero_origin(self):
        with pytest.raises(NonZeroAtOrigin):
            make_grid_fn_1d(Grid1D(1, 2), [1, 1, 2])

    def test_length(self):
        with pytest.raises(LengthMismatch):
            make_grid_fn_1d(Grid1D(1, 2), [0, 1])

    def test_values_are_read_only(self):
        f = make_grid_fn_1d(Grid1D(1, 2), [0, 1, 2])
        with pytest.raises(ValueError):
            f.values[1] = 5

    def test_nd_validation(self):
        lat = LatticeND.uniform(1, 1, 2)
        make_grid_fn_nd(lat, [[0, 1], [1, 1]])
        with pytest.raises(NotMonotone) as exc:
            make_grid_fn_nd(lat, [[0, 1], [1, 0.5]])
        assert exc.value.index == (1, 1)
        with pytest.raises(NonZeroAtOrigin):
            make_grid_fn_nd(lat, [[1, 1], [1, 1]])

    def test_every_breaking_mutation_is_rejected(self):
        rng = np.random.default_rng(7)
        base = np.cumsum(rng.integers(0, 3, size=(4, 4)), axis=0).cumsum(axis=1).astype(float)
        base -= base[0, 0]
        lat = LatticeND.uniform(1, 3, 2)
        GridFnND(lat, base)
        for idx in np.ndindex(4, 4):
            for delta in (-0.5, 0.5, 10.0):
                v = base.copy()
                v[idx] += delta
                breaks = v[0, 0] != 0 or (np.diff(v, axis=0) < 0).any() or (np.diff(v, axis=1) < 0).any()
                if not breaks:
                    GridFnND(lat, v)
                    continue
                with pytest.raises(AggregationError):
                    GridFnND(lat, v)

    def test_restrict_and_to_1d(self):
        f = GridFn1D(Grid1D(0.5, 4), [0, 1, 2, 3, 4]).as_nd()
        g = f.restrict(2).to_1d()
        assert g.grid == Grid1D(1.0, 2)
        assert g.values.tolist() == [0, 2, 4]


class TestSampling:
    def test_power(self):
        assert sample_1d(Power(2), Grid1D(1, 4)).values.tolist() == [0, 1, 4, 9, 16]
        got = sample_1d(Power(0.5), Grid1D(1, 4)).values
        assert got.tolist() == [0, 1, math.sqrt(2), math.sqrt(3), 2]

    def test_expsum_1d(self):
        got = sample_1d(ExpSum(), Grid1D(1, 2)).values
        assert got == pytest.approx([0, math.e - 1, math.e ** 2 - 1], rel=1e-15)

    def test_samples_equal_direct_evaluation(self):
        from aggtransform.catalog import BandOscillator, evaluate
        for spec in (ExpSum(), Power(1.5), BandOscillator(1, 2, 0.4)):
            grid = Grid1D(0.03, 40)
            got = sample_1d(spec, grid).values
            assert [float(evaluate(spec, x)) for x in grid.points] == got.tolist()

    def test_nd(self):
        f = sample_nd(Max(), LatticeND.uniform(1, 2, 2))
        assert f[(2, 1)] == 2
        m = sample_nd(Median(), LatticeND.uniform(1, 3, 3))
        assert (m.values[0, 0, :] == 0).all()
        lp = sample_nd(LogProd(), LatticeND.uniform(1, 1, 2))
        assert lp[(1, 1)] == pytest.approx(2 * math.log(2), abs=1e-15)


class TestProperness:
    def test_max(self):
        r = validate_properness(sample_nd(Max(), LatticeND.uniform(1, 2, 2)))
        assert r.is_aggregation and r.is_proper
        assert r.witness_positive_finite == (1, 1)

    def test_all_zero(self):
        r = validate_properness(GridFnND(LatticeND.uniform(1, 2, 2), np.zeros((3, 3))))
        assert r.is_aggregation and not r.is_proper
        assert r.witness_positive_finite is None

    def test_infinite_interior(self):
        v = np.array([[0, 1, 1], [1, INF, INF], [1, INF, INF]])
        r = validate_properness(GridFnND(LatticeND.uniform(1, 2, 2), v))
        assert not r.is_proper
        assert r.infinite_points[0] == (1, 1)
