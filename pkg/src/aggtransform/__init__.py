"""Subadditive and superadditive transforms of aggregation functions on grids."""

from .errors import AggregationError, BudgetError
from .numerics import (ExtReal, Grid1D, GridFn1D, GridFnND, LatticeND, PropernessReport,
                       make_grid_fn_1d, make_grid_fn_nd, validate_properness)
from .slopes import SlopeBounds, SlopeSource, SlopeVerdict
from .catalog import (BandOscillator, DegenerateOscillator, Diagonal, ExpSum, Explicit,
                      FunctionSpec, Harmonic, InverseImage, Linear, LogFactor, LogProd, LogShift,
                      Marginal, Max, MeanComposed, Median, Power, Table, WeightedSum, diagonal,
                      evaluate, evaluate_many, known_slopes, make_band_oscillator,
                      make_degenerate_oscillator, marginal, sample_1d, sample_nd)
from .transform import (BoundSide, CompareReport, Direction, RefinementStudy, TransformResult,
                        additivity_deviation, closed_form_shortcut, double_transform_compare, refine,
                        subadditive_1d, subadditive_nd, superadditive_1d, superadditive_nd)
from .analysis import (MembershipVerdict, SeriesReport, classify_membership, estimate_slope_bounds,
                       series_diagnostic)
from .oracle import DecompositionWitness, brute_nd, brute_sub_1d, brute_super_1d

__version__ = "0.1.0"
