"""Exhaustive decomposition enumeration, an independent check on the closures.

Sums of values are permutation invariant, so only partitions (multisets of
parts) are enumerated. Among optimal decompositions the witness is the one
whose ascending part sequence is lexicographically smallest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import TooLarge
from .numerics import ExtReal, GridFn1D, as_grid_fn_nd
from .transform import Direction

MAX_1D = 12
MAX_ND_AXIS = 5
MAX_ND_DIM = 2


@dataclass(frozen=True)
class DecompositionWitness:
    parts: tuple
    total_value: ExtReal

    def target(self):
        if not self.parts:
            return 0
        if isinstance(self.parts[0], tuple):
            return tuple(int(v) for v in np.sum(self.parts, axis=0))
        return sum(self.parts)


def integer_partitions(k: int, largest: int | None = None) -> Iterator[list]:
    """Partitions of ``k`` as nonincreasing part lists."""
    if k == 0:
        yield []
        return
    largest = k if largest is None else min(largest, k)
    for p in range(largest, 0, -1):
        for rest in integer_partitions(k - p, p):
            yield [p] + rest


def vector_partitions(target: tuple, largest: tuple | None = None) -> Iterator[list]:
    """Multisets of nonzero vectors summing to ``target``, parts in nonincreasing lex order."""
    if not any(target):
        yield []
        return
    ranges = [range(t, -1, -1) for t in target]
    for p in _product(ranges):
        if not any(p) or (largest is not None and p > largest):
            continue
        rest_target = tuple(t - v for t, v in zip(target, p))
        for rest in vector_partitions(rest_target, p):
            yield [p] + rest


def _product(ranges):
    if not ranges:
        yield ()
        return
    for v in ranges[0]:
        for tail in _product(ranges[1:]):
            yield (v,) + tail


def _select(candidates, value_of, direction):
    best_val, best_key = None, None
    for parts in candidates:
        val = math.fsum(value_of(p) for p in parts)
        key = tuple(sorted(parts))
        if best_val is None:
            better = True
        elif direction is Direction.SUB:
            better = val < best_val or (val == best_val and key < best_key)
        else:
            better = val > best_val or (val == best_val and key < best_key)
        if better:
            best_val, best_key = val, key
    return ExtReal(best_val), DecompositionWitness(best_key, ExtReal(best_val))


def _check_1d(h: GridFn1D, k: int):
    if len(h.values) - 1 > MAX_1D:
        raise TooLarge(f"oracle handles grids with at most {MAX_1D} steps")
    if not 0 < k <= len(h.values) - 1:
        raise TooLarge(f"target index {k} outside 1..{len(h.values) - 1}")


def brute_sub_1d(h: GridFn1D, k: int):
    _check_1d(h, k)
    vals = h.values
    return _select(integer_partitions(k), lambda p: vals[p], Direction.SUB)


def brute_super_1d(h: GridFn1D, k: int):
    _check_1d(h, k)
    vals = h.values
    return _select(integer_partitions(k), lambda p: vals[p], Direction.SUPER)


def brute_nd(A, target, direction):
    direction = Direction(direction)
    vals = as_grid_fn_nd(A).values
    target = tuple(int(t) for t in np.atleast_1d(target))
    if vals.ndim > MAX_ND_DIM or max(vals.shape) - 1 > MAX_ND_AXIS:
        raise TooLarge(f"oracle handles n <= {MAX_ND_DIM} and at most {MAX_ND_AXIS} steps per axis")
    if len(target) != vals.ndim or any(t < 0 or t >= n for t, n in zip(target, vals.shape)):
        raise TooLarge(f"target {target} is not a lattice index")
    if not any(target):
        return ExtReal(0.0), DecompositionWitness((), ExtReal(0.0))
    return _select(vector_partitions(target), lambda p: vals[p], direction)
