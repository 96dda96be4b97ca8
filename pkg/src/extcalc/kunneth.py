"""Ext groups with tensor-power sources, assembled by the Künneth formula."""

from __future__ import annotations

import itertools
import math
from functools import reduce

from .complex import exterior_cross_effect_dims
from .groups import AbelianGroup, GradedGroup, kunneth_product
from .homology import homology_all

__all__ = [
    "compositions",
    "ext_tensorpower_lambda",
    "ext_tensorpower_lambda_closed",
    "ext_tensorpower_sd",
    "graded_ext_a_lambda",
    "graded_ext_a_sd",
    "kunneth_product",
]


def compositions(d: int, c: int) -> list[tuple[int, ...]]:
    """Ordered tuples of c positive integers summing to d, lexicographically."""
    if d < 1 or c < 1:
        raise ValueError("need d >= 1 and c >= 1")
    out = []
    for cuts in itertools.combinations(range(1, d), c - 1):
        bounds = (0,) + cuts + (d,)
        out.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
    return out


def graded_ext_a_sd(d: int) -> GradedGroup:
    return homology_all(d)


def graded_ext_a_lambda(d: int) -> GradedGroup:
    """Cohomology of the exterior-power complex; it has a single nonzero term."""
    dims = exterior_cross_effect_dims(d)
    support = [k for k, r in enumerate(dims) if r]
    if len(support) != 1:
        raise AssertionError(f"exterior complex for d={d} is not concentrated: {dims}")
    k = support[0]
    return GradedGroup({k: AbelianGroup(dims[k])})


def _tensor_power(parts: tuple[int, ...], factor) -> GradedGroup:
    # left to right association
    return reduce(kunneth_product, (factor(i) for i in parts))


def ext_tensorpower_sd(c: int, d: int) -> GradedGroup:
    total = GradedGroup()
    for parts in compositions(d, c) if c <= d else []:
        total = total + _tensor_power(parts, graded_ext_a_sd)
    return total


def ext_tensorpower_lambda(c: int, d: int) -> GradedGroup:
    total = GradedGroup()
    for parts in compositions(d, c) if c <= d else []:
        total = total + _tensor_power(parts, graded_ext_a_lambda)
    return total


def ext_tensorpower_lambda_closed(c: int, d: int) -> GradedGroup:
    """Z^{C(d-1, c-1)} in degree d - c."""
    if c > d:
        return GradedGroup()
    return GradedGroup({d - c: AbelianGroup(math.comb(d - 1, c - 1))})
