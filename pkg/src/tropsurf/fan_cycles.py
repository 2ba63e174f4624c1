"""Weighted balanced fan 1-cycles in R^N and their degree and boundary
behaviour inside a fan tropical plane.

A cycle is a finite set of rays with integer weights whose weighted
primitive directions sum to zero.  Relative to a unimodular basis
u_1, ..., u_N (with u_0 closing the sum to zero), every direction has a
unique positive decomposition v = sum r(i) u_i with all r(i) >= 0 and at
least one r(i) = 0; the numbers sum_e w_e r_e(i) are independent of i and
give the degree of the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import CycleError
from .intlinalg import primitive


@dataclass(frozen=True)
class FanCycle:
    """rays: tuple of (direction, weight); directions primitive, distinct."""

    dim: int
    rays: tuple

    def __post_init__(self):
        merged = {}
        for direction, weight in self.rays:
            direction = tuple(int(x) for x in direction)
            if len(direction) != self.dim:
                raise CycleError("ray dimension mismatch")
            if all(x == 0 for x in direction):
                raise CycleError("zero direction in a cycle")
            prim, mult = primitive(direction)
            merged[prim] = merged.get(prim, 0) + int(weight) * mult
        rays = tuple(
            (d, w) for d, w in sorted(merged.items()) if w != 0
        )
        object.__setattr__(self, "rays", rays)

    def __add__(self, other):
        if self.dim != other.dim:
            raise CycleError("cannot add cycles in different ambients")
        return FanCycle(self.dim, self.rays + other.rays)

    def scale(self, c):
        return FanCycle(self.dim, tuple((d, c * w) for d, w in self.rays))


def is_balanced(cycle):
    return all(
        sum(w * d[k] for d, w in cycle.rays) == 0 for k in range(cycle.dim)
    )


def require_balanced(cycle):
    if not is_balanced(cycle):
        raise CycleError("cycle is not balanced")


def positive_decomposition(basis, v):
    """r(0), ..., r(N) with v = sum r(i) u_i, r >= 0, min r = 0."""
    a = basis.decompose(v)
    m = min(0, min(a))
    return (-m,) + tuple(x - m for x in a)


def degree(cycle, basis):
    """deg(C) = sum_e w_e r_e(i); checked to be the same for every i."""
    require_balanced(cycle)
    if not cycle.rays:
        return 0
    totals = [0] * (cycle.dim + 1)
    for d, w in cycle.rays:
        r = positive_decomposition(basis, d)
        for i in range(cycle.dim + 1):
            totals[i] += w * r[i]
    if len(set(totals)) != 1:
        raise CycleError(f"degree depends on the coordinate: {totals}")
    return totals[0]


def degree_over_bases(cycle, bases):
    """min over the supplied unimodular bases; the projective degree is the
    minimum over all of them, which we only ever approximate from a list."""
    if not bases:
        raise CycleError("need at least one basis")
    return min(degree(cycle, b) for b in bases)


def lies_in(cycle, plane):
    return all(plane.contains_direction(d) for d, _ in cycle.rays)


def canonical_cycle(plane):
    """K_P: each coarse ray weighted by (number of incident cones) - 2."""
    rays = []
    for k, ray in enumerate(plane.rays):
        val = sum(1 for c in plane.cones if k in (c.i, c.j))
        w = val - 2
        if w != 0:
            rays.append((ray.direction, w))
    return FanCycle(plane.ambient_dim, tuple(rays))


def boundary_point(basis, m, v):
    """Where the ray in direction v leaves a fan plane of the matroid m.

    Returns ("line", i) when the ray ends in the interior of the boundary
    line of element i, or ("point", I) for the intersection point of the
    rank-2 flat I.
    """
    r = positive_decomposition(basis, v)
    support = frozenset(i for i, x in enumerate(r) if x > 0)
    if not support:
        raise CycleError("zero direction has no boundary point")
    if len(support) == 1:
        return ("line", next(iter(support)))
    if support not in m.flats(2):
        raise CycleError(
            f"ray exits through {sorted(support)}, which is not a rank-2 flat"
        )
    return ("point", support)


def standard_line(basis):
    """The tropical line: rays u_0, ..., u_N with weight 1."""
    dirs = [basis.u0] + list(basis.vectors)
    return FanCycle(basis.dim, tuple((d, 1) for d in dirs))
