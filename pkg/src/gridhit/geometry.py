"""Exact geometry over the integer grid.

Everything in this module is computed with exact rational arithmetic
(`fractions.Fraction` coordinates, arbitrary-precision integers); there is no
floating point anywhere in a predicate.  That matters because the adversary
constructions and several counting arguments sit exactly on object boundaries
(squared distance exactly 1), where floats give wrong answers.

Two object kinds are supported, both of "radius" 1 around a rational center:

* ball  -- L2 ball, contains an integer point ``p`` iff ``sum((c_i - p_i)^2) <= 1``
* cube  -- L-infinity ball (an axis-aligned hypercube of side 2), contains
           ``p`` iff ``max(|c_i - p_i|) <= 1``

Integer points are plain tuples of ``int``; centers are tuples of ``Fraction``.

The module also provides the strict total order used everywhere as a
deterministic tie-breaker: points are compared coordinate by coordinate
starting from the *last* coordinate, and ``best_point`` picks the maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

IntPoint = tuple[int, ...]
RatPoint = tuple[Fraction, ...]

BALL = "ball"
CUBE = "cube"
KINDS = (BALL, CUBE)


def rat_point(*coords) -> RatPoint:
    """Build an exact rational point from ints, strings like '3/97', or Fractions."""
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class UnitObject:
    """A unit ball (L2) or unit hypercube (L-infinity radius 1) with a rational center."""

    kind: str
    center: RatPoint

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown object kind {self.kind!r}")
        if not self.center:
            raise ValueError("object needs at least one coordinate")
        if not all(isinstance(c, Fraction) for c in self.center):
            raise ValueError("center coordinates must be Fractions (use ball()/cube())")

    @property
    def dim(self) -> int:
        return len(self.center)

    def __repr__(self):
        return f"{self.kind}({', '.join(str(c) for c in self.center)})"


def ball(*coords) -> UnitObject:
    return UnitObject(BALL, rat_point(*coords))


def cube(*coords) -> UnitObject:
    return UnitObject(CUBE, rat_point(*coords))


def _check_dim(obj_dim: int, p: Sequence[int]) -> None:
    if len(p) != obj_dim:
        raise ValueError(f"dimension mismatch: object is {obj_dim}-d, point is {len(p)}-d")


def squared_distance(center: RatPoint, p: IntPoint) -> Fraction:
    """Exact squared L2 distance from a rational center to an integer point."""
    num, den = _scaled_squared_distance(center, p)
    return Fraction(num, den)


def _scaled_squared_distance(center: RatPoint, p: IntPoint) -> tuple[int, int]:
    # Returns (s, L^2) with dist^2 == s / L^2, computed in plain integers.
    # L is the lcm of the coordinate denominators; this is the hot path for
    # containment scans, so avoid building intermediate Fractions.
    lcm = 1
    for c in center:
        d = c.denominator
        if d != 1:
            lcm = lcm * d // math.gcd(lcm, d)
    s = 0
    for c, z in zip(center, p):
        d = c.denominator
        t = (c.numerator - z * d) * (lcm // d)
        s += t * t
    return s, lcm * lcm


def contains(obj: UnitObject, p: IntPoint) -> bool:
    """Exact containment of an integer point in a unit object."""
    _check_dim(obj.dim, p)
    if obj.kind == CUBE:
        return all(abs(c.numerator - z * c.denominator) <= c.denominator
                   for c, z in zip(obj.center, p))
    s, ll = _scaled_squared_distance(obj.center, p)
    return s <= ll


def hits_any(obj: UnitObject, points: Iterable[IntPoint]) -> bool:
    """True iff any of the given integer points lies in the object.

    Equivalent to ``any(contains(obj, p) for p in points)`` but extracts the
    center's integer representation once; used by the online algorithms which
    scan their whole hitting set on every arrival.
    """
    if obj.kind == CUBE:
        cs = [(c.numerator, c.denominator) for c in obj.center]
        for p in points:
            if all(abs(n - z * d) <= d for (n, d), z in zip(cs, p)):
                return True
        return False
    lcm = 1
    for c in obj.center:
        d = c.denominator
        if d != 1:
            lcm = lcm * d // math.gcd(lcm, d)
    # (c_i - z_i) * lcm  ==  num_i * (lcm / den_i) - z_i * lcm, all integers.
    scaled = [c.numerator * (lcm // c.denominator) for c in obj.center]
    bound = lcm * lcm
    for p in points:
        s = 0
        for n, z in zip(scaled, p):
            t = n - z * lcm
            s += t * t
            if s > bound:
                break
        if s <= bound:
            return True
    return False


def integer_points_in(center: RatPoint, radius: int, kind: str) -> list[IntPoint]:
    """All integer points inside the object of the given kind and radius.

    Only radii 1 and 2 are supported (2 is used to bound where an online
    algorithm can place points for objects clustered around a grid point).
    Enumeration scans the integer bounding box in row-major order and filters
    with the exact predicate, so the result order is reproducible.
    """
    if radius not in (1, 2):
        raise ValueError(f"unsupported radius {radius!r}: only 1 and 2 are needed")
    if kind not in KINDS:
        raise ValueError(f"unknown object kind {kind!r}")
    ranges = [range(math.ceil(c - radius), math.floor(c + radius) + 1) for c in center]
    if kind == CUBE:
        # Every box point is within L-infinity distance `radius` by construction.
        return list(product(*ranges))
    lcm = 1
    for c in center:
        d = c.denominator
        if d != 1:
            lcm = lcm * d // math.gcd(lcm, d)
    scaled = [c.numerator * (lcm // c.denominator) for c in center]
    bound = (radius * lcm) ** 2
    out = []
    for p in product(*ranges):
        s = 0
        for n, z in zip(scaled, p):
            t = n - z * lcm
            s += t * t
        if s <= bound:
            out.append(p)
    return out


def object_points(obj: UnitObject) -> list[IntPoint]:
    """The integer points contained in a unit object (its coverable set)."""
    return integer_points_in(obj.center, 1, obj.kind)


def point_key(p: IntPoint) -> tuple[int, ...]:
    """Sort key realizing the tie-breaking order: compare last coordinate first."""
    return tuple(reversed(p))


def precedes(p: IntPoint, q: IntPoint) -> bool:
    """Strict total order on distinct integer points.

    ``p`` precedes ``q`` iff at the highest-indexed coordinate where they
    differ, ``p`` is smaller.  Calling this on equal points is a contract
    violation and raises.
    """
    if len(p) != len(q):
        raise ValueError("points of different dimension are not comparable")
    if p == q:
        raise ValueError("precedes() requires distinct points")
    return point_key(p) < point_key(q)


def best_point(points: Iterable[IntPoint]) -> IntPoint:
    """The maximum of a nonempty set of distinct points under the order above."""
    pts = list(points)
    if not pts:
        raise ValueError("best_point() of an empty set")
    return max(pts, key=point_key)
