"""Filter sublattices guaranteed to meet every unit object of their kind.

A filter lattice is a sublattice of Z^d spanned by d generator vectors:

* ball variant (valid for d <= 4):  u_1 = 2*e_1,  u_i = e_{i-1} + e_i
* cube variant (valid for all d):   u_1 = 2*e_1,  u_i = e_{i-1} + 2*e_i

Every unit ball in d <= 4 contains at least one point of the ball variant,
and every unit hypercube (any d) contains at least one point of the cube
variant; `covering_certificate` checks that claim empirically on random
rational centers plus the minimum-slack center with all coordinates at 1/2.

Membership is decided by exact back-substitution against the triangular
generator basis rather than by a hard-coded closed form, so the same code
serves both variants.  (The ball variant happens to coincide with
"coordinate sum is even"; tests use that as an independent oracle.)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import (
    BALL,
    CUBE,
    KINDS,
    IntPoint,
    RatPoint,
    UnitObject,
    integer_points_in,
)

BALL_FILTER = "ball"
CUBE_FILTER = "cube"


@dataclass(frozen=True)
class FilterLattice:
    """A filter sublattice of Z^d, immutable after construction."""

    variant: str
    dim: int
    basis: tuple[IntPoint, ...] = field(init=False)

    def __post_init__(self):
        if self.variant not in (BALL_FILTER, CUBE_FILTER):
            raise ValueError(f"unknown filter variant {self.variant!r}")
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if self.variant == BALL_FILTER and self.dim > 4:
            raise ValueError(
                "ball filter lattice is only covering for dimensions <= 4; "
                f"got dimension {self.dim}"
            )
        object.__setattr__(self, "basis", tuple(self._generator(i) for i in range(self.dim)))

    def _generator(self, i: int) -> IntPoint:
        u = [0] * self.dim
        if i == 0:
            u[0] = 2
        elif self.variant == BALL_FILTER:
            u[i - 1] = 1
            u[i] = 1
        else:
            u[i - 1] = 1
            u[i] = 2
        return tuple(u)


def ball_filter(dim: int) -> FilterLattice:
    return FilterLattice(BALL_FILTER, dim)


def cube_filter(dim: int) -> FilterLattice:
    return FilterLattice(CUBE_FILTER, dim)


def is_member(lattice: FilterLattice, p: IntPoint) -> bool:
    """Whether ``p`` is an integer combination of the lattice generators.

    The basis is triangular (generator i only touches coordinates i-1 and i),
    so solve for the coefficients from the last coordinate down; membership
    holds iff every division is exact.
    """
    if len(p) != lattice.dim:
        raise ValueError(f"dimension mismatch: lattice is {lattice.dim}-d, point is {len(p)}-d")
    residual = list(p)
    basis = lattice.basis
    for i in range(lattice.dim - 1, -1, -1):
        diag = basis[i][i]
        if residual[i] % diag:
            return False
        a = residual[i] // diag
        if a:
            residual[i] = 0
            if i > 0:
                residual[i - 1] -= a * basis[i][i - 1]
    return True


def filter_points_in(lattice: FilterLattice, obj: UnitObject, radius: int = 1) -> list[IntPoint]:
    """Lattice members inside the (optionally dilated) object, in scan order."""
    if obj.dim != lattice.dim:
        raise ValueError(f"dimension mismatch: lattice is {lattice.dim}-d, object is {obj.dim}-d")
    return [p for p in integer_points_in(obj.center, radius, obj.kind) if is_member(lattice, p)]


@dataclass
class CoverReport:
    """Outcome of a randomized covering certificate run."""

    variant: str
    kind: str
    dim: int
    trials: int
    failures: list[RatPoint]
    min_count: int
    max_count: int

    @property
    def ok(self) -> bool:
        return not self.failures


def covering_certificate(
    lattice: FilterLattice,
    kind: str,
    trials: int,
    seed: int,
    denominator: int = 97,
    window: int = 4,
) -> CoverReport:
    """Check that random unit objects of ``kind`` all contain a lattice point.

    Centers are sampled with numerators uniform in ``[-window*D, window*D]``
    over the fixed prime denominator ``D`` (exact rationals, rarely integral).
    The deterministic minimum-slack center with every coordinate equal to 1/2
    is always checked in addition to the ``trials`` random ones.  Any center
    whose object contains no lattice point is returned as a counterexample;
    the report also carries the smallest and largest member counts seen.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown object kind {kind!r}")
    rng = random.Random(seed)
    d = lattice.dim
    lo, hi = -window * denominator, window * denominator
    failures: list[RatPoint] = []
    min_count = max_count = -1
    centers = [tuple(Fraction(1, 2) for _ in range(d))]
    for _ in range(trials):
        centers.append(tuple(Fraction(rng.randint(lo, hi), denominator) for _ in range(d)))
    for center in centers:
        n = len(filter_points_in(lattice, UnitObject(kind, center)))
        if n == 0:
            failures.append(center)
        if min_count < 0 or n < min_count:
            min_count = n
        if n > max_count:
            max_count = n
    return CoverReport(lattice.variant, kind, d, len(centers), failures, min_count, max_count)
