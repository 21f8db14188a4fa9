"""Equivalence classes of unit hypercubes by covered integer set.

Two unit hypercubes cover the same integer points exactly when, coordinate by
coordinate, their centers are either the same integer or non-integers with
the same floor.  A class is therefore named by a signature with one entry per
coordinate: ``Integer(v)`` or ``Fractional(floor)``.  A class whose center has
k non-integer coordinates covers exactly ``2^k * 3^(d-k)`` integer points and
is said to have type k; type-d classes (all coordinates fractional) are the
finest and everything else decomposes into them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .geometry import CUBE, IntPoint, RatPoint, UnitObject

INTEGER = "I"
FRACTIONAL = "F"

# Shift used by decompose(); any rational strictly between 0 and 1 gives the
# same classes, so fix one for reproducibility.
DECOMPOSE_SHIFT = Fraction(1, 4)


@dataclass(frozen=True, order=True)
class CubeSignature:
    """Canonical name of a hypercube equivalence class.

    ``entries[i]`` is ``("I", v)`` when the center's i-th coordinate is the
    integer v, and ``("F", f)`` when it is a non-integer with floor f.
    """

    entries: tuple[tuple[str, int], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def type_k(self) -> int:
        return sum(1 for tag, _ in self.entries if tag == FRACTIONAL)

    def text(self) -> str:
        return ",".join(f"{tag}:{v}" for tag, v in self.entries)

    @classmethod
    def parse(cls, s: str) -> "CubeSignature":
        entries = []
        for part in s.split(","):
            tag, _, v = part.partition(":")
            if tag not in (INTEGER, FRACTIONAL) or not v:
                raise ValueError(f"bad signature entry {part!r}")
            entries.append((tag, int(v)))
        return cls(tuple(entries))

    def __repr__(self):
        return f"CubeSignature({self.text()})"


def signature(obj: UnitObject) -> CubeSignature:
    """The equivalence-class signature of a unit hypercube."""
    if obj.kind != CUBE:
        raise ValueError("signatures are defined for hypercubes only")
    entries = []
    for c in obj.center:
        if c.denominator == 1:
            entries.append((INTEGER, c.numerator))
        else:
            entries.append((FRACTIONAL, c.numerator // c.denominator))
    return CubeSignature(tuple(entries))


def type_of(sig: CubeSignature) -> int:
    """Number of fractional coordinates; the class covers 2^k * 3^(d-k) points."""
    return sig.type_k


def class_points(sig: CubeSignature) -> list[IntPoint]:
    """The integer points covered by every cube in the class, in scan order."""
    axes = []
    for tag, v in sig.entries:
        if tag == INTEGER:
            axes.append((v - 1, v, v + 1))
        else:
            axes.append((v, v + 1))
    return list(product(*axes))


def representative_center(sig: CubeSignature) -> RatPoint:
    """A concrete center belonging to the class (floors offset by 1/2)."""
    return tuple(
        Fraction(v) if tag == INTEGER else Fraction(v) + Fraction(1, 2)
        for tag, v in sig.entries
    )


def decompose(obj: UnitObject) -> frozenset[CubeSignature]:
    """Split a type-k cube into the 2^(d-k) type-d classes covering it exactly.

    Each integer coordinate of the center is nudged by +/- a fixed fractional
    shift, one cube per sign pattern; fractional coordinates are untouched.
    A type-d cube decomposes into itself.  The parts' point sets overlap, but
    their union equals the cube's point set exactly.
    """
    sig = signature(obj)
    int_axes = [i for i, (tag, _) in enumerate(sig.entries) if tag == INTEGER]
    if not int_axes:
        return frozenset([sig])
    parts = set()
    for signs in product((1, -1), repeat=len(int_axes)):
        center = list(obj.center)
        for axis, s in zip(int_axes, signs):
            center[axis] = center[axis] + s * DECOMPOSE_SHIFT
        parts.add(signature(UnitObject(CUBE, tuple(center))))
    return frozenset(parts)


def classes_containing(p: IntPoint) -> frozenset[CubeSignature]:
    """All 2^d type-d classes whose cubes contain the integer point ``p``.

    A fractional coordinate with floor f covers {f, f+1}, so coordinate i must
    have floor p_i - 1 or p_i.
    """
    choices = [((FRACTIONAL, x - 1), (FRACTIONAL, x)) for x in p]
    return frozenset(CubeSignature(entries) for entries in product(*choices))
