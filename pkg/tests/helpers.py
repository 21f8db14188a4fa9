"""Shared independent oracles for the test suite.

These deliberately avoid the library's optimized code paths: brute-force box
scans, subset enumeration, and definition-chasing comparisons, so the tests
check the real implementations against something dumber.
"""

from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor

from gridhit.geometry import BALL
from gridhit.oracle import Instance


def box_scan_points(center, radius, kind):
    """Integer points of the object by scanning its bounding box with Fractions."""
    lo = [ceil(c - radius) for c in center]
    hi = [floor(c + radius) for c in center]
    out = []
    for z in product(*[range(l, h + 1) for l, h in zip(lo, hi)]):
        if kind == BALL:
            inside = sum((c - x) ** 2 for c, x in zip(center, z)) <= radius * radius
        else:
            inside = all(abs(c - x) <= radius for c, x in zip(center, z))
        if inside:
            out.append(z)
    return out


def precedes_by_definition(p, q):
    """The order relation chased directly from its definition."""
    for i in range(len(p) - 1, -1, -1):
        if p[i] != q[i]:
            return p[i] < q[i]
    raise AssertionError("equal points")


def exhaustive_opt(inst: Instance):
    """Minimum hitting set by subset enumeration over the candidate union.

    Candidates are tried in the library's tie-break order, so the first
    feasible subset of minimum size is also the lexicographically least one.
    """
    cands = inst.candidates
    sets = inst.point_sets
    if not sets:
        return []
    for k in range(1, len(cands) + 1):
        for combo in combinations(cands, k):
            cs = set(combo)
            if all(cs & s for s in sets):
                return list(combo)
    raise AssertionError("infeasible instance")


def random_rational(rng, lo: int, hi: int, den: int) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)
