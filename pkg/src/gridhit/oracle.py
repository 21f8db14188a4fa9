"""Exact offline minimum hitting set for small instances.

Candidates are restricted to the union of the objects' integer point sets:
a point outside every object hits nothing, so dropping it from any hitting
set keeps the set feasible, and some minimum hitting set lies inside the
union.  The exact solver is a branch-and-bound over those candidates with a
greedy upper bound and a disjoint-object packing lower bound, followed by a
lexicographic pass so that equal-size optima resolve deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .geometry import IntPoint, UnitObject, best_point, object_points, point_key

DEFAULT_CAP = 30


class CapExceededError(Exception):
    """Instance has more objects than the exact solver is willing to take."""


class InfeasibleError(Exception):
    """Some object contains no candidate point (cannot happen for unit objects)."""


@dataclass(frozen=True)
class Instance:
    """A homogeneous batch of unit objects to hit."""

    objects: tuple[UnitObject, ...]

    def __post_init__(self):
        kinds = {o.kind for o in self.objects}
        dims = {o.dim for o in self.objects}
        if len(kinds) > 1 or len(dims) > 1:
            raise ValueError("instance objects must share one kind and one dimension")

    @property
    def kind(self) -> str:
        return self.objects[0].kind if self.objects else ""

    @property
    def dim(self) -> int:
        return self.objects[0].dim if self.objects else 0

    @cached_property
    def point_sets(self) -> tuple[frozenset[IntPoint], ...]:
        sets = tuple(frozenset(object_points(o)) for o in self.objects)
        for o, s in zip(self.objects, sets):
            if not s:
                raise InfeasibleError(f"object {o!r} contains no integer point")
        return sets

    @cached_property
    def candidates(self) -> tuple[IntPoint, ...]:
        """Deduplicated union of the objects' point sets, sorted by the tie-break order."""
        return tuple(sorted(set().union(*self.point_sets), key=point_key))


def _coverage(inst: Instance) -> dict[IntPoint, set[int]]:
    cov: dict[IntPoint, set[int]] = {p: set() for p in inst.candidates}
    for i, pts in enumerate(inst.point_sets):
        for p in pts:
            cov[p].add(i)
    return cov


def greedy_hitting_set(inst: Instance) -> list[IntPoint]:
    """Feasible hitting set by repeated maximum coverage; ties break by best_point."""
    if not inst.objects:
        return []
    cov = _coverage(inst)
    uncovered = set(range(len(inst.objects)))
    chosen: list[IntPoint] = []
    while uncovered:
        best_gain = max(len(objs & uncovered) for objs in cov.values())
        tied = [p for p, objs in cov.items() if len(objs & uncovered) == best_gain]
        pick = best_point(tied)
        chosen.append(pick)
        uncovered -= cov[pick]
    return chosen


def _packing_lower_bound(inst: Instance, uncovered: set[int]) -> int:
    # Greedily collect uncovered objects with pairwise-disjoint point sets;
    # each needs its own hitting point.
    picked: list[frozenset[IntPoint]] = []
    for i in sorted(uncovered, key=lambda i: len(inst.point_sets[i])):
        pts = inst.point_sets[i]
        if all(pts.isdisjoint(q) for q in picked):
            picked.append(pts)
    return len(picked)


def _min_size(inst: Instance) -> int:
    cov = _coverage(inst)
    n = len(inst.objects)
    best = len(greedy_hitting_set(inst))

    def dfs(uncovered: set[int], used: int) -> None:
        nonlocal best
        if not uncovered:
            best = min(best, used)
            return
        if used + _packing_lower_bound(inst, uncovered) >= best:
            return
        target = min(uncovered, key=lambda i: (len(inst.point_sets[i]), i))
        options = sorted(
            inst.point_sets[target],
            key=lambda p: (-len(cov[p] & uncovered), point_key(p)),
        )
        for p in options:
            dfs(uncovered - cov[p], used + 1)

    dfs(set(range(n)), 0)
    return best


def _lex_least_solution(inst: Instance, size: int) -> list[IntPoint]:
    # First feasible increasing sequence of `size` candidates, explored in the
    # tie-break order, is the lexicographically least optimal set.
    cov = _coverage(inst)
    cands = inst.candidates
    n = len(cands)

    def dfs(start: int, uncovered: set[int], chosen: list[IntPoint]):
        if not uncovered:
            return list(chosen)
        remaining = size - len(chosen)
        if remaining <= 0 or _packing_lower_bound(inst, uncovered) > remaining:
            return None
        for idx in range(start, n):
            p = cands[idx]
            gain = cov[p] & uncovered
            if not gain:
                continue
            if n - idx < remaining:
                break
            chosen.append(p)
            found = dfs(idx + 1, uncovered - gain, chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    found = dfs(0, set(range(len(inst.objects))), [])
    assert found is not None, "no solution at the proven optimal size"
    return found


def opt_hitting_set(inst: Instance, cap: int = DEFAULT_CAP) -> list[IntPoint]:
    """A minimum-cardinality hitting set, deterministic among equal-size optima.

    Raises CapExceededError beyond ``cap`` objects; the search is exact and
    meant for desk-scale instances, not bulk workloads.
    """
    if len(inst.objects) > cap:
        raise CapExceededError(f"{len(inst.objects)} objects exceeds cap {cap}")
    if not inst.objects:
        return []
    size = _min_size(inst)
    solution = _lex_least_solution(inst, size)
    assert is_feasible(inst, solution)
    return solution


def is_feasible(inst: Instance, points) -> bool:
    """Every object contains at least one of the given points (exact check)."""
    pts = set(points)
    return all(pts & s for s in inst.point_sets) if inst.objects else True


def competitive_ratio(hitting_set, inst: Instance, cap: int = DEFAULT_CAP) -> Fraction:
    """|A| / |OPT| as an exact rational; requires A feasible for the instance."""
    pts = list(dict.fromkeys(tuple(p) for p in hitting_set))
    if not is_feasible(inst, pts):
        raise ValueError("hitting set is not feasible for the instance")
    opt = opt_hitting_set(inst, cap=cap)
    return Fraction(len(pts), len(opt))
