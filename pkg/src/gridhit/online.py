"""The three online hitting algorithms behind one step interface.

* ``bpa`` (best-point): keeps every hitting point on a filter sublattice.
  When an unhit object arrives, it adds the best point (under the global
  tie-break order) of the filter points inside the object.
* ``nc`` (nearest-center): when an unhit ball arrives, it adds the integer
  point nearest to the center (exact squared L2 distance, ties resolved by
  the tie-break order).  Hypercubes are accepted too, but the guarantee
  degrades to 3^d points per optimum point; the CLI warns about that.
* ``rir`` (randomized iterative reweighting, hypercubes only): keeps a
  hitting set A = A1 (disjoint union) A2 plus a bookkeeping sample set B and a
  weight for every integer point, initially 3^-(d+1).  For an arriving cube
  with integer point set Q:

    1. if A already hits it, do nothing;
    2. else if B meets Q, move one such point into A1;
    3. else if the total weight of Q is at least 1, put one point of Q in A2;
    4. else draw ceil(5d/2) points from Q i.i.d. proportionally to weight,
       add them to B, move one point of B & Q into A1, and triple the weight
       of every point of Q.

  Weights are never materialized as rationals: the state stores per-point
  tripling counts, and comparisons use integer sums of 3^count against
  3^(d+1).  Every "arbitrary point" choice is resolved by the tie-break
  order, and step-4 draws are with replacement (duplicates collapse in B),
  so a run is fully determined by its seed.

Decisions are irrevocable: the hitting set only ever grows.
"""

from __future__ import annotations

import json
import random
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .filters import FilterLattice, ball_filter, cube_filter, filter_points_in
from .geometry import (
    BALL,
    CUBE,
    IntPoint,
    UnitObject,
    best_point,
    contains,
    hits_any,
    object_points,
)

BPA = "bpa"
NC = "nc"
RIR = "rir"
ALGORITHMS = (BPA, NC, RIR)

ALREADY_HIT = "already_hit"
NEW_POINT = "new_point"

SOURCE_PLAIN = "plain"
SOURCE_A1 = "A1"
SOURCE_A2 = "A2"


class EmptyFilterSetError(Exception):
    """The object contains no filter point; the filter does not cover this input class."""


class InfeasibleObjectError(Exception):
    """The object contains no integer point at all, so nothing can hit it."""


@dataclass(frozen=True)
class StepOutcome:
    """Record of one algorithm iteration."""

    decision: str                      # ALREADY_HIT or NEW_POINT
    point: IntPoint | None = None
    source: str | None = None          # SOURCE_PLAIN / SOURCE_A1 / SOURCE_A2
    drawn: tuple[IntPoint, ...] = ()   # rir step-4 sample sequence, in draw order


@dataclass
class HitterState:
    """Mutable per-run state shared by the three algorithms.

    ``hits`` is the ordered hitting set A.  The remaining fields are used by
    rir only: ``a1``/``a2`` partition A, ``bookkeeping`` is B, and
    ``tripling_counts[p]`` is how many times p's weight has been tripled
    (absent means zero; the weight of p is 3^(count - dim - 1)).
    """

    algorithm: str
    dim: int
    hits: list[IntPoint] = field(default_factory=list)
    a1: set[IntPoint] = field(default_factory=set)
    a2: set[IntPoint] = field(default_factory=set)
    bookkeeping: set[IntPoint] = field(default_factory=set)
    tripling_counts: dict[IntPoint, int] = field(default_factory=dict)


def new_state(algorithm: str, dim: int) -> HitterState:
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    return HitterState(algorithm, dim)


def default_filter(kind: str, dim: int) -> FilterLattice:
    return ball_filter(dim) if kind == BALL else cube_filter(dim)


def bpa_step(state: HitterState, lattice: FilterLattice, obj: UnitObject) -> StepOutcome:
    """One best-point iteration; raises EmptyFilterSetError when the filter misses."""
    if obj.dim != state.dim:
        raise ValueError("object dimension does not match state")
    if hits_any(obj, state.hits):
        return StepOutcome(ALREADY_HIT)
    inside = filter_points_in(lattice, obj)
    if not inside:
        raise EmptyFilterSetError(
            f"no filter point inside {obj!r}; the {lattice.variant} filter does not "
            "cover this object class"
        )
    p = best_point(inside)
    state.hits.append(p)
    return StepOutcome(NEW_POINT, p, SOURCE_PLAIN)


def nearest_integer_points(obj: UnitObject) -> list[IntPoint]:
    """All integer points at minimum exact L2 distance from the object's center.

    The minimizers form a per-coordinate product: each coordinate rounds to
    its nearest integer, with both neighbors tied at half-integers.
    """
    axes = []
    for c in obj.center:
        f = floor(c)
        frac2 = 2 * (c - f)          # in [0, 2)
        if frac2 < 1:
            axes.append((f,))
        elif frac2 > 1:
            axes.append((f + 1,))
        else:
            axes.append((f, f + 1))
    out = [()]
    for axis in axes:
        out = [p + (x,) for p in out for x in axis]
    return out


def nc_step(state: HitterState, obj: UnitObject) -> StepOutcome:
    """One nearest-center iteration."""
    if obj.dim != state.dim:
        raise ValueError("object dimension does not match state")
    if hits_any(obj, state.hits):
        return StepOutcome(ALREADY_HIT)
    p = best_point(nearest_integer_points(obj))
    if not contains(obj, p):
        # Possible only for balls in dimension >= 5: the nearest integer point
        # is outside, hence the ball contains no integer point at all.
        raise InfeasibleObjectError(f"{obj!r} contains no integer point")
    state.hits.append(p)
    return StepOutcome(NEW_POINT, p, SOURCE_PLAIN)


def rir_draw_count(dim: int) -> int:
    """Number of step-4 samples per reweighting: ceil(5d/2)."""
    return (5 * dim + 1) // 2


def rir_weight_threshold(dim: int) -> int:
    """Scaled-weight threshold for step 3: total weight >= 1 means >= 3^(d+1)."""
    return 3 ** (dim + 1)


def rir_scaled_weight(state: HitterState, points) -> int:
    """Sum of 3^count over the points: the total weight scaled by 3^(d+1)."""
    counts = state.tripling_counts
    return sum(3 ** counts.get(p, 0) for p in points)


def rir_step(state: HitterState, obj: UnitObject, rng: random.Random) -> StepOutcome:
    """One randomized-iterative-reweighting iteration (hypercubes only)."""
    if obj.kind != CUBE:
        raise ValueError("rir handles hypercubes only")
    if obj.dim != state.dim:
        raise ValueError("object dimension does not match state")
    if hits_any(obj, state.hits):
        return StepOutcome(ALREADY_HIT)
    points = sorted(object_points(obj))
    in_b = state.bookkeeping.intersection(points)
    if in_b:
        p = best_point(in_b)
        state.a1.add(p)
        state.hits.append(p)
        return StepOutcome(NEW_POINT, p, SOURCE_A1)
    if rir_scaled_weight(state, points) >= rir_weight_threshold(state.dim):
        p = best_point(points)
        state.a2.add(p)
        state.hits.append(p)
        return StepOutcome(NEW_POINT, p, SOURCE_A2)
    # Step 4: sample, book, hit, reweight.
    counts = state.tripling_counts
    cumulative = []
    total = 0
    for q in points:
        total += 3 ** counts.get(q, 0)
        cumulative.append(total)
    drawn = []
    for _ in range(rir_draw_count(state.dim)):
        r = rng.randrange(total)
        drawn.append(points[bisect_right(cumulative, r)])
    state.bookkeeping.update(drawn)
    p = best_point(set(drawn))
    state.a1.add(p)
    state.hits.append(p)
    for q in points:
        counts[q] = counts.get(q, 0) + 1
    return StepOutcome(NEW_POINT, p, SOURCE_A1, tuple(drawn))


def rir_weight(state: HitterState, p: IntPoint) -> Fraction:
    """Current weight of a point as an exact rational (for audits, not the hot path)."""
    return Fraction(3) ** (state.tripling_counts.get(p, 0) - state.dim - 1)


def step(
    state: HitterState,
    obj: UnitObject,
    rng: random.Random | None = None,
    lattice: FilterLattice | None = None,
) -> StepOutcome:
    """Dispatch one iteration of whichever algorithm the state belongs to."""
    if state.algorithm == BPA:
        if lattice is None:
            lattice = default_filter(obj.kind, state.dim)
        return bpa_step(state, lattice, obj)
    if state.algorithm == NC:
        return nc_step(state, obj)
    if rng is None:
        raise ValueError("rir needs an injected random stream")
    return rir_step(state, obj, rng)


@dataclass
class RunResult:
    state: HitterState
    transcript: list[StepOutcome]

    @property
    def hitting_set(self) -> list[IntPoint]:
        return list(self.state.hits)


class RunError(Exception):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"step {index} failed: {cause}")
        self.index = index
        self.cause = cause


def run(
    algorithm: str,
    objects,
    seed: int = 0,
    filter_variant: str | None = None,
) -> RunResult:
    """Feed a homogeneous object sequence to an algorithm; deterministic per seed."""
    objects = list(objects)
    if not objects:
        return RunResult(new_state(algorithm, 1), [])
    kinds = {o.kind for o in objects}
    dims = {o.dim for o in objects}
    if len(kinds) > 1 or len(dims) > 1:
        raise ValueError("run() needs objects of one kind and one dimension")
    dim = objects[0].dim
    state = new_state(algorithm, dim)
    rng = random.Random(seed)
    lattice = None
    if algorithm == BPA:
        variant = filter_variant or objects[0].kind
        lattice = FilterLattice(variant, dim)
    transcript = []
    for i, obj in enumerate(objects):
        try:
            transcript.append(step(state, obj, rng=rng, lattice=lattice))
        except (EmptyFilterSetError, InfeasibleObjectError, ValueError) as e:
            raise RunError(i, e) from e
    return RunResult(state, transcript)


def outcome_record(index: int, outcome: StepOutcome) -> dict:
    return {
        "index": index,
        "decision": outcome.decision,
        "point": list(outcome.point) if outcome.point is not None else None,
        "source": outcome.source,
        "drawn": [list(p) for p in outcome.drawn],
    }


def transcript_jsonl(result: RunResult) -> str:
    """One JSON record per step, then a final record with the whole hitting set."""
    lines = [json.dumps(outcome_record(i, o), separators=(",", ":"))
             for i, o in enumerate(result.transcript)]
    final = {"final": {"algorithm": result.state.algorithm,
                       "hits": [list(p) for p in result.state.hits]}}
    lines.append(json.dumps(final, separators=(",", ":")))
    return "\n".join(lines) + "\n"
