"""Adaptive lower-bound games against online hitting algorithms.

Each game issues unit objects one at a time, reacting to the opponent's
hitting points so that every round forces a brand-new point while one fixed
integer point hits everything in hindsight:

* interval game (1-D): two intervals force 2 points against an optimum of 1.
* ball game (2-D and 3-D): d+1 balls force d+1 points.  The script assumes
  the opponent answers rounds 2.. with designated unit vectors; a valid hit
  outside that set ends the game with an off-script report rather than a
  fabricated continuation, because the construction's guarantees are only
  proven along the script.
* hypercube game (any d): d+1 hypercubes force d+1 points against arbitrary
  opponents; each round shifts the first cube by 1+eps along every axis
  already answered, with the sign chosen to dodge the opponent's point.

All center arithmetic is exact rational.  Games self-check their round
invariants (previously placed points excluded; scripted targets or the
expected common-intersection count present) and record the checks, so a
configuration that breaks the construction fails loudly instead of silently
issuing a bad object.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from . import oracle
from .geometry import (
    BALL,
    CUBE,
    IntPoint,
    RatPoint,
    UnitObject,
    best_point,
    contains,
)
from .online import ALREADY_HIT, FilterLattice, new_state, step

INTERVAL_GAME = "interval"
BALL_GAME = "ball"
HYPERCUBE_GAME = "cube"

BALL_GAME_EPS = {2: Fraction(1, 2), 3: Fraction(3, 20)}
HYPERCUBE_EPS_DEFAULT = Fraction(1, 4)


class InvalidMoveError(Exception):
    """The opponent's point is not a new integer point inside the issued object."""


class OffScriptError(Exception):
    """A valid hit outside the set the game's script can answer."""

    def __init__(self, round_index: int, hit: IntPoint, expected: list[IntPoint]):
        super().__init__(
            f"round {round_index}: hit {hit} is valid but outside the scripted "
            f"choices {sorted(expected)}"
        )
        self.round_index = round_index
        self.hit = hit
        self.expected = expected


class GameInvariantError(Exception):
    """A game was about to issue an object violating its own construction."""


def _require_valid_hit(obj: UnitObject, hit, round_index: int) -> IntPoint:
    if not (isinstance(hit, tuple) and all(isinstance(x, int) for x in hit)):
        raise InvalidMoveError(f"round {round_index}: hit {hit!r} is not an integer point")
    if len(hit) != obj.dim:
        raise InvalidMoveError(f"round {round_index}: hit {hit!r} has the wrong dimension")
    if not contains(obj, hit):
        raise InvalidMoveError(f"round {round_index}: hit {hit} is outside {obj!r}")
    return hit


def box_intersection_count(objects) -> int:
    """Exact number of integer points common to a batch of unit hypercubes."""
    objects = list(objects)
    dim = objects[0].dim
    total = 1
    for k in range(dim):
        lo = max(o.center[k] - 1 for o in objects)
        hi = min(o.center[k] + 1 for o in objects)
        if hi < lo:
            return 0
        total *= max(0, floor(hi) - ceil(lo) + 1)
    return total


@dataclass
class RoundCheck:
    round_index: int
    excludes_previous_hits: bool
    detail: dict

    @property
    def ok(self) -> bool:
        return self.excludes_previous_hits and all(self.detail.values())


class IntervalGame:
    """Two adaptively chosen unit intervals; any opponent pays 2, the optimum 1.

    The first interval is [x, x+2].  Whatever integer x+i the opponent picks,
    the second interval is centered at x' + 1/2 for the cyclic-next target
    x' = x + ((i+1) mod 3): it contains exactly {x', x'+1} and misses x+i.
    """

    name = INTERVAL_GAME
    kind = CUBE
    dim = 1

    def __init__(self, start: int = 0):
        self.start = int(start)
        self.objects: list[UnitObject] = []
        self.hits: list[IntPoint] = []
        self.target: int | None = None
        self.checks: list[RoundCheck] = []

    def next_object(self, last_hit: IntPoint | None) -> UnitObject | None:
        if not self.objects:
            assert last_hit is None
            obj = UnitObject(CUBE, (Fraction(self.start + 1),))
            self.objects.append(obj)
            return obj
        last_hit = _require_valid_hit(self.objects[-1], last_hit, len(self.objects))
        self.hits.append(last_hit)
        if len(self.objects) == 2:
            return None
        i = last_hit[0] - self.start
        self.target = self.start + ((i + 1) % 3)
        obj = UnitObject(CUBE, (Fraction(self.target) + Fraction(1, 2),))
        check = RoundCheck(
            2,
            not contains(obj, last_hit),
            {"contains_target": contains(obj, (self.target,))},
        )
        self.checks.append(check)
        if not check.ok:
            raise GameInvariantError(f"interval round 2 construction broke: {check}")
        self.objects.append(obj)
        return obj

    def certificate(self) -> dict:
        assert self.target is not None and len(self.hits) == 2
        return {"forced": 2, "opt_point": (self.target,)}


class BallGame:
    """d+1 adaptively centered unit balls for d in {2, 3}.

    Round 1 is the ball at the origin, whose integer points are the origin and
    the 2d signed unit vectors.  The branch on the first hit fixes a sign s:
    if the opponent took a positive unit vector, the whole construction is
    negated (s = -1) so the script targets become the negated unit vectors.
    Round 2 is centered at s*(1/2+eps)*(1,..,1); later rounds zero out every
    answered axis and scale the remaining coordinates by 3/2 per round, which
    keeps all unanswered targets inside while excluding every placed point.
    """

    name = BALL_GAME
    kind = BALL

    def __init__(self, dim: int, eps: Fraction | None = None):
        if dim not in (2, 3):
            raise ValueError("the ball game is constructed for dimensions 2 and 3 only")
        self.dim = dim
        self.eps = Fraction(eps) if eps is not None else BALL_GAME_EPS[dim]
        if not 0 < self.eps:
            raise ValueError("eps must be positive")
        self.sign = 0                      # +1 or -1 once branched
        self.used: list[int] = []          # answered axes, rounds 2..
        self.objects: list[UnitObject] = []
        self.hits: list[IntPoint] = []
        self.checks: list[RoundCheck] = []

    def _unit(self, axis: int) -> IntPoint:
        return tuple(self.sign if j == axis else 0 for j in range(self.dim))

    def _script_points(self) -> list[IntPoint]:
        return [self._unit(j) for j in range(self.dim) if j not in self.used]

    def _issue(self, center: RatPoint, round_index: int) -> UnitObject:
        obj = UnitObject(BALL, center)
        detail = {
            f"contains_target_{p}": contains(obj, p) for p in self._script_points()
        }
        check = RoundCheck(
            round_index,
            not any(contains(obj, h) for h in self.hits),
            detail,
        )
        self.checks.append(check)
        if not check.ok:
            raise GameInvariantError(
                f"ball game round {round_index} construction broke: {check}"
            )
        self.objects.append(obj)
        return obj

    def next_object(self, last_hit: IntPoint | None) -> UnitObject | None:
        d = self.dim
        if not self.objects:
            assert last_hit is None
            obj = UnitObject(BALL, tuple(Fraction(0) for _ in range(d)))
            self.objects.append(obj)
            return obj
        round_index = len(self.objects)
        last_hit = _require_valid_hit(self.objects[-1], last_hit, round_index)
        self.hits.append(last_hit)
        if round_index == 1:
            # Branch: mirror everything when the opponent took a +unit vector.
            self.sign = -1 if sum(last_hit) > 0 else 1
            half_plus = Fraction(1, 2) + self.eps
            return self._issue(tuple(self.sign * half_plus for _ in range(d)), 2)
        # Rounds 2..d+1 must be answered from the unanswered script targets.
        script = self._script_points()
        if last_hit not in script:
            raise OffScriptError(round_index, last_hit, script)
        axis = next(j for j in range(d) if last_hit[j] != 0)
        self.used.append(axis)
        if round_index == d + 1:
            return None
        scale = Fraction(3, 2) ** (round_index - 1) * (Fraction(1, 2) + self.eps)
        center = tuple(
            Fraction(0) if j in self.used else self.sign * scale for j in range(d)
        )
        return self._issue(center, round_index + 1)

    def certificate(self) -> dict:
        assert len(self.hits) == self.dim + 1
        opt_point = self.hits[-1]
        assert all(contains(o, opt_point) for o in self.objects)
        return {"forced": self.dim + 1, "opt_point": opt_point}


def script_containment_lhs(dim: int, eps: Fraction, round_index: int) -> Fraction:
    """Exact squared distance from the round's center to an unanswered target.

    For the ball game's round r >= 2 this is (t-1)^2 + (d-i)*t^2 with
    t = (3/2)^(i-1) * (1/2+eps) and i = r-1.  The construction is sound at
    round r iff the value is <= 1; for d >= 4 it exceeds 1 at round 3 for
    every eps > 0, which is exactly why the game stops at dimension 3.
    """
    i = round_index - 1
    t = Fraction(3, 2) ** (i - 1) * (Fraction(1, 2) + Fraction(eps))
    return (t - 1) ** 2 + (dim - i) * t * t


class HypercubeGame:
    """d+1 adaptively shifted unit hypercubes; valid against arbitrary opponents.

    Round i issues the origin cube translated by (1+eps) along axes 1..i-1,
    with the sign on axis j chosen opposite to the j-th coordinate of the j-th
    hit.  That pushes every placed point out while the common intersection
    keeps 3^(d-i+1) integer points, so one final corner point hits everything.
    """

    name = HYPERCUBE_GAME
    kind = CUBE

    def __init__(self, dim: int, eps: Fraction = HYPERCUBE_EPS_DEFAULT):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        eps = Fraction(eps)
        if not Fraction(0) < eps < Fraction(1, 2):
            raise ValueError("eps must lie strictly between 0 and 1/2")
        self.dim = dim
        self.eps = eps
        self.signs: list[int] = []
        self.objects: list[UnitObject] = []
        self.hits: list[IntPoint] = []
        self.checks: list[RoundCheck] = []

    def next_object(self, last_hit: IntPoint | None) -> UnitObject | None:
        d = self.dim
        if not self.objects:
            assert last_hit is None
            obj = UnitObject(CUBE, tuple(Fraction(0) for _ in range(d)))
            self.objects.append(obj)
            self.checks.append(
                RoundCheck(1, True, {"common_points": box_intersection_count(self.objects) == 3 ** d})
            )
            return obj
        round_index = len(self.objects)
        last_hit = _require_valid_hit(self.objects[-1], last_hit, round_index)
        self.hits.append(last_hit)
        if round_index == d + 1:
            return None
        # The sign on axis j dodges the j-th hit; the final hit fixes no axis.
        axis = round_index - 1
        self.signs.append(1 if last_hit[axis] <= 0 else -1)
        shift = 1 + self.eps
        center = tuple(
            self.signs[j] * shift if j < round_index else Fraction(0) for j in range(d)
        )
        obj = UnitObject(CUBE, center)
        next_round = round_index + 1
        check = RoundCheck(
            next_round,
            not any(contains(obj, h) for h in self.hits),
            {
                "common_points": box_intersection_count(self.objects + [obj])
                == 3 ** (d - next_round + 1)
            },
        )
        self.checks.append(check)
        if not check.ok:
            raise GameInvariantError(
                f"hypercube game round {next_round} construction broke: {check}"
            )
        self.objects.append(obj)
        return obj

    def certificate(self) -> dict:
        assert len(self.hits) == self.dim + 1
        opt_point = tuple(self.signs[: self.dim])
        assert all(contains(o, opt_point) for o in self.objects)
        return {"forced": self.dim + 1, "opt_point": opt_point}


class AlgorithmOpponent:
    """Adapter running one of the online algorithms as the game's opponent."""

    def __init__(self, algorithm: str, kind: str, dim: int, seed: int = 0,
                 filter_variant: str | None = None):
        self.name = algorithm
        self.state = new_state(algorithm, dim)
        self.rng = random.Random(seed)
        self.lattice = None
        if algorithm == "bpa":
            self.lattice = FilterLattice(filter_variant or kind, dim)

    def respond(self, obj: UnitObject) -> IntPoint:
        outcome = step(self.state, obj, rng=self.rng, lattice=self.lattice)
        if outcome.decision == ALREADY_HIT:
            raise InvalidMoveError(
                "algorithm claims an existing point hits, but every issued object "
                "excludes all previously placed points"
            )
        return outcome.point


class ScriptedBallOpponent:
    """Cooperative opponent that stays on the ball game's script.

    ``first`` picks the opening hit: the ball's center, a negative unit vector
    ("minus"), or a positive one ("plus", which flips the game into its
    mirrored branch).  Later rounds answer with the best remaining scripted
    unit vector inside the issued ball.
    """

    def __init__(self, first: str = "center"):
        if first not in ("center", "minus", "plus"):
            raise ValueError("first must be center, minus, or plus")
        self.first = first
        self.name = f"script:{first}"
        self.remaining: list[IntPoint] | None = None

    def respond(self, obj: UnitObject) -> IntPoint:
        d = obj.dim
        if self.remaining is None:
            sign = -1 if self.first == "plus" else 1
            self.remaining = [
                tuple(sign if j == k else 0 for j in range(d)) for k in range(d)
            ]
            if self.first == "center":
                return tuple(0 for _ in range(d))
            return tuple(-sign if j == 0 else 0 for j in range(d))
        options = [p for p in self.remaining if contains(obj, p)]
        pick = best_point(options)
        self.remaining.remove(pick)
        return pick


@dataclass
class GameReport:
    """Outcome of one adversary-versus-algorithm playout."""

    game: str
    kind: str
    dim: int
    opponent: str
    forced: int
    opt: int | None
    ratio: Fraction | None
    off_script: bool
    off_script_detail: str | None
    opt_point: IntPoint | None
    rounds: list[dict]
    invariants_ok: bool
    checks: list[RoundCheck] = field(default_factory=list)

    def to_json(self) -> str:
        doc = {
            "game": self.game,
            "kind": self.kind,
            "dim": self.dim,
            "opponent": self.opponent,
            "forced": self.forced,
            "opt": self.opt,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}" if self.ratio else None,
            "off_script": self.off_script,
            "off_script_detail": self.off_script_detail,
            "opt_point": list(self.opt_point) if self.opt_point else None,
            "invariants_ok": self.invariants_ok,
            "rounds": self.rounds,
        }
        return json.dumps(doc, indent=2)


def play(game, opponent, oracle_cap: int = oracle.DEFAULT_CAP) -> GameReport:
    """Drive adversary vs. opponent to completion and audit the result.

    The offline optimum of the issued sequence is recomputed with the exact
    oracle; for on-script completions the game's claimed single hitting point
    is also checked against every object.
    """
    rounds: list[dict] = []
    off_detail = None
    opt_point = None
    obj = game.next_object(None)
    while obj is not None:
        hit = opponent.respond(obj)
        rounds.append(
            {
                "index": len(rounds) + 1,
                "kind": obj.kind,
                "center": [str(c) for c in obj.center],
                "hit": list(hit),
            }
        )
        try:
            obj = game.next_object(hit)
        except OffScriptError as e:
            off_detail = str(e)
            obj = None
    if off_detail is None:
        cert = game.certificate()
        opt_point = cert["opt_point"]
    forced = len(game.hits)
    inst = oracle.Instance(tuple(game.objects))
    try:
        opt = len(oracle.opt_hitting_set(inst, cap=oracle_cap))
    except oracle.CapExceededError:
        opt = None
    ratio = Fraction(forced, opt) if opt else None
    return GameReport(
        game=game.name,
        kind=game.kind,
        dim=game.dim,
        opponent=getattr(opponent, "name", opponent.__class__.__name__),
        forced=forced,
        opt=opt,
        ratio=ratio,
        off_script=off_detail is not None,
        off_script_detail=off_detail,
        opt_point=opt_point,
        rounds=rounds,
        invariants_ok=all(c.ok for c in game.checks),
        checks=list(game.checks),
    )
