"""Instance files and generators for the workbench CLI.

The on-disk format is plain text with exact rationals, so instances
round-trip byte-for-byte:

    ball 3
    1/2 3/97 -5
    ...

First non-comment line: kind ("ball" or "cube") and dimension.  Every further
line is one object center, d whitespace-separated rationals written as
``num/den`` or plain integers.  No floats anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .geometry import BALL, CUBE, KINDS, IntPoint, RatPoint, UnitObject

DEFAULT_DENOMINATOR = 97  # prime, so sampled coordinates are almost never integral


@dataclass
class InstanceFile:
    kind: str
    dim: int
    centers: list[RatPoint]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        for c in self.centers:
            if len(c) != self.dim:
                raise ValueError(f"center {c} does not have dimension {self.dim}")

    @property
    def objects(self) -> list[UnitObject]:
        return [UnitObject(self.kind, c) for c in self.centers]


def dump_instance(inst: InstanceFile) -> str:
    lines = [f"{inst.kind} {inst.dim}"]
    for c in inst.centers:
        lines.append(" ".join(str(x) for x in c))
    return "\n".join(lines) + "\n"


def write_instance(inst: InstanceFile, path) -> None:
    with open(path, "w") as f:
        f.write(dump_instance(inst))


def parse_instance(text: str) -> InstanceFile:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty instance file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {lines[0]!r}: expected '<kind> <dim>'")
    kind, dim = head[0], int(head[1])
    centers = []
    for ln in lines[1:]:
        parts = ln.split()
        centers.append(tuple(Fraction(p) for p in parts))
    return InstanceFile(kind, dim, centers)


def read_instance(path) -> InstanceFile:
    with open(path) as f:
        return parse_instance(f.read())


def _interior_offset(rng: random.Random, denominator: int) -> Fraction:
    # Strictly inside (-1, 1): numerators exclude +-denominator so every
    # generated object keeps its anchor strictly interior coordinate-wise.
    return Fraction(rng.randint(-(denominator - 1), denominator - 1), denominator)


def cluster_instance(
    kind: str,
    dim: int,
    count: int,
    anchor: IntPoint,
    seed: int,
    denominator: int = DEFAULT_DENOMINATOR,
) -> InstanceFile:
    """Objects whose centers all lie in the unit object around ``anchor``.

    Every generated object contains the anchor, so the offline optimum is 1
    by construction.  Ball centers are rejection-sampled from the box until
    the exact squared distance is at most 1.
    """
    if len(anchor) != dim:
        raise ValueError("anchor dimension mismatch")
    rng = random.Random(seed)
    centers: list[RatPoint] = []
    while len(centers) < count:
        off = [_interior_offset(rng, denominator) for _ in range(dim)]
        if kind == BALL and sum(o * o for o in off) > 1:
            continue
        centers.append(tuple(a + o for a, o in zip(anchor, off)))
    return InstanceFile(kind, dim, centers)


def random_instance(
    kind: str,
    dim: int,
    count: int,
    seed: int,
    window: int = 4,
    denominator: int = DEFAULT_DENOMINATOR,
) -> InstanceFile:
    """Objects with centers uniform over the box [-window, window]^d."""
    rng = random.Random(seed)
    lo, hi = -window * denominator, window * denominator
    centers = [
        tuple(Fraction(rng.randint(lo, hi), denominator) for _ in range(dim))
        for _ in range(count)
    ]
    return InstanceFile(kind, dim, centers)


def adversarial_instance(game_name: str, dim: int, algorithm: str, seed: int,
                         start: int = 0, eps=None):
    """Replay an adversary game against a named algorithm; returns (instance, report)."""
    from . import adversary

    if game_name == adversary.INTERVAL_GAME:
        game = adversary.IntervalGame(start)
    elif game_name == adversary.BALL_GAME:
        game = adversary.BallGame(dim, eps=eps)
    elif game_name == adversary.HYPERCUBE_GAME:
        game = adversary.HypercubeGame(dim, eps=eps if eps is not None else adversary.HYPERCUBE_EPS_DEFAULT)
    else:
        raise ValueError(f"unknown game {game_name!r}")
    if algorithm.startswith("script"):
        first = algorithm.partition(":")[2] or "center"
        opponent = adversary.ScriptedBallOpponent(first)
    else:
        opponent = adversary.AlgorithmOpponent(algorithm, game.kind, game.dim, seed=seed)
    report = adversary.play(game, opponent)
    inst = InstanceFile(game.kind, game.dim, [o.center for o in game.objects])
    return inst, report
