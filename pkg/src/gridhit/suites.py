"""Named verification suites behind the `verify` CLI subcommand.

Each suite re-checks one of the library's quantitative guarantees with
configurable trial counts and seeds: covering certificates for the filter
lattices, per-optimum-point ceilings for the online algorithms on cluster
instances, the equivalence-class counts, the adversary-game invariants, and
the nearest-center point budget.  Default trial counts are sized so the whole
registry finishes in well under a minute.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from . import adversary, online
from .equivalence import class_points, classes_containing, decompose, signature, type_of
from .filters import ball_filter, covering_certificate, cube_filter
from .geometry import BALL, CUBE, UnitObject, contains, hits_any, object_points
from .instances import cluster_instance


def nc_bound(dim: int) -> int:
    """Closed-form count of integer points within L2 distance 2 of a grid point.

    This is the per-optimum-point ceiling for the nearest-center algorithm on
    unit balls: 1 + 4d + sum over i in 2..4 of 2^i * C(d, i).
    """
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    return 1 + 4 * dim + sum(2 ** i * comb(dim, i) for i in range(2, 5))


def nc_bound_bruteforce(dim: int) -> int:
    """Independent box-scan count of {z integer: ||z||^2 <= 4}."""
    return sum(
        1 for z in product(range(-2, 3), repeat=dim) if sum(x * x for x in z) <= 4
    )


def grid_scan_classes(p):
    """Independent oracle for the finest classes containing a grid point.

    Scans candidate centers on the quarter grid inside the surrounding unit
    hypercube, keeps those with no integer coordinate, and collects the
    signatures of the cubes that contain ``p``.
    """
    d = len(p)
    shifts = [Fraction(k, 4) for k in range(-4, 5)]
    found = set()
    for offs in product(shifts, repeat=d):
        center = tuple(Fraction(x) + o for x, o in zip(p, offs))
        if any(c.denominator == 1 for c in center):
            continue
        obj = UnitObject(CUBE, center)
        if contains(obj, p):
            found.add(signature(obj))
    return found


@dataclass
class SuiteParams:
    dim: int | None = None
    trials: int | None = None
    seed: int = 0
    clusters: int = 60
    objects: int = 100
    eps: Fraction | None = None


@dataclass
class SuiteResult:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return "\n".join([f"{status} {self.name}"] + [f"  {ln}" for ln in self.lines])


def run_cluster_bound(kind: str, dim: int, algorithm: str, bound: int,
                      clusters: int, objects: int, seed: int):
    """Run cluster instances (optimum 1 by construction) and collect violations."""
    rng = random.Random(seed)
    violations = []
    worst = 0
    for c in range(clusters):
        anchor = tuple(rng.randint(-5, 5) for _ in range(dim))
        inst = cluster_instance(kind, dim, objects, anchor, seed=rng.randrange(2 ** 32))
        result = online.run(algorithm, inst.objects, seed=rng.randrange(2 ** 32))
        n = len(result.state.hits)
        worst = max(worst, n)
        if n > bound:
            violations.append((c, anchor, n))
    return violations, worst


def _suite_covering(params: SuiteParams, variant: str) -> SuiteResult:
    dim = params.dim or (4 if variant == BALL else 6)
    trials = params.trials or 2000
    lattice = ball_filter(dim) if variant == BALL else cube_filter(dim)
    rep = covering_certificate(lattice, variant, trials, params.seed)
    lines = [
        f"dim={dim} trials={rep.trials} failures={len(rep.failures)} "
        f"count range [{rep.min_count}, {rep.max_count}]"
    ]
    if rep.failures:
        lines.append(f"counterexample center: {tuple(str(c) for c in rep.failures[0])}")
    name = "lemma1" if variant == BALL else "lemma3"
    return SuiteResult(name, rep.ok, lines)


def suite_lemma1(params: SuiteParams) -> SuiteResult:
    return _suite_covering(params, BALL)


def suite_lemma3(params: SuiteParams) -> SuiteResult:
    return _suite_covering(params, CUBE)


def _suite_cluster(name: str, kind: str, dim: int, algorithm: str, bound: int,
                   params: SuiteParams) -> SuiteResult:
    violations, worst = run_cluster_bound(
        kind, dim, algorithm, bound, params.clusters, params.objects, params.seed)
    lines = [
        f"{algorithm} on {params.clusters} {kind} clusters (dim {dim}, "
        f"{params.objects} objects each): worst |A|={worst}, bound {bound}"
    ]
    if violations:
        lines.append(f"violations: {violations[:3]}")
    return SuiteResult(name, not violations, lines)


def suite_lemma2(params: SuiteParams) -> SuiteResult:
    return _suite_cluster("lemma2", BALL, 3, online.BPA, 14, params)


def suite_lemma4(params: SuiteParams) -> SuiteResult:
    return _suite_cluster("lemma4", CUBE, 3, online.BPA, 8, params)


def suite_theorem3(params: SuiteParams) -> SuiteResult:
    return _suite_cluster("theorem3", BALL, 2, online.BPA, 4, params)


def suite_theorem7(params: SuiteParams) -> SuiteResult:
    return _suite_cluster("theorem7", CUBE, 2, online.BPA, 4, params)


def suite_theorem4(params: SuiteParams) -> SuiteResult:
    dim = params.dim or 3
    return _suite_cluster("theorem4", BALL, dim, online.NC, nc_bound(dim), params)


def suite_theorem1(params: SuiteParams) -> SuiteResult:
    trials = params.trials or 50
    rng = random.Random(params.seed)
    bad = []
    for _ in range(trials):
        start = rng.randint(-50, 50)
        game = adversary.IntervalGame(start)
        opponent = adversary.AlgorithmOpponent(online.BPA, CUBE, 1, seed=params.seed)
        report = adversary.play(game, opponent)
        if not (report.forced == 2 and report.opt == 1 and report.invariants_ok):
            bad.append((start, report.forced, report.opt))
    lines = [f"{trials} random starts: every game forced 2 points against optimum 1"
             if not bad else f"failures: {bad[:3]}"]
    return SuiteResult("theorem1", not bad, lines)


def suite_nc_count(params: SuiteParams) -> SuiteResult:
    dim = params.dim or 6
    formula = nc_bound(dim)
    brute = nc_bound_bruteforce(dim)
    return SuiteResult(
        "nc-count",
        formula == brute,
        [f"dim={dim}: formula {formula}, box scan {brute}"],
    )


def suite_lemma6(params: SuiteParams) -> SuiteResult:
    trials = params.trials or 300
    max_dim = params.dim or 5
    rng = random.Random(params.seed)
    bad = []
    for t in range(trials):
        d = rng.randint(1, max_dim)
        center = tuple(
            Fraction(rng.randint(-3, 3)) if rng.random() < 0.3
            else Fraction(rng.randint(-3 * 97, 3 * 97), 97)
            for _ in range(d)
        )
        obj = UnitObject(CUBE, center)
        k = type_of(signature(obj))
        parts = decompose(obj)
        union = set()
        for sig in parts:
            union.update(class_points(sig))
        if len(parts) != 2 ** (d - k) or union != set(object_points(obj)):
            bad.append((t, center))
    lines = [f"{trials} random cubes (dim <= {max_dim}): class count 2^(d-k) and exact point union"
             if not bad else f"failures: {bad[:3]}"]
    return SuiteResult("lemma6", not bad, lines)


def suite_lemma7(params: SuiteParams) -> SuiteResult:
    max_dim = min(params.dim or 3, 3)
    rng = random.Random(params.seed)
    bad = []
    for d in range(1, max_dim + 1):
        for _ in range(3):
            p = tuple(rng.randint(-4, 4) for _ in range(d))
            got = classes_containing(p)
            want = grid_scan_classes(p)
            if len(got) != 2 ** d or got != frozenset(want):
                bad.append((d, p, len(got), len(want)))
    lines = [f"dims 1..{max_dim}: classes containing a grid point match the "
             f"quarter-grid scan and number 2^d" if not bad else f"failures: {bad[:3]}"]
    return SuiteResult("lemma7", not bad, lines)


def suite_theorem9(params: SuiteParams) -> SuiteResult:
    dim = params.dim or 4
    eps = params.eps or adversary.HYPERCUBE_EPS_DEFAULT
    bad = []
    lines = []
    for algorithm in (online.BPA, online.NC, online.RIR):
        game = adversary.HypercubeGame(dim, eps=eps)
        opponent = adversary.AlgorithmOpponent(algorithm, CUBE, dim, seed=params.seed)
        report = adversary.play(game, opponent)
        ok = report.forced == dim + 1 and report.opt == 1 and report.invariants_ok
        lines.append(f"{algorithm}: forced {report.forced}, opt {report.opt}, "
                     f"invariants {'ok' if report.invariants_ok else 'BROKEN'}")
        if not ok:
            bad.append(algorithm)
    return SuiteResult("theorem9", not bad, lines)


def suite_remark1(params: SuiteParams) -> SuiteResult:
    breaks = [
        adversary.script_containment_lhs(4, e, 3) > 1
        for e in (Fraction(1, 10), Fraction(3, 20), Fraction(1, 2))
    ]
    holds = [
        adversary.script_containment_lhs(d, adversary.BALL_GAME_EPS[d], r) <= 1
        for d in (2, 3)
        for r in range(2, d + 2)
    ]
    passed = all(breaks) and all(holds)
    lines = [
        "dim 4, round 3: containment gap exceeds 1 for eps in {1/10, 3/20, 1/2}",
        "dims 2 and 3: every scripted round satisfies the containment bound",
    ]
    return SuiteResult("remark1", passed, lines)


def suite_rir_bounds(params: SuiteParams) -> SuiteResult:
    rng = random.Random(params.seed)
    clusters = max(params.clusters // 2, 10)
    bad = []
    worst = {}
    for d in (3, 4, 5):
        bound = online.rir_draw_count(d) * (d + 2)
        for c in range(clusters):
            anchor = tuple(rng.randint(-3, 3) for _ in range(d))
            inst = cluster_instance(CUBE, d, params.objects, anchor,
                                    seed=rng.randrange(2 ** 32))
            result = online.run(online.RIR, inst.objects, seed=rng.randrange(2 ** 32))
            st = result.state
            feasible = all(hits_any(o, st.hits) for o in inst.objects)
            ok = (
                len(st.bookkeeping) <= bound
                and st.a1 | st.a2 == set(st.hits)
                and not (st.a1 & st.a2)
                and st.a1 <= st.bookkeeping
                and feasible
            )
            worst[d] = max(worst.get(d, 0), len(st.bookkeeping))
            if not ok:
                bad.append((d, c))
    lines = [
        f"dim {d}: worst |B|={worst[d]} within bound {online.rir_draw_count(d) * (d + 2)}"
        for d in (3, 4, 5)
    ]
    if bad:
        lines.append(f"violations: {bad[:3]}")
    return SuiteResult("rir-bounds", not bad, lines)


SUITES = {
    "lemma1": (suite_lemma1, "every unit ball (dim <= 4) contains a ball-filter point"),
    "lemma2": (suite_lemma2, "best-point places <= 14 points per ball cluster in 3-d"),
    "lemma3": (suite_lemma3, "every unit hypercube contains a cube-filter point"),
    "lemma4": (suite_lemma4, "best-point places <= 8 points per cube cluster in 3-d"),
    "lemma6": (suite_lemma6, "a type-k cube splits into 2^(d-k) finest classes covering it exactly"),
    "lemma7": (suite_lemma7, "a grid point lies in exactly 2^d finest classes (grid-scan oracle)"),
    "hit-hyp": (suite_lemma7, "alias of lemma7"),
    "nc-count": (suite_nc_count, "nearest-center point budget formula equals the box scan"),
    "theorem1": (suite_theorem1, "interval adversary forces 2 points against optimum 1"),
    "theorem3": (suite_theorem3, "best-point places <= 4 points per disk cluster"),
    "theorem4": (suite_theorem4, "nearest-center places <= budget points per ball cluster"),
    "theorem7": (suite_theorem7, "best-point places <= 4 points per square cluster"),
    "theorem9": (suite_theorem9, "hypercube adversary forces d+1 points with 3^(d-i+1) common points"),
    "remark1": (suite_remark1, "the ball-game construction provably breaks at dimension 4"),
    "rir-bounds": (suite_rir_bounds, "reweighting bookkeeping stays within ceil(5d/2)(d+2) per optimum point"),
}


def run_suite(name: str, params: SuiteParams) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    fn, _ = SUITES[name]
    return fn(params)
