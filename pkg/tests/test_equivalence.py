import random
from fractions import Fraction

import pytest

from gridhit.equivalence import (
    CubeSignature,
    class_points,
    classes_containing,
    decompose,
    representative_center,
    signature,
    type_of,
)
from gridhit.geometry import CUBE, UnitObject, ball, contains, cube, object_points
from gridhit.suites import grid_scan_classes


def random_center(rng, d, int_prob=0.35):
    return tuple(
        Fraction(rng.randint(-3, 3)) if rng.random() < int_prob
        else Fraction(rng.randint(-3 * 8, 3 * 8), 8)
        for _ in range(d)
    )


class TestSignature:
    def test_mixed_example(self):
        sig = signature(cube("1/2", 2))
        assert sig.entries == (("F", 0), ("I", 2))

    def test_same_class_same_points(self):
        a, b = cube("1/4", 2), cube("3/4", 2)
        assert signature(a) == signature(b)
        assert set(object_points(a)) == set(object_points(b))

    def test_different_class_different_points(self):
        a, b = cube("1/2", 2), cube("1/2", "5/2")
        assert signature(a) != signature(b)
        assert set(object_points(a)) != set(object_points(b))

    def test_balls_rejected(self):
        with pytest.raises(ValueError):
            signature(ball(0, 0))

    def test_soundness_and_completeness(self):
        # Equal signature <=> equal covered set, on centers coarse enough to collide.
        rng = random.Random(99)
        for _ in range(1000):
            d = rng.randint(1, 4)
            a = UnitObject(CUBE, random_center(rng, d))
            b = UnitObject(CUBE, random_center(rng, d))
            same_sig = signature(a) == signature(b)
            same_pts = set(object_points(a)) == set(object_points(b))
            assert same_sig == same_pts, (a, b)

    def test_text_round_trip(self):
        sig = signature(cube("1/2", 2, "-7/3"))
        assert sig.text() == "F:0,I:2,F:-3"
        assert CubeSignature.parse(sig.text()) == sig

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            CubeSignature.parse("Q:1")


class TestType:
    def test_all_integer(self):
        sig = signature(cube(0, 0, 0))
        assert type_of(sig) == 0
        assert len(object_points(cube(0, 0, 0))) == 27

    def test_all_fractional(self):
        sig = signature(cube("1/2", "1/2", "1/2"))
        assert type_of(sig) == 3
        assert len(object_points(cube("1/2", "1/2", "1/2"))) == 8

    def test_mixed_3d(self):
        obj = cube("1/2", "1/2", 0)
        assert type_of(signature(obj)) == 2
        assert len(object_points(obj)) == 12

    def test_count_guarantee(self):
        rng = random.Random(5)
        for _ in range(200):
            d = rng.randint(1, 5)
            obj = UnitObject(CUBE, random_center(rng, d))
            k = type_of(signature(obj))
            assert len(object_points(obj)) == 2 ** k * 3 ** (d - k)


class TestDecompose:
    def test_single_integer_axis(self):
        parts = decompose(cube(0, "1/2"))
        assert {sig.entries for sig in parts} == {
            (("F", -1), ("F", 0)),
            (("F", 0), ("F", 0)),
        }

    def test_fully_integer_3d(self):
        obj = cube(0, 0, 0)
        parts = decompose(obj)
        assert len(parts) == 8
        union = set()
        for sig in parts:
            union.update(class_points(sig))
        assert union == set(object_points(obj))
        assert len(union) == 27

    def test_finest_type_is_identity(self):
        obj = cube("1/2", "-3/2")
        assert decompose(obj) == frozenset([signature(obj)])

    def test_counts_and_exact_union(self):
        rng = random.Random(17)
        for _ in range(400):
            d = rng.randint(1, 5)
            obj = UnitObject(CUBE, random_center(rng, d))
            k = type_of(signature(obj))
            parts = decompose(obj)
            assert len(parts) == 2 ** (d - k)
            assert all(type_of(sig) == d for sig in parts)
            union = set()
            for sig in parts:
                union.update(class_points(sig))
            assert union == set(object_points(obj))


class TestClassesContaining:
    def test_1d(self):
        got = classes_containing((5,))
        assert {sig.entries for sig in got} == {(("F", 4),), (("F", 5),)}

    def test_3d_counts_and_representatives(self):
        p = (1, -2, 0)
        got = classes_containing(p)
        assert len(got) == 2 ** 3
        for sig in got:
            rep = UnitObject(CUBE, representative_center(sig))
            assert contains(rep, p)
            assert signature(rep) == sig

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_matches_grid_scan_oracle(self, d):
        rng = random.Random(d)
        for _ in range(3):
            p = tuple(rng.randint(-4, 4) for _ in range(d))
            assert classes_containing(p) == frozenset(grid_scan_classes(p))

    def test_every_class_point_set_contains_p(self):
        p = (2, -1)
        for sig in classes_containing(p):
            assert p in class_points(sig)


def test_cluster_decomposition_stays_within_anchor_classes():
    # Interior cluster centers only produce finest classes around the anchor,
    # so the union over a cluster has at most 2^d classes (optimum is 1).
    from gridhit.instances import cluster_instance

    rng = random.Random(3)
    for d in (2, 3):
        anchor = tuple(rng.randint(-2, 2) for _ in range(d))
        inst = cluster_instance(CUBE, d, 60, anchor, seed=rng.randrange(2 ** 32))
        union = set()
        for obj in inst.objects:
            union |= decompose(obj)
        assert union <= classes_containing(anchor)
        assert len(union) <= 2 ** d


def test_multi_cluster_decomposition_bound():
    # Union the decompositions over k well-separated clusters: at most 2^d
    # classes per optimum point, with the optimum verified by the oracle.
    from gridhit.instances import cluster_instance
    from gridhit.oracle import Instance, opt_hitting_set

    rng = random.Random(29)
    d = 2
    anchors = [(0, 0), (7, 0), (0, -7)]
    objects = []
    for anchor in anchors:
        objects += cluster_instance(CUBE, d, 10, anchor, seed=rng.randrange(2 ** 32)).objects
    opt = len(opt_hitting_set(Instance(tuple(objects))))
    assert opt == len(anchors)
    union = set()
    for obj in objects:
        union |= decompose(obj)
    assert len(union) <= 2 ** d * opt
