import random
from fractions import Fraction

import pytest

from gridhit.geometry import BALL, CUBE, contains
from gridhit.instances import (
    InstanceFile,
    adversarial_instance,
    cluster_instance,
    dump_instance,
    parse_instance,
    random_instance,
    read_instance,
    write_instance,
)
from gridhit.oracle import Instance, opt_hitting_set


class TestFileFormat:
    def test_round_trip_exact(self, tmp_path):
        inst = InstanceFile(BALL, 2, [
            (Fraction(1, 2), Fraction(-3, 97)),
            (Fraction(5), Fraction(0)),
        ])
        path = tmp_path / "inst.txt"
        write_instance(inst, path)
        back = read_instance(path)
        assert back.kind == inst.kind and back.dim == inst.dim
        assert back.centers == inst.centers
        write_instance(back, tmp_path / "again.txt")
        assert (tmp_path / "inst.txt").read_text() == (tmp_path / "again.txt").read_text()

    def test_text_shape(self):
        inst = InstanceFile(CUBE, 1, [(Fraction(3, 2),)])
        assert dump_instance(inst) == "cube 1\n3/2\n"

    def test_comments_and_blank_lines_ignored(self):
        text = "# generated\n\nball 2\n1/2 1/2\n\n# trailing\n"
        inst = parse_instance(text)
        assert inst.kind == BALL and len(inst.centers) == 1

    def test_bad_header(self):
        with pytest.raises(ValueError):
            parse_instance("ball\n")
        with pytest.raises(ValueError):
            parse_instance("")
        with pytest.raises(ValueError):
            parse_instance("torus 2\n0 0\n")

    def test_dimension_enforced(self):
        with pytest.raises(ValueError):
            InstanceFile(BALL, 2, [(Fraction(0),)])


class TestGenerators:
    @pytest.mark.parametrize("kind,dim", [(BALL, 2), (BALL, 3), (CUBE, 2), (CUBE, 5)])
    def test_cluster_contains_anchor(self, kind, dim):
        rng = random.Random(dim)
        anchor = tuple(rng.randint(-5, 5) for _ in range(dim))
        inst = cluster_instance(kind, dim, 40, anchor, seed=8)
        assert len(inst.centers) == 40
        assert all(contains(o, anchor) for o in inst.objects)

    def test_cluster_optimum_is_one(self):
        inst = cluster_instance(CUBE, 2, 12, (0, 0), seed=4)
        assert len(opt_hitting_set(Instance(tuple(inst.objects)))) == 1

    def test_cluster_centers_strictly_interior_coordinatewise(self):
        inst = cluster_instance(CUBE, 3, 50, (1, 1, 1), seed=2)
        for c in inst.centers:
            assert all(abs(x - 1) < 1 for x in c)

    def test_random_window(self):
        inst = random_instance(BALL, 2, 30, seed=5, window=3)
        for c in inst.centers:
            assert all(abs(x) <= 3 for x in c)
            assert all(x.denominator in (1, 97) for x in c)

    def test_determinism(self):
        a = cluster_instance(BALL, 2, 10, (0, 0), seed=42)
        b = cluster_instance(BALL, 2, 10, (0, 0), seed=42)
        assert a.centers == b.centers

    def test_custom_denominator(self):
        inst = random_instance(CUBE, 2, 10, seed=1, denominator=13)
        assert all(x.denominator in (1, 13) for c in inst.centers for x in c)

    def test_anchor_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cluster_instance(BALL, 2, 5, (0, 0, 0), seed=0)


class TestAdversarialReplay:
    def test_cube_game_replay(self):
        inst, report = adversarial_instance("cube", 3, "bpa", seed=0)
        assert inst.kind == CUBE and inst.dim == 3
        assert len(inst.centers) == 4
        assert report.forced == 4 and report.opt == 1

    def test_interval_replay(self):
        inst, report = adversarial_instance("interval", 1, "bpa", seed=0, start=7)
        assert inst.dim == 1 and len(inst.centers) == 2
        assert report.ratio == 2

    def test_ball_replay_scripted(self):
        inst, report = adversarial_instance("ball", 2, "script:plus", seed=0)
        assert len(inst.centers) == 3
        assert not report.off_script

    def test_unknown_game(self):
        with pytest.raises(ValueError):
            adversarial_instance("simplex", 2, "bpa", seed=0)
