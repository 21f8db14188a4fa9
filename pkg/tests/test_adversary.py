import json
import random
from fractions import Fraction

import pytest

from gridhit.adversary import (
    BALL_GAME_EPS,
    AlgorithmOpponent,
    BallGame,
    HypercubeGame,
    IntervalGame,
    InvalidMoveError,
    OffScriptError,
    ScriptedBallOpponent,
    box_intersection_count,
    play,
    script_containment_lhs,
)
from gridhit.geometry import contains, cube, object_points, rat_point
from gridhit.oracle import Instance, opt_hitting_set


def common_points_by_enumeration(objects):
    sets = [set(object_points(o)) for o in objects]
    common = set.intersection(*sets)
    return len(common)


class TestIntervalGame:
    @pytest.mark.parametrize("i,expected_center", [(0, "3/2"), (1, "5/2"), (2, "1/2")])
    def test_second_interval_dodges_the_hit(self, i, expected_center):
        game = IntervalGame(0)
        game.next_object(None)
        hit = (i,)
        second = game.next_object(hit)
        assert second.center == (Fraction(expected_center),)
        assert not contains(second, hit)
        target = ((i + 1) % 3,)
        assert contains(second, target)
        if i == 1:
            assert set(object_points(second)) == {(2,), (3,)}

    def test_invalid_first_hit(self):
        game = IntervalGame(0)
        game.next_object(None)
        with pytest.raises(InvalidMoveError):
            game.next_object((7,))

    def test_full_game_versus_best_point(self):
        for start in (-3, 0, 11):
            report = play(IntervalGame(start), AlgorithmOpponent("bpa", "cube", 1))
            assert report.forced == 2
            assert report.opt == 1
            assert report.ratio == 2
            assert not report.off_script
            assert report.invariants_ok

    def test_certificate_point_hits_everything(self):
        game = IntervalGame(5)
        report = play(game, AlgorithmOpponent("bpa", "cube", 1))
        assert all(contains(o, report.opt_point) for o in game.objects)


class TestBallGame:
    def test_dimension_restricted(self):
        with pytest.raises(ValueError):
            BallGame(4)

    def test_branch_centers(self):
        game = BallGame(2)
        game.next_object(None)
        second = game.next_object((0, -1))  # negative unit vector branch
        assert second.center == rat_point(1, 1)

        mirrored = BallGame(2)
        mirrored.next_object(None)
        second = mirrored.next_object((1, 0))  # positive unit vector: mirrored
        assert second.center == rat_point(-1, -1)

    def test_center_branch_is_unmirrored(self):
        game = BallGame(3)
        game.next_object(None)
        second = game.next_object((0, 0, 0))
        assert second.center == rat_point("13/20", "13/20", "13/20")

    def test_third_round_coordinate_3d(self):
        game = BallGame(3)
        game.next_object(None)
        game.next_object((0, 0, 0))
        third = game.next_object((0, 0, 1))  # answer with the last script target
        expected = Fraction(3, 2) * Fraction(13, 20)
        assert expected == Fraction(39, 40)
        assert third.center == (expected, expected, Fraction(0))

    def test_scripted_playouts_reach_certificates(self):
        for first in ("center", "minus", "plus"):
            for d in (2, 3):
                game = BallGame(d)
                report = play(game, ScriptedBallOpponent(first))
                assert report.forced == d + 1
                assert report.opt == 1
                assert report.ratio == d + 1
                assert not report.off_script
                assert report.invariants_ok
                assert all(contains(o, report.opt_point) for o in game.objects)

    def test_every_round_excludes_previous_hits(self):
        game = BallGame(3)
        opponent = ScriptedBallOpponent("minus")
        obj = game.next_object(None)
        hits = []
        while obj is not None:
            for h in hits:
                assert not contains(obj, h)
            hit = opponent.respond(obj)
            hits.append(hit)
            obj = game.next_object(hit)
        assert all(check.ok for check in game.checks)

    def test_off_script_halts_with_report(self):
        game = BallGame(2)
        game.next_object(None)
        game.next_object((0, -1))
        with pytest.raises(OffScriptError):
            game.next_object((1, 1))  # valid hit, but not a scripted target

    def test_off_script_report_from_play(self):
        for d in (2, 3):
            for algo in ("bpa", "nc"):
                report = play(BallGame(d), AlgorithmOpponent(algo, "ball", d))
                assert report.off_script
                assert report.opt_point is None
                assert report.invariants_ok
                assert report.opt == 1

    def test_invalid_move(self):
        game = BallGame(2)
        game.next_object(None)
        with pytest.raises(InvalidMoveError):
            game.next_object((3, 3))
        with pytest.raises(InvalidMoveError):
            game.next_object("origin")


class TestContainmentGap:
    def test_round_three_breaks_in_dimension_four(self):
        for eps in (Fraction(1, 10), Fraction(3, 20), Fraction(1, 2)):
            assert script_containment_lhs(4, eps, 3) > 1

    def test_script_dimensions_hold_every_round(self):
        for d in (2, 3):
            eps = BALL_GAME_EPS[d]
            for round_index in range(2, d + 2):
                assert script_containment_lhs(d, eps, round_index) <= 1

    def test_d2_round_two_sits_exactly_on_the_boundary(self):
        assert script_containment_lhs(2, Fraction(1, 2), 2) == 1

    def test_dimension_four_breaks_for_any_sampled_eps(self):
        rng = random.Random(40)
        for _ in range(200):
            eps = Fraction(rng.randint(1, 400), 800)  # dense in (0, 1/2]
            assert script_containment_lhs(4, eps, 3) > 1


class TestHypercubeGame:
    def test_first_shift_follows_the_sign_rule(self):
        game = HypercubeGame(2)
        game.next_object(None)
        second = game.next_object((0, 0))
        assert second.center == rat_point("5/4", 0)

        flipped = HypercubeGame(2)
        flipped.next_object(None)
        second = flipped.next_object((1, 1))
        assert second.center == rat_point("-5/4", 0)

    def test_eps_validation(self):
        with pytest.raises(ValueError):
            HypercubeGame(2, eps=Fraction(1, 2))
        with pytest.raises(ValueError):
            HypercubeGame(2, eps=Fraction(0))

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_common_point_counts(self, d):
        game = HypercubeGame(d)
        opponent = AlgorithmOpponent("nc", "cube", d)
        obj = game.next_object(None)
        issued = []
        while obj is not None:
            issued.append(obj)
            obj = game.next_object(opponent.respond(obj))
        for i in range(1, len(issued) + 1):
            want = 3 ** (d - i + 1)
            assert box_intersection_count(issued[:i]) == want
            assert common_points_by_enumeration(issued[:i]) == want

    @pytest.mark.parametrize("algo", ["bpa", "nc", "rir"])
    def test_forces_dim_plus_one_against_every_algorithm(self, algo):
        for d in (1, 2, 3, 5):
            report = play(HypercubeGame(d), AlgorithmOpponent(algo, "cube", d, seed=2))
            assert report.forced == d + 1
            assert report.opt == 1
            assert report.invariants_ok
            assert not report.off_script

    def test_certificate_corner_point(self):
        game = HypercubeGame(3)
        report = play(game, AlgorithmOpponent("nc", "cube", 3))
        assert report.opt_point is not None
        assert all(abs(x) == 1 for x in report.opt_point)
        assert all(contains(o, report.opt_point) for o in game.objects)

    def test_invalid_move(self):
        game = HypercubeGame(2)
        game.next_object(None)
        with pytest.raises(InvalidMoveError):
            game.next_object((4, 0))


class TestBoxIntersection:
    def test_matches_enumeration(self):
        rng = random.Random(6)
        for _ in range(100):
            d = rng.randint(1, 3)
            objs = [
                cube(*[Fraction(rng.randint(-4, 4), 2) for _ in range(d)])
                for _ in range(rng.randint(1, 3))
            ]
            brute = len(set.intersection(*[set(object_points(o)) for o in objs]))
            assert box_intersection_count(objs) == brute

    def test_disjoint_cubes(self):
        assert box_intersection_count([cube(0, 0), cube(5, 5)]) == 0


class TestPlay:
    def test_report_serializes(self):
        report = play(HypercubeGame(2), AlgorithmOpponent("bpa", "cube", 2))
        doc = json.loads(report.to_json())
        assert doc["forced"] == 3
        assert doc["opt"] == 1
        assert doc["ratio"] == "3/1"
        assert len(doc["rounds"]) == 3
        assert doc["rounds"][0]["center"] == ["0", "0"]

    def test_oracle_confirms_single_point_optimum(self):
        game = HypercubeGame(4)
        play(game, AlgorithmOpponent("nc", "cube", 4))
        inst = Instance(tuple(game.objects))
        assert len(opt_hitting_set(inst)) == 1

    def test_algorithm_opponent_rejects_already_hit(self):
        opponent = AlgorithmOpponent("bpa", "cube", 1)
        opponent.respond(cube(1))
        with pytest.raises(InvalidMoveError):
            opponent.respond(cube(1))  # same interval again: nothing new to place
