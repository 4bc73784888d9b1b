"""Game engine: legality of moves, the NE tactic, witness streaming,
determinism of replay."""

import random

import pytest

from ckomega import OMEGA, PeriodicSet, identity, parse_set, shift
from ckomega.boxes import SubbasicBox, member, refine
from ckomega.errors import IllegalMoveError, PreconditionError
from ckomega.game import GameSession, new_game
from ckomega.jsonio import dumps
from ckomega.schemes import verify_star
from conftest import rand_move

EVENS = parse_set("0%2")
ODDS = parse_set("1%2")
MOD4 = parse_set("0%4")
ONE_MOD4 = parse_set("1%4")


def sb(a, b):
    return SubbasicBox(a, b)


class TestNewGame:
    def test_fresh_state(self):
        g = new_game("plain")
        assert g.turn == "E" and g.tree.height == 0 and g.rounds == 0
        assert g.current_box.constraints == (sb(OMEGA, OMEGA),)

    def test_strong_mode_flag(self):
        g = new_game("strong")
        assert g.mode == "strong" and g.turn == "E"

    def test_sessions_independent(self):
        g1, g2 = new_game("plain"), new_game("plain")
        g1.play_round([sb(EVENS, ODDS)])
        assert g2.rounds == 0 and g1.rounds == 1

    def test_bad_mode(self):
        with pytest.raises(PreconditionError):
            new_game("speedrun")


class TestMoveE:
    def test_stall_is_legal(self):
        g = new_game("plain")
        g.move_e([])
        assert g.turn == "NE"
        g.move_ne()
        assert g.current_box.constraints == (sb(OMEGA, OMEGA),)

    def test_genuine_shrink(self):
        g = new_game("plain")
        g.play_round([sb(EVENS, ODDS)])
        assert g.current_box.constraints == (sb(EVENS, ODDS), sb(ODDS, OMEGA))
        assert g.chain[-1][1].assignment == (0, 0)

    def test_empty_refinement_rejected_state_unchanged(self):
        g = new_game("plain")
        before = dumps(g.to_json())
        with pytest.raises(IllegalMoveError) as exc:
            g.move_e([sb(EVENS, PeriodicSet.finite([3]))])
        assert exc.value.reason == "empty"
        assert dumps(g.to_json()) == before
        assert g.turn == "E"

    def test_strong_mode_needs_member_point(self):
        g = new_game("strong")
        with pytest.raises(IllegalMoveError) as exc:
            g.move_e([sb(EVENS, ODDS)], point=identity())
        assert exc.value.reason == "not-member"
        assert g.turn == "E"

    def test_strong_mode_accepts_member_point(self):
        g = new_game("strong")
        point = shift(1)  # not a member: shift(1) maps odds into evens, target omega is fine
        box, _ = refine(g.current_box, [sb(EVENS, ODDS)])
        assert member(point, box)
        g.play_round([sb(EVENS, ODDS)], point=point)
        assert g.rounds == 1

    def test_strong_mode_missing_point(self):
        g = new_game("strong")
        with pytest.raises(IllegalMoveError) as exc:
            g.move_e([])
        assert exc.value.reason == "missing-point"

    def test_wrong_turn(self):
        g = new_game("plain")
        g.move_e([])
        with pytest.raises(IllegalMoveError) as exc:
            g.move_e([])
        assert exc.value.reason == "wrong-turn"

    def test_abandoned(self):
        g = new_game("plain")
        g.abandon()
        with pytest.raises(IllegalMoveError) as exc:
            g.move_e([])
        assert exc.value.reason == "abandoned"
        assert g.status == "abandoned"


class TestMoveNE:
    def test_tactic_adopts_box_and_extends(self):
        g = new_game("plain")
        g.move_e([])
        g.move_ne()
        assert g.rounds == 1 and g.tree.height == 1
        assert len(g.witness.memo) >= 2

    def test_example_scheme_game(self):
        g = new_game("plain")
        for _ in range(5):
            g.play_round([sb(EVENS, MOD4), sb(ODDS, ONE_MOD4)])
        assert g.witness_prefix(5) == [0, 1, 4, 5, 8, 9]

    def test_split_makes_new_level_nodes(self):
        g = new_game("plain")
        g.play_round([sb(EVENS, OMEGA)])
        assert [len(lvl) for lvl in g.tree.levels] == [1, 2]


class TestWitness:
    def test_prefix_bounds(self):
        g = new_game("plain")
        assert g.witness_prefix(0) == [0]
        with pytest.raises(PreconditionError):
            g.witness_prefix(1)

    def test_prefix_stable_across_rounds(self):
        g = new_game("plain")
        g.play_round([sb(EVENS, MOD4), sb(ODDS, ONE_MOD4)])
        first = g.witness_prefix(1)
        for _ in range(4):
            g.play_round([])
        assert g.witness_prefix(1) == first
        assert g.witness_prefix(1) == first  # query twice

    def test_twenty_scripted_rounds(self):
        rng = random.Random(7)
        g = new_game("plain")
        for _ in range(20):
            g.play_round(rand_move(rng, g.current_box))
        prefix = g.witness_prefix(20)
        assert len(set(prefix)) == len(prefix)
        g.witness.apply(511)
        assert verify_star(g.tree, g.witness, 512)


class TestSuggestions:
    def test_all_suggestions_legal(self):
        rng = random.Random(3)
        g = new_game("plain")
        for _ in range(6):
            for item in g.suggestions():
                extra = [SubbasicBox.from_json(x) for x in item["extra"]]
                refine(g.current_box, extra)  # raises if illegal
            g.play_round(rand_move(rng, g.current_box))

    def test_point_templates_are_members(self):
        g = new_game("strong")
        g.play_round([sb(EVENS, ODDS)], point=shift(1))
        from ckomega import ProgressionMap

        for tpl in g.point_templates():
            f = ProgressionMap.from_json(tpl["map"])
            assert member(f, g.current_box)


class TestReplayDeterminism:
    def test_bit_identical_state(self):
        rng = random.Random(11)
        g = new_game("plain")
        for _ in range(10):
            g.play_round(rand_move(rng, g.current_box))
        log = g.export_log()
        again = GameSession.replay("plain", log)
        assert dumps(again.to_json()) == dumps(g.to_json())

    def test_strong_replay(self):
        g = new_game("strong")
        box, _ = refine(g.current_box, [sb(EVENS, ODDS)])
        g.play_round([sb(EVENS, ODDS)], point=shift(1))
        again = GameSession.replay("strong", g.export_log())
        assert dumps(again.to_json()) == dumps(g.to_json())
