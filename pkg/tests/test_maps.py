"""Piecewise-affine maps: pointwise oracles for apply/image/compose/classify."""

from math import lcm

import pytest

from ckomega import (
    OMEGA,
    PeriodicSet,
    Piece,
    ProgressionMap,
    classify,
    combine_piecewise,
    compose,
    doubling,
    identity,
    order_embedding,
    parse_map,
    shift,
)
from ckomega.errors import PartitionError, PreconditionError
from conftest import rand_infinite_set, rand_map, rand_set

EVENS = PeriodicSet.residue_class(0, 2)
ODDS = PeriodicSet.residue_class(1, 2)


def const_map(c: int) -> ProgressionMap:
    return ProgressionMap([Piece(OMEGA, 0, 1, c, 0)])


def swap_parity() -> ProgressionMap:
    down = Piece(ODDS, 1, 2, 0, 2)  # x -> x-1 on the odds
    return combine_piecewise([(EVENS, shift(1)), (ODDS, ProgressionMap([down, Piece(EVENS, 0, 2, 0, 2)]))])


class TestConstruction:
    def test_totality_enforced(self):
        with pytest.raises(PartitionError):
            ProgressionMap([Piece(EVENS, 0, 2, 0, 1)])  # odds uncovered

    def test_overlap_rejected(self):
        with pytest.raises(PartitionError):
            ProgressionMap([Piece(OMEGA, 0, 1, 0, 1), Piece(EVENS, 0, 2, 0, 1)])

    def test_domain_must_fit_rule(self):
        with pytest.raises(PreconditionError):
            ProgressionMap([Piece(OMEGA, 1, 2, 0, 1)])

    def test_finite_pieces_fold_into_table(self):
        f = ProgressionMap(
            [Piece(PeriodicSet.finite([3]), 3, 1, 7, 0), Piece(OMEGA - PeriodicSet.finite([3]), 0, 1, 0, 1)]
        )
        assert f.table == {3: 7}

    def test_rule_merging(self):
        halves = [Piece(EVENS, 0, 2, 0, 2), Piece(ODDS, 1, 2, 1, 2)]
        assert ProgressionMap(halves) == identity()


class TestApply:
    def test_doubling(self):
        assert doubling().apply(3) == 6

    def test_identity(self):
        assert identity().apply(17) == 17

    def test_table_override(self):
        f = parse_map("piece(omega - {2}; 0,1 -> 0,1) table{2:9}")
        assert f.apply(2) == 9 and f.apply(3) == 3


class TestImage:
    def test_doubling_of_odds(self):
        img = doubling().image(ODDS)
        assert img == PeriodicSet.residue_class(2, 4)
        want = {2 * n for n in range(200) if n % 2 == 1}
        assert all((y in img) == (y in want) for y in range(200))

    def test_identity_image(self):
        s = PeriodicSet(4, (1, 2), added=(0,))
        assert identity().image(s) == s

    def test_constant_image(self):
        assert const_map(0).image(EVENS) == PeriodicSet.finite([0])

    def test_image_soundness_and_sample_completeness(self, rng):
        for _ in range(25):
            f, a = rand_map(rng), rand_set(rng)
            img = f.image(a)
            for n in (x for x in range(500) if x in a):
                assert f.apply(n) in img
            # completeness on samples below 500: find preimages below a bound
            bound = 500 * max([p.d for p in f.pieces] + [1]) + 600
            hits = {f.apply(n) for n in range(bound) if n in a}
            for y in (y for y in range(500) if y in img):
                assert y in hits

    def test_preimage_pointwise(self, rng):
        for _ in range(25):
            f, s = rand_map(rng), rand_set(rng)
            pre = f.preimage(s)
            for n in range(300):
                assert (n in pre) == (f.apply(n) in s)


class TestCompose:
    def test_pointwise_example(self):
        assert compose(doubling(), shift(1)).apply(3) == 8

    def test_identity_right_unit(self):
        for f in (doubling(), shift(2), swap_parity()):
            assert compose(f, identity()) == f

    def test_identity_left_unit(self):
        for f in (doubling(), shift(2), swap_parity()):
            assert compose(identity(), f) == f

    def test_parity_swaps_cancel(self):
        s = swap_parity()
        ss = compose(s, s)
        for n in range(100):
            assert ss.apply(n) == n
        assert ss == identity()

    def test_random_pointwise(self, rng):
        for _ in range(30):
            f, g = rand_map(rng), rand_map(rng)
            fg = compose(f, g)
            for n in range(500):
                assert fg.apply(n) == f.apply(g.apply(n))

    def test_associativity_canonical(self, rng):
        # both association orders must canonicalize identically: ambiguous
        # points (rule crossings) get a deterministic owner
        for _ in range(40):
            f, g, h = rand_map(rng), rand_map(rng), rand_map(rng)
            left = compose(compose(f, g), h)
            right = compose(f, compose(g, h))
            assert left == right
            for n in range(200):
                assert left.apply(n) == f.apply(g.apply(h.apply(n)))

    def test_piecewise_composition_operator(self):
        # iterating f -> f o (h1 on A1 | h2 on A2) keeps representations small
        swap = swap_parity()
        glue = combine_piecewise([(EVENS, swap), (ODDS, identity())])
        f = doubling()
        for rounds in range(1, 7):
            f = compose(f, glue)
            for n in range(300):
                x = n
                for _ in range(rounds):
                    x = glue.apply(x)
                assert f.apply(n) == 2 * x
            assert len(f.pieces) <= 8  # re-canonicalization keeps chains tractable


class TestCombinePiecewise:
    def test_two_parts(self):
        g = combine_piecewise([(EVENS, shift(1)), (ODDS, identity())])
        assert g.apply(4) == 5 and g.apply(3) == 3

    def test_single_part_is_the_map(self):
        f = swap_parity()
        assert combine_piecewise([(OMEGA, f)]) == f

    def test_empty_parts_rejected(self):
        with pytest.raises(PreconditionError):
            combine_piecewise([])

    def test_overlap_goes_to_first_part(self):
        g = combine_piecewise([(EVENS, shift(1)), (OMEGA, identity())])
        assert g.apply(0) == 1 and g.apply(1) == 1

    def test_restriction_extended_by_identity(self):
        # move one mod-8 class into the next, fix everything else
        a2 = PeriodicSet.residue_class(2, 8)
        a3 = PeriodicSet.residue_class(3, 8)
        f = order_embedding(a2, a3)
        g = combine_piecewise([(a2, f), (~a2, identity())])
        for n in range(64):
            if n % 8 == 2:
                assert g.apply(n) in a3
            else:
                assert g.apply(n) == n


class TestOrderEmbedding:
    def test_evens_to_odds(self):
        f = order_embedding(EVENS, ODDS)
        assert [f.apply(n) for n in (0, 2, 4)] == [1, 3, 5]
        for n in range(0, 200, 2):
            assert f.apply(n) == n + 1

    def test_self_embedding_is_identity_on_the_set(self):
        s = PeriodicSet(4, (1, 3), added=(0,))
        f = order_embedding(s, s)
        for n in (x for x in range(100) if x in s):
            assert f.apply(n) == n

    def test_quartering(self):
        f = order_embedding(PeriodicSet.residue_class(0, 4), EVENS)
        for n in range(0, 200, 4):
            assert f.apply(n) == n // 2

    def test_monotone_bijection_onto_target(self, rng):
        for _ in range(20):
            a, b = rand_infinite_set(rng), rand_infinite_set(rng)
            f = order_embedding(a, b)
            members = [n for n in range(400) if n in a]
            values = [f.apply(n) for n in members]
            assert values == sorted(values)
            assert all(v in b for v in values)
            assert values == [b.nth(k) for k in range(len(values))]

    def test_finite_input_rejected(self):
        with pytest.raises(PreconditionError):
            order_embedding(PeriodicSet.finite([1]), EVENS)


class TestClassify:
    def test_doubling(self):
        flags = classify(doubling())
        assert flags.injective and flags.finite_to_one

    def test_constant(self):
        flags = classify(const_map(0))
        assert not flags.injective and not flags.finite_to_one

    def test_shift_then_identity_collision(self):
        g = combine_piecewise([(EVENS, shift(1)), (ODDS, identity())])
        flags = classify(g)
        assert not flags.injective and flags.finite_to_one  # 0 and 1 both land on 1

    def test_fiber_search_agrees(self, rng):
        for _ in range(25):
            f = rand_map(rng)
            flags = classify(f)
            mods = [p.domain.modulus * p.d for p in f.pieces] + [1]
            bound = 10 * lcm(*mods) + 20
            fibers = {}
            for n in range(bound):
                fibers.setdefault(f.apply(n), []).append(n)
            cap = len(f.pieces) + len(f.table)
            assert flags.finite_to_one == all(len(v) <= cap for v in fibers.values())
            collisions = any(len(v) > 1 for v in fibers.values())
            if collisions:
                assert not flags.injective

    def test_injective_maps_have_no_collisions(self, rng):
        for _ in range(40):
            f = rand_map(rng)
            if classify(f).injective:
                seen = [f.apply(n) for n in range(600)]
                assert len(set(seen)) == len(seen)


class TestJson:
    def test_round_trip(self, rng):
        for _ in range(20):
            f = rand_map(rng)
            assert ProgressionMap.from_json(f.to_json()) == f
