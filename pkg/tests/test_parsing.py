import pytest

from ckomega import PeriodicSet, identity, parse_map, parse_set, parse_subboxes, shift
from ckomega.errors import ParseError

EVENS = PeriodicSet.residue_class(0, 2)


class TestSetGrammar:
    def test_residue_atom(self):
        assert parse_set("0%2") == EVENS

    def test_literal_with_exceptions(self):
        s = parse_set("0%2 + {1} - {0}")
        assert 1 in s and 0 not in s and 2 in s and 3 not in s
        assert s == PeriodicSet(2, (0,), added=(1,), removed=(0,))

    def test_complement(self):
        assert parse_set("~(1%2)") == EVENS
        # oracle: complement by enumeration to 100
        s = parse_set("~(1%2)")
        assert all((n in s) == (n % 2 == 0) for n in range(100))

    def test_named_atoms(self):
        assert parse_set("omega") == PeriodicSet.omega()
        assert parse_set("empty") == PeriodicSet.empty()

    def test_precedence(self):
        # & binds tighter than + and -
        assert parse_set("0%2 + 1%2 & 1%4") == parse_set("0%2 + (1%2 & 1%4)")
        assert parse_set("omega - 0%2 & 0%4") == parse_set("omega - (0%2 & 0%4)")

    def test_whitespace_insensitive(self):
        assert parse_set(" 0 % 2+ {1}-{ 0 } ") == parse_set("0%2+{1}-{0}")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_set("0%2 + )")
        assert exc.value.pos == 6

    def test_modulus_zero(self):
        with pytest.raises(ParseError) as exc:
            parse_set("1%0")
        assert exc.value.pos == 2

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_set("0%2 0%3")


class TestBoxGrammar:
    def test_single(self):
        (sb,) = parse_subboxes("[0%2 -> 1%2]")
        assert sb.source == EVENS and sb.target == ~EVENS

    def test_conjunction(self):
        boxes = parse_subboxes("[0%2 -> 0%4] & [1%2 -> omega]")
        assert len(boxes) == 2
        assert boxes[1].target == PeriodicSet.omega()

    def test_missing_arrow(self):
        with pytest.raises(ParseError):
            parse_subboxes("[0%2, 1%2]")


class TestMapGrammar:
    def test_named(self):
        assert parse_map("id") == identity()
        assert parse_map("shift(3)") == shift(3)
        assert parse_map("double").apply(5) == 10

    def test_piece_and_table(self):
        f = parse_map("piece(0%2; 0,2 -> 1,2) piece(1%2 - {3}; 1,2 -> 0,2) table{3:3}")
        assert [f.apply(n) for n in range(6)] == [1, 0, 3, 3, 5, 4]

    def test_round_trip(self):
        f = parse_map("piece(0%2; 0,2 -> 1,2) piece(1%2; 1,2 -> 0,2)")
        assert parse_map(f.to_expr()) == f

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_map("triple")
