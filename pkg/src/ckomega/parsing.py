"""Parsers for the three ASCII grammars the workbench speaks.

Set expressions::

    atom  := r%m | {n1,n2,...} | omega | empty
    expr  := atom | expr + expr | expr & expr | expr - expr | ~expr | (expr)

``~`` binds tightest, then ``&``, then ``+``/``-`` (left associative).

Box expressions are conjunctions of subbasic constraints::

    box   := sub (& sub)*
    sub   := [ setexpr -> setexpr ]

Map expressions::

    map   := id | shift(c) | double | piece-list
    piece-list := piece(setexpr; a,d -> b,e)+ [table{n:m,...}]

Everything is whitespace-insensitive; errors carry a character position.
"""

from __future__ import annotations

from .errors import ParseError
from .periodic import PeriodicSet


class _Tokens:
    SYMBOLS = ("->", "%", "{", "}", ",", "(", ")", "+", "&", "-", "~", "[", "]", ";", ":")

    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str | int, int]] = []  # (kind, value, pos)
        i, n = 0, len(text)
        while i < n:
            c = text[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.items.append(("int", int(text[i:j]), i))
                i = j
                continue
            if c.isalpha() or c == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.items.append(("name", text[i:j], i))
                i = j
                continue
            for sym in self.SYMBOLS:
                if text.startswith(sym, i):
                    self.items.append(("sym", sym, i))
                    i += len(sym)
                    break
            else:
                raise ParseError(f"unexpected character {c!r}", i)
        self.pos = 0

    def peek(self) -> tuple[str, str | int, int]:
        if self.pos < len(self.items):
            return self.items[self.pos]
        return ("end", "", len(self.text))

    def next(self) -> tuple[str, str | int, int]:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_sym(self, sym: str) -> None:
        kind, val, pos = self.next()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}", pos)

    def expect_int(self) -> int:
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError("expected an integer", pos)
        return int(val)

    def at_sym(self, sym: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "sym" and val == sym

    def take_sym(self, sym: str) -> bool:
        if self.at_sym(sym):
            self.pos += 1
            return True
        return False

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def require_done(self) -> None:
        if not self.done():
            _, val, pos = self.peek()
            raise ParseError(f"unexpected trailing input {val!r}", pos)


def _finite_literal(toks: _Tokens) -> frozenset[int]:
    toks.expect_sym("{")
    elems = []
    if not toks.at_sym("}"):
        elems.append(toks.expect_int())
        while toks.take_sym(","):
            elems.append(toks.expect_int())
    toks.expect_sym("}")
    return frozenset(elems)


def _set_atom(toks: _Tokens) -> PeriodicSet:
    kind, val, pos = toks.peek()
    if kind == "int":
        r = toks.expect_int()
        toks.expect_sym("%")
        _, _, mpos = toks.peek()
        m = toks.expect_int()
        if m == 0:
            raise ParseError("modulus 0 is not allowed", mpos)
        return PeriodicSet.residue_class(r, m)
    if kind == "name":
        toks.next()
        if val == "omega":
            return PeriodicSet.omega()
        if val == "empty":
            return PeriodicSet.empty()
        raise ParseError(f"unknown set name {val!r}", pos)
    if kind == "sym" and val == "{":
        return PeriodicSet.finite(_finite_literal(toks))
    if kind == "sym" and val == "(":
        toks.next()
        inner = _set_expr(toks)
        toks.expect_sym(")")
        return inner
    raise ParseError("expected a set atom", pos)


def _set_factor(toks: _Tokens) -> PeriodicSet:
    if toks.take_sym("~"):
        return ~_set_factor(toks)
    return _set_atom(toks)


def _set_term(toks: _Tokens) -> PeriodicSet:
    out = _set_factor(toks)
    while toks.take_sym("&"):
        out = out & _set_factor(toks)
    return out


def _set_expr(toks: _Tokens) -> PeriodicSet:
    out = _set_term(toks)
    while True:
        if toks.take_sym("+"):
            out = out | _set_term(toks)
        elif toks.take_sym("-"):
            out = out - _set_term(toks)
        else:
            return out


def parse_set(text: str) -> PeriodicSet:
    """Parse a set expression into canonical form."""
    toks = _Tokens(text)
    out = _set_expr(toks)
    toks.require_done()
    return out


def parse_subboxes(text: str):
    """Parse a box expression into a list of SubbasicBox constraints."""
    from .boxes import SubbasicBox

    toks = _Tokens(text)
    out = []
    while True:
        toks.expect_sym("[")
        src = _set_expr(toks)
        toks.expect_sym("->")
        tgt = _set_expr(toks)
        toks.expect_sym("]")
        out.append(SubbasicBox(src, tgt))
        if not toks.take_sym("&"):
            break
    toks.require_done()
    return out


def parse_map(text: str):
    """Parse a map expression into a ProgressionMap."""
    from .maps import Piece, ProgressionMap, identity, shift, doubling

    toks = _Tokens(text)
    kind, val, pos = toks.peek()
    if kind == "name" and val in ("id", "shift", "double"):
        toks.next()
        if val == "id":
            out = identity()
        elif val == "double":
            out = doubling()
        else:
            toks.expect_sym("(")
            c = toks.expect_int()
            toks.expect_sym(")")
            out = shift(c)
        toks.require_done()
        return out

    pieces = []
    table: dict[int, int] = {}
    saw_any = False
    while True:
        kind, val, pos = toks.peek()
        if kind == "name" and val == "piece":
            toks.next()
            toks.expect_sym("(")
            dom = _set_expr(toks)
            toks.expect_sym(";")
            a = toks.expect_int()
            toks.expect_sym(",")
            d = toks.expect_int()
            toks.expect_sym("->")
            b = toks.expect_int()
            toks.expect_sym(",")
            e = toks.expect_int()
            toks.expect_sym(")")
            pieces.append(Piece(dom, a, d, b, e))
            saw_any = True
            continue
        if kind == "name" and val == "table":
            toks.next()
            toks.expect_sym("{")
            if not toks.at_sym("}"):
                while True:
                    n = toks.expect_int()
                    toks.expect_sym(":")
                    table[n] = toks.expect_int()
                    if not toks.take_sym(","):
                        break
            toks.expect_sym("}")
            saw_any = True
            continue
        break
    if not saw_any:
        raise ParseError("expected a map expression", pos)
    toks.require_done()
    return ProgressionMap(pieces, table)
