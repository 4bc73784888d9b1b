"""Piecewise-affine self-maps of the naturals, exactly representable.

A ``ProgressionMap`` is total on the naturals: finitely many pieces, each an
affine rule ``x -> b + e*(x - a)/d`` on an eventually periodic domain
contained in the progression ``a, a+d, a+2d, ...``, plus a finite exception
table.  The family is closed under composition and piecewise combination,
and images/preimages of eventually periodic sets are computed exactly, so
the almost-containment checks that drive box membership never approximate.

A finite-to-one map here stands for its continuous extension to the
Stone-Cech remainder; a constant piece breaks finite-to-one-ness (the
extension then leaves the remainder), which ``classify`` reports.

``LazyInjection`` is the second kind of representable map: an injection
produced value-by-value from a scheme tree's promises.  It is confined to
the game session that owns its tree and must not be shared across tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .errors import PartitionError, PreconditionError
from .periodic import EMPTY, OMEGA, PeriodicSet

__all__ = [
    "Piece",
    "ProgressionMap",
    "MapFlags",
    "LazyInjection",
    "identity",
    "shift",
    "doubling",
    "compose",
    "combine_piecewise",
    "order_embedding",
    "classify",
]


@dataclass(frozen=True)
class Piece:
    """One affine piece: on ``domain``, x maps to ``b + e*(x - a)//d``.

    Every domain element is congruent to ``a`` mod ``d`` and at least ``a``;
    ``e == 0`` encodes a constant piece.
    """

    domain: PeriodicSet
    a: int
    d: int
    b: int
    e: int

    def value(self, x: int) -> int:
        return self.b + self.e * ((x - self.a) // self.d)

    def image(self) -> PeriodicSet:
        """Exact image of the full domain."""
        if self.domain.is_empty:
            return EMPTY
        if self.e == 0:
            return PeriodicSet.finite([self.b])
        ks = self.domain.affine_preimage(self.d, self.a)
        return ks.affine_image(self.e, self.b)

    def to_json(self) -> dict:
        return {
            "dom": self.domain.to_json(),
            "a": self.a,
            "d": self.d,
            "b": self.b,
            "e": self.e,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Piece":
        return cls(PeriodicSet.from_json(data["dom"]), data["a"], data["d"], data["b"], data["e"])


@dataclass(frozen=True)
class MapFlags:
    injective: bool
    finite_to_one: bool

    def to_json(self) -> dict:
        return {"injective": self.injective, "finite_to_one": self.finite_to_one}


class ProgressionMap:
    """A total map on the naturals given by affine pieces plus a table.

    The constructor canonicalizes (finite piece domains fold into the
    table, rules are put in lowest terms with minimal anchors, compatible
    pieces merge) and then checks that the piece domains and the table
    keys partition the naturals exactly.  Canonical structural equality
    therefore coincides with extensional equality for maps built through
    the public operations.  Instances are immutable.
    """

    __slots__ = ("pieces", "table")

    def __init__(self, pieces: Iterable[Piece] = (), table: Mapping[int, int] | None = None):
        tab: dict[int, int] = dict(table or {})
        for n, v in tab.items():
            if n < 0 or v < 0:
                raise PreconditionError("table entries must be naturals")
        work: list[Piece] = []
        for p in list(pieces):
            if p.d <= 0 or p.e < 0 or p.a < 0 or p.b < 0:
                raise PreconditionError("piece parameters out of range")
            if not (p.domain - PeriodicSet.progression(p.a, p.d)).is_empty:
                raise PreconditionError(
                    "piece domain must lie inside the progression of its rule"
                )
            if p.domain.is_empty:
                continue
            if p.domain.is_finite:
                for x in sorted(p.domain.added):
                    tab[x] = p.value(x)
                continue
            work.append(self._primitive(p))
        # merge pieces carrying the same affine rule
        merged: list[Piece] = []
        for p in sorted(work, key=lambda q: (q.domain.min(), q.d, q.a)):
            for i, q in enumerate(merged):
                if self._same_rule(p, q):
                    lo, hi = (q, p) if q.a <= p.a else (p, q)
                    merged[i] = Piece(p.domain | q.domain, lo.a, lo.d, lo.b, lo.e)
                    break
            else:
                merged.append(p)
        self._assign_ambiguous(merged, tab)
        merged.sort(key=lambda q: (q.domain.min(), q.d, q.a, q.b, q.e))
        object.__setattr__(self, "pieces", tuple(merged))
        object.__setattr__(self, "table", dict(sorted(tab.items())))
        self._check_partition()

    def __setattr__(self, name, value):
        raise AttributeError("ProgressionMap is immutable")

    @staticmethod
    def _primitive(p: Piece) -> Piece:
        if p.e == 0:  # anchor 0 so the rule's reach is domain-independent
            return Piece(p.domain, 0, 1, p.b, 0)
        g = gcd(p.d, p.e)
        d, e = p.d // g, p.e // g
        a, b = p.a, p.b
        t = min(a // d, b // e)
        return Piece(p.domain, a - t * d, d, b - t * e, e)

    @staticmethod
    def _same_rule(p: Piece, q: Piece) -> bool:
        if p.d != q.d or p.e != q.e:
            return False
        if p.e == 0:
            return p.b == q.b
        if (p.a - q.a) % p.d != 0:
            return False
        return p.b == q.b + p.e * ((p.a - q.a) // p.d)

    @staticmethod
    def _rule_key(p: Piece) -> tuple[Fraction, Fraction]:
        slope = Fraction(p.e, p.d)
        return (slope, p.b - slope * p.a)

    @staticmethod
    def _rule_fits(p: Piece, x: int, value: int) -> bool:
        return x >= p.a and (x - p.a) % p.d == 0 and p.value(x) == value

    @classmethod
    def _assign_ambiguous(cls, merged: list[Piece], tab: dict[int, int]) -> None:
        """Give every rule-ambiguous point to the least compatible rule.

        A natural can satisfy two distinct affine rules only where their
        graphs cross, so the ambiguous points are the pairwise crossings
        plus the table keys.  Assigning each to the lexicographically
        least (slope, intercept) rule that fits its value makes the
        canonical form independent of how the map was assembled.
        """
        cands: set[int] = set(tab.keys())
        keys = [cls._rule_key(p) for p in merged]
        for i in range(len(merged)):
            for j in range(i + 1, len(merged)):
                (b1, a1), (b2, a2) = keys[i], keys[j]
                if b1 == b2:
                    continue
                x = (a2 - a1) / (b1 - b2)
                if x.denominator == 1 and x >= 0:
                    cands.add(int(x))
        order = sorted(range(len(merged)), key=lambda i: keys[i])
        for x in sorted(cands):
            owner = None
            if x in tab:
                value = tab[x]
            else:
                owner = next((i for i, p in enumerate(merged) if x in p.domain), None)
                if owner is None:
                    continue  # not covered here; the partition check decides later
                value = merged[owner].value(x)
            best = next(
                (i for i in order if cls._rule_fits(merged[i], x, value)), None
            )
            if best is None or best == owner:
                continue
            if owner is None:
                del tab[x]
            else:
                p = merged[owner]
                merged[owner] = Piece(
                    p.domain - PeriodicSet.finite([x]), p.a, p.d, p.b, p.e
                )
            q = merged[best]
            merged[best] = Piece(q.domain | PeriodicSet.finite([x]), q.a, q.d, q.b, q.e)

    def _check_partition(self) -> None:
        for i, p in enumerate(self.pieces):
            for q in self.pieces[i + 1 :]:
                if not (p.domain & q.domain).is_empty:
                    raise PartitionError("piece domains overlap")
        cover = EMPTY
        for p in self.pieces:
            cover = cover | p.domain
        rest = ~cover
        if not rest.is_finite or set(rest.added) != set(self.table):
            raise PartitionError("piece domains plus table must partition omega")

    # ------------------------------------------------------------------

    def apply(self, n: int) -> int:
        if n < 0:
            raise PreconditionError("arguments are naturals")
        if n in self.table:
            return self.table[n]
        for p in self.pieces:
            if n in p.domain:
                return p.value(n)
        raise PreconditionError("map is not total")  # unreachable on valid maps

    def __call__(self, n: int) -> int:
        return self.apply(n)

    def image(self, s: PeriodicSet) -> PeriodicSet:
        """Exact image set f(s)."""
        out = EMPTY
        for p in self.pieces:
            t = s & p.domain
            if t.is_empty:
                continue
            if p.e == 0:
                out = out | PeriodicSet.finite([p.b])
            else:
                ks = t.affine_preimage(p.d, p.a)
                out = out | ks.affine_image(p.e, p.b)
        hits = [v for n, v in self.table.items() if n in s]
        if hits:
            out = out | PeriodicSet.finite(hits)
        return out

    def preimage(self, s: PeriodicSet) -> PeriodicSet:
        """Exact preimage set f^-1(s)."""
        out = EMPTY
        for p in self.pieces:
            if p.e == 0:
                if p.b in s:
                    out = out | p.domain
            else:
                ks = s.affine_preimage(p.e, p.b)
                xs = ks.affine_image(p.d, p.a) & p.domain
                out = out | xs
        keys = [n for n, v in self.table.items() if v in s]
        if keys:
            out = out | PeriodicSet.finite(keys)
        return out

    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProgressionMap):
            return NotImplemented
        return self.pieces == other.pieces and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.pieces, tuple(sorted(self.table.items()))))

    def __repr__(self) -> str:
        return f"ProgressionMap({self.to_expr()!r})"

    def to_expr(self) -> str:
        parts = [
            f"piece({p.domain.to_expr()}; {p.a},{p.d} -> {p.b},{p.e})" for p in self.pieces
        ]
        if self.table:
            items = ",".join(f"{n}:{v}" for n, v in sorted(self.table.items()))
            parts.append("table{" + items + "}")
        return " ".join(parts) if parts else "table{}"

    def to_json(self) -> dict:
        return {
            "pieces": [p.to_json() for p in self.pieces],
            "table": {str(n): v for n, v in sorted(self.table.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProgressionMap":
        return cls(
            [Piece.from_json(p) for p in data["pieces"]],
            {int(n): v for n, v in data["table"].items()},
        )


def identity() -> ProgressionMap:
    return ProgressionMap([Piece(OMEGA, 0, 1, 0, 1)])

def shift(c: int) -> ProgressionMap:
    return ProgressionMap([Piece(OMEGA, 0, 1, c, 1)])

def doubling() -> ProgressionMap:
    return ProgressionMap([Piece(OMEGA, 0, 1, 0, 2)])


def compose(f: ProgressionMap, g: ProgressionMap) -> ProgressionMap:
    """The composite f(g(x)), refined so each output piece is affine.

    Each piece of g is cut along the residue pattern its values trace
    through the pieces of f; moduli are re-canonicalized afterwards so
    composition chains stay small.
    """
    table: dict[int, int] = {n: f.apply(v) for n, v in g.table.items()}
    pieces: list[Piece] = []
    for gp in g.pieces:
        remaining = gp.domain
        for t, ft in f.table.items():
            if gp.e > 0:
                num = t - gp.b
                if num >= 0 and num % gp.e == 0:
                    x = gp.a + gp.d * (num // gp.e)
                    if x in remaining:
                        table[x] = ft
                        remaining = remaining - PeriodicSet.finite([x])
            elif gp.b == t:
                if not remaining.is_empty:
                    pieces.append(Piece(remaining, remaining.min(), 1, ft, 0))
                remaining = EMPTY
                break
        if remaining.is_empty:
            continue
        if gp.e == 0:
            pieces.append(Piece(remaining, remaining.min(), 1, f.apply(gp.b), 0))
            continue
        for fp in f.pieces:
            ks = fp.domain.affine_preimage(gp.e, gp.b)
            dom = ks.affine_image(gp.d, gp.a) & remaining
            if dom.is_empty:
                continue
            if dom.is_finite:
                for x in sorted(dom.added):
                    table[x] = fp.value(gp.value(x))
                continue
            dd = gp.d * (fp.d // gcd(gp.e, fp.d))
            ee = gp.e * fp.e // gcd(gp.e, fp.d)
            big = lcm(dom.modulus, dd)
            cands = {
                (r + dom.modulus * q) % dd
                for r in dom.residues
                for q in range(big // dom.modulus)
            } | {x % dd for x in dom.added}
            for c in sorted(cands):
                part = dom & PeriodicSet.residue_class(c, dd)
                if part.is_empty:
                    continue
                if part.is_finite:
                    for x in sorted(part.added):
                        table[x] = fp.value(gp.value(x))
                    continue
                x0 = part.min()
                pieces.append(Piece(part, x0, dd, fp.value(gp.value(x0)), ee))
    return ProgressionMap(pieces, table)


def combine_piecewise(
    parts: list[tuple[PeriodicSet, ProgressionMap]]
) -> ProgressionMap:
    """Glue maps along an (almost-)partition of the naturals.

    Disputed naturals stay with the first part that claims them; naturals
    missed by every part go to the first part.  The parts must cover all
    but finitely many naturals.
    """
    if not parts:
        raise PreconditionError("combine_piecewise needs at least one part")
    assigned: list[tuple[PeriodicSet, ProgressionMap]] = []
    cover = EMPTY
    for s, fmap in parts:
        s2 = s - cover
        assigned.append((s2, fmap))
        cover = cover | s2
    rest = ~cover
    if not rest.is_finite:
        raise PartitionError("parts leave infinitely many naturals uncovered")
    if not rest.is_empty:
        s0, f0 = assigned[0]
        assigned[0] = (s0 | rest, f0)
    pieces: list[Piece] = []
    table: dict[int, int] = {}
    for s2, fmap in assigned:
        for n, v in fmap.table.items():
            if n in s2:
                table[n] = v
        for p in fmap.pieces:
            dom = p.domain & s2
            if not dom.is_empty:
                pieces.append(Piece(dom, p.a, p.d, p.b, p.e))
    return ProgressionMap(pieces, table)


def order_embedding(src: PeriodicSet, dst: PeriodicSet) -> ProgressionMap:
    """The order isomorphism src -> dst, extended by the identity off src.

    The k-th member of src is sent to the k-th member of dst; off src the
    map is the identity, so the result is total (the embedding itself is
    the restriction to src).
    """
    if src.is_finite or dst.is_finite:
        raise PreconditionError("order_embedding needs infinite source and target")
    sres = sorted(src.residues)
    s, u = len(sres), len(dst.residues)
    grid_b = -(-dst.threshold // dst.modulus) * dst.modulus
    base_rank = dst.count_below(grid_b)
    g = gcd(s, u)
    period = src.modulus * (u // g)
    slope = dst.modulus * (s // g)
    grid_a = -(-src.threshold // src.modulus) * src.modulus
    start = max(grid_a, src.nth(base_rank))
    start = -(-start // period) * period
    table = {x: dst.nth(src.count_below(x)) for x in src.members_below(start)}
    pieces: list[Piece] = []
    for c in range(period):
        dom_c = src & PeriodicSet.residue_class(c, period)
        if dom_c.is_finite:
            continue  # any stray members sit below `start` and are tabled
        dom = dom_c - PeriodicSet.finite(dom_c.members_below(start))
        x0 = dom.min()
        y0 = dst.nth(src.count_below(x0))
        pieces.append(Piece(dom, x0, period, y0, slope))
    rest = ~src
    if rest.is_finite:
        table.update({n: n for n in sorted(rest.added)})
    else:
        pieces.append(Piece(rest, rest.min(), 1, rest.min(), 1))
    return ProgressionMap(pieces, table)


def classify(f: ProgressionMap) -> MapFlags:
    """Exact injectivity and finite-to-one flags.

    A map is finite-to-one iff every piece has positive slope; it is
    injective iff each piece is, the piece images are pairwise disjoint,
    and the table is injective with values outside every piece image.
    """
    finite_to_one = all(p.e > 0 for p in f.pieces)
    injective = True
    images = []
    for p in f.pieces:
        if p.e == 0:  # canonical constant pieces have infinite domains
            injective = False
        images.append(p.image())
    if injective:
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                if not (images[i] & images[j]).is_empty:
                    injective = False
    if injective:
        vals = list(f.table.values())
        if len(set(vals)) != len(vals):
            injective = False
        else:
            for v in vals:
                if any(v in img for img in images):
                    injective = False
                    break
    return MapFlags(injective=injective, finite_to_one=finite_to_one)


class LazyInjection:
    """An injection emitted value-by-value from a scheme tree.

    ``apply(n)`` sends n to the least not-yet-used member of the target
    set of the node containing n at level min(n, tree height); emitted
    values are memoized and never revised, so prefixes are stable while
    the tree deepens.  Owned by a single session; not thread-safe.
    """

    def __init__(self, tree):
        self._tree = tree
        self._memo: list[int] = []
        self._used: set[int] = set()
        # per-target enumeration cursor: everything below a cursor is used,
        # and used values never free up, so cursors only advance
        self._cursors: dict[PeriodicSet, int] = {}

    @property
    def memo(self) -> tuple[int, ...]:
        return tuple(self._memo)

    def apply(self, n: int) -> int:
        if n < 0:
            raise PreconditionError("arguments are naturals")
        while len(self._memo) <= n:
            target = self._tree.target_for(len(self._memo))
            k = self._cursors.get(target, 0)
            while True:
                v = target.nth(k)
                k += 1
                if v not in self._used:
                    break
            self._cursors[target] = k
            self._memo.append(v)
            self._used.add(v)
        return self._memo[n]

    def __call__(self, n: int) -> int:
        return self.apply(n)

    def prefix(self, upto: int) -> list[int]:
        """Values 0..upto inclusive."""
        self.apply(upto)
        return self._memo[: upto + 1]
