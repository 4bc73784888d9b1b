"""Exact arithmetic on eventually periodic subsets of the naturals.

An eventually periodic set is a finite union of residue classes together
with finitely many inserted and deleted elements.  This family is closed
under union, intersection, difference and complement, and every
almost-containment question (inclusion up to a finite set) is decidable:
a difference of two such sets is again eventually periodic, and it is
finite exactly when its periodic part vanishes.

A set A of naturals stands here for the clopen subset A* of the
Stone-Cech remainder; two representatives denote the same clopen set
precisely when they differ in finitely many elements, which is what the
``almost_*`` relations decide.  Values are immutable and all operations
are pure, so they can be shared freely across threads.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator

from .errors import EmptySetError, PreconditionError

__all__ = ["PeriodicSet", "OMEGA", "EMPTY"]


def _bit(mask: int, i: int) -> bool:
    return bool((mask >> i) & 1)


def _lift(mask: int, m: int, big: int) -> int:
    # replicate an m-bit residue mask across a modulus `big` divisible by m
    out = 0
    for off in range(0, big, m):
        out |= mask << off
    return out


@lru_cache(maxsize=None)
def _divisors(m: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return tuple(small + large[::-1])


class PeriodicSet:
    """Canonical form of an eventually periodic subset of the naturals.

    The denotation is ``{n : n % modulus in residues} | added - removed``.
    Canonical means: the modulus is the minimal eventual period, every
    element of ``added`` lies outside the residue classes, every element
    of ``removed`` lies inside them, and the exception sets are disjoint.
    With that, structural equality is exact set equality, and a canonical
    set is finite if and only if it has no residues at all (then it equals
    ``added``).  The constructor accepts any raw description and
    canonicalizes it.
    """

    __slots__ = ("modulus", "_mask", "added", "removed")

    def __init__(
        self,
        modulus: int,
        residues: Iterable[int] = (),
        added: Iterable[int] = (),
        removed: Iterable[int] = (),
        *,
        mask: int | None = None,
    ):
        if modulus <= 0:
            raise PreconditionError("modulus must be a positive integer")
        if mask is None:
            mask = 0
            for r in residues:
                mask |= 1 << (r % modulus)
        if added or removed:
            add_raw = set(added)
            rem_raw = set(removed)
            for n in add_raw | rem_raw:
                if n < 0:
                    raise PreconditionError("exceptions must be naturals")
            # raw denotation is (class | added) - removed; split against the class
            add = {n for n in add_raw - rem_raw if not _bit(mask, n % modulus)}
            rem = {n for n in rem_raw if _bit(mask, n % modulus)}
        else:
            add = rem = ()
        # minimal eventual period: smallest divisor d of modulus such that
        # the residue pattern is invariant under shifting by d
        full = (1 << modulus) - 1
        if mask == 0 or mask == full:
            mask &= 1
            modulus = 1
        elif modulus > 1:
            for d in _divisors(modulus):
                rot = ((mask >> d) | (mask << (modulus - d))) & full if d < modulus else mask
                if rot == mask:
                    modulus = d
                    mask &= (1 << d) - 1
                    break
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_mask", mask)
        object.__setattr__(self, "added", frozenset(add))
        object.__setattr__(self, "removed", frozenset(rem))

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("PeriodicSet is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def omega(cls) -> "PeriodicSet":
        return cls(1, (0,))

    @classmethod
    def empty(cls) -> "PeriodicSet":
        return cls(1)

    @classmethod
    def finite(cls, elems: Iterable[int]) -> "PeriodicSet":
        return cls(1, (), added=elems)

    @classmethod
    def residue_class(cls, r: int, m: int) -> "PeriodicSet":
        """The class ``r % m``."""
        return cls(m, (r,))

    @classmethod
    def progression(cls, start: int, step: int) -> "PeriodicSet":
        """The arithmetic progression start, start+step, start+2*step, ..."""
        if step <= 0 or start < 0:
            raise PreconditionError("progression needs start >= 0, step >= 1")
        below = range(start % step, start, step)
        return cls(step, (start % step,), removed=below)

    # ------------------------------------------------------------------
    # structure

    @property
    def residues(self) -> frozenset[int]:
        return frozenset(r for r in range(self.modulus) if _bit(self._mask, r))

    @property
    def threshold(self) -> int:
        """All exceptions live strictly below this bound."""
        return max(self.added | self.removed, default=-1) + 1

    @property
    def is_finite(self) -> bool:
        return self._mask == 0

    @property
    def is_almost_empty(self) -> bool:
        return self._mask == 0

    @property
    def is_empty(self) -> bool:
        return self._mask == 0 and not self.added

    def __contains__(self, n: int) -> bool:
        if n in self.added:
            return True
        if n in self.removed:
            return False
        return _bit(self._mask, n % self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicSet):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self._mask == other._mask
            and self.added == other.added
            and self.removed == other.removed
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self._mask, self.added, self.removed))

    def __repr__(self) -> str:
        return f"PeriodicSet({self.to_expr()!r})"

    # ------------------------------------------------------------------
    # Boolean algebra

    def _combine(self, other: "PeriodicSet", mask_op, bool_op) -> "PeriodicSet":
        big = lcm(self.modulus, other.modulus)
        ma = _lift(self._mask, self.modulus, big)
        mb = _lift(other._mask, other.modulus, big)
        mask = mask_op(ma, mb) & ((1 << big) - 1)
        # away from both exception sets, membership equals class membership,
        # so the predicted mask can only be wrong on the exceptions themselves
        if not (self.added or self.removed or other.added or other.removed):
            return PeriodicSet(big, mask=mask)
        add, rem = [], []
        for n in (self.added | self.removed | other.added | other.removed):
            actual = bool_op(n in self, n in other)
            if actual != _bit(mask, n % big):
                (add if actual else rem).append(n)
        return PeriodicSet(big, mask=mask, added=add, removed=rem)

    def __or__(self, other: "PeriodicSet") -> "PeriodicSet":
        return self._combine(other, lambda a, b: a | b, lambda a, b: a or b)

    def __and__(self, other: "PeriodicSet") -> "PeriodicSet":
        return self._combine(other, lambda a, b: a & b, lambda a, b: a and b)

    def __sub__(self, other: "PeriodicSet") -> "PeriodicSet":
        return self._combine(other, lambda a, b: a & ~b, lambda a, b: a and not b)

    def __invert__(self) -> "PeriodicSet":
        full = (1 << self.modulus) - 1
        return PeriodicSet(
            self.modulus, mask=full & ~self._mask, added=self.removed, removed=self.added
        )

    # ------------------------------------------------------------------
    # relations modulo finite sets

    def almost_subset(self, other: "PeriodicSet") -> bool:
        """True iff self - other is finite (written self <=* other)."""
        return (self - other).is_finite

    def almost_equal(self, other: "PeriodicSet") -> bool:
        return (self - other).is_finite and (other - self).is_finite

    def almost_disjoint(self, other: "PeriodicSet") -> bool:
        return (self & other).is_finite

    # ------------------------------------------------------------------
    # enumeration

    def count_below(self, x: int) -> int:
        """Number of members strictly below x."""
        q, r = divmod(x, self.modulus)
        n = q * self._mask.bit_count() + (self._mask & ((1 << r) - 1)).bit_count()
        n += sum(1 for a in self.added if a < x)
        n -= sum(1 for d in self.removed if d < x)
        return n

    def members_below(self, x: int) -> list[int]:
        return [n for n in range(x) if n in self]

    def members(self) -> Iterator[int]:
        """Members in increasing order; an infinite iterator unless finite."""
        if self.is_finite:
            yield from sorted(self.added)
            return
        grid = -(-self.threshold // self.modulus) * self.modulus
        yield from self.members_below(grid)
        sres = sorted(self.residues)
        base = grid
        while True:
            for r in sres:
                yield base + r
            base += self.modulus

    def nth(self, k: int) -> int:
        """The k-th member in increasing order (0-based)."""
        if k < 0:
            raise PreconditionError("index must be a natural")
        if self.is_finite:
            elems = sorted(self.added)
            if k >= len(elems):
                raise EmptySetError(f"set has only {len(elems)} elements")
            return elems[k]
        grid = -(-self.threshold // self.modulus) * self.modulus
        head = self.members_below(grid)
        if k < len(head):
            return head[k]
        j = k - len(head)
        sres = sorted(self.residues)
        q, i = divmod(j, len(sres))
        return grid + q * self.modulus + sres[i]

    def min(self) -> int:
        return self.nth(0)

    def min_excluding(self, excluded: Iterable[int]) -> int:
        """Least member outside `excluded`; errors when a finite set runs out."""
        banned = set(excluded)
        for x in self.members():
            if x not in banned:
                return x
        raise EmptySetError("finite set exhausted by the excluded values")

    # ------------------------------------------------------------------
    # affine transport (used by piecewise-affine maps)

    def affine_image(self, mult: int, off: int) -> "PeriodicSet":
        """Exact image {off + mult*k : k in self} for mult >= 1."""
        if mult <= 0 or off < 0:
            raise PreconditionError("affine_image needs mult >= 1, off >= 0")
        big = mult * self.modulus
        mask = 0
        for r in range(self.modulus):
            if _bit(self._mask, r):
                mask |= 1 << ((off + mult * r) % big)
        # below this bound the class pattern may lie (negative k, exceptions);
        # disagreements sit either on the predicted class or on images of the
        # exceptional members, so only those points need inspection
        horizon = off + mult * max(self.threshold, 0)
        cand = set()
        for r in range(big):
            if _bit(mask, r):
                cand.update(range(r, horizon, big))
        for k in self.added:
            cand.add(off + mult * k)
        add, rem = [], []
        for n in sorted(cand):
            actual = n >= off and (n - off) % mult == 0 and (n - off) // mult in self
            if actual != _bit(mask, n % big):
                (add if actual else rem).append(n)
        return PeriodicSet(big, mask=mask, added=add, removed=rem)

    def affine_preimage(self, mult: int, off: int) -> "PeriodicSet":
        """Exact preimage {k >= 0 : off + mult*k in self} for mult >= 1."""
        if mult <= 0 or off < 0:
            raise PreconditionError("affine_preimage needs mult >= 1, off >= 0")
        period = self.modulus // gcd(mult, self.modulus)
        mask = 0
        for k in range(period):
            if _bit(self._mask, (off + mult * k) % self.modulus):
                mask |= 1 << k
        horizon = max(0, -(-(self.threshold - off) // mult))
        cand = set()
        for r in range(period):
            if _bit(mask, r):
                cand.update(range(r, horizon, period))
        for x in self.added:
            if x >= off and (x - off) % mult == 0:
                cand.add((x - off) // mult)
        add, rem = [], []
        for k in sorted(cand):
            actual = (off + mult * k) in self
            if actual != _bit(mask, k % period):
                (add if actual else rem).append(k)
        return PeriodicSet(period, mask=mask, added=add, removed=rem)

    # ------------------------------------------------------------------
    # serialization

    def to_json(self) -> dict:
        return {
            "m": self.modulus,
            "r": sorted(self.residues),
            "add": sorted(self.added),
            "del": sorted(self.removed),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PeriodicSet":
        return cls(data["m"], data["r"], added=data["add"], removed=data["del"])

    def to_expr(self) -> str:
        """Canonical set-expression text; parses back to an equal value."""
        if self.is_empty:
            return "empty"
        if self.is_finite:
            return "{" + ",".join(str(n) for n in sorted(self.added)) + "}"
        if self.modulus == 1 and not self.added and not self.removed:
            return "omega"
        parts = [f"{r}%{self.modulus}" for r in sorted(self.residues)]
        if self.modulus == 1:
            parts = ["omega"]
        text = " + ".join(parts)
        if self.added:
            text += " + {" + ",".join(str(n) for n in sorted(self.added)) + "}"
        if self.removed:
            text += " - {" + ",".join(str(n) for n in sorted(self.removed)) + "}"
        return text


OMEGA = PeriodicSet.omega()
EMPTY = PeriodicSet.empty()
