"""Explicit counterexample apparatus over the function space.

Three constructions, all reduced to box arithmetic over the clopen
algebra:

* an infinite locally finite family of disjoint non-empty basic open sets
  (so the space is not pseudocompact), with the separating-neighbourhood
  case analysis that witnesses local finiteness;
* the parity apparatus: an almost disjoint family of parts, the clopen
  boxes Fix(n, m) of maps fixing the low-indexed parts, and the two
  disjoint open unions (even-indexed and odd-indexed part movements) that
  both accumulate at the identity, so the space is not an F-space;
* a countable family of boxes whose intersection is non-empty with empty
  interior (no G-delta property), built from a map swapping two halves.

Infinite unions are only ever touched through bounded truncations; every
membership claim is certified by finitely many member() checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boxes import (
    BasicBox,
    SubbasicBox,
    conjunction_is_empty,
    identity_nbhd,
    member,
    normalize,
)
from .errors import PreconditionError, SearchError
from .maps import ProgressionMap, combine_piecewise, identity, order_embedding
from .periodic import EMPTY, PeriodicSet

__all__ = [
    "ParityApparatus",
    "LocallyFiniteFamily",
    "locally_finite_family",
    "separating_nbhd",
    "fix_box",
    "parity_box",
    "parity_member",
    "parity_disjoint_upto",
    "approach_identity_witness",
    "gdelta_family",
    "fspace_demo",
]


@dataclass(frozen=True)
class ParityApparatus:
    """Parts A_0..A_K, pairwise almost disjoint and infinite."""

    parts: tuple[PeriodicSet, ...]

    @property
    def bound(self) -> int:
        return len(self.parts) - 1

    def validate(self) -> None:
        for p in self.parts:
            if p.is_finite:
                raise PreconditionError("apparatus parts must be infinite")
        for i in range(len(self.parts)):
            for j in range(i + 1, len(self.parts)):
                if not self.parts[i].almost_disjoint(self.parts[j]):
                    raise PreconditionError(
                        f"apparatus parts {i} and {j} are not almost disjoint"
                    )

    @classmethod
    def mod_classes(cls, modulus: int) -> "ParityApparatus":
        return cls(tuple(PeriodicSet.residue_class(r, modulus) for r in range(modulus)))

    def part(self, i: int) -> PeriodicSet:
        if not 0 <= i <= self.bound:
            raise PreconditionError(f"part index {i} out of range 0..{self.bound}")
        return self.parts[i]


# ----------------------------------------------------------------------
# the locally finite family


@dataclass(frozen=True)
class LocallyFiniteFamily:
    """Base clopen set A with infinite complement and disjoint pieces inside;
    the n-th family member asks maps to throw the n-th piece out of A while
    keeping the rest of A inside A."""

    base: PeriodicSet
    pieces: tuple[PeriodicSet, ...]

    def __post_init__(self):
        if (~self.base).is_finite:
            raise PreconditionError("the base set needs an infinite complement")
        for p in self.pieces:
            if p.is_finite or not p.almost_subset(self.base):
                raise PreconditionError("pieces must be infinite and almost inside the base")
        for i in range(len(self.pieces)):
            for j in range(i + 1, len(self.pieces)):
                if not self.pieces[i].almost_disjoint(self.pieces[j]):
                    raise PreconditionError("pieces must be pairwise almost disjoint")

    @property
    def outside(self) -> PeriodicSet:
        return ~self.base

    def boxes(self) -> list[BasicBox]:
        a, b = self.base, self.outside
        return [normalize([SubbasicBox(p, b), SubbasicBox(a - p, a)]) for p in self.pieces]


def locally_finite_family(a: PeriodicSet, pieces) -> list[BasicBox]:
    """The disjoint non-empty boxes U_n of the family over base a."""
    return LocallyFiniteFamily(a, tuple(pieces)).boxes()


def separating_nbhd(f: ProgressionMap, family: LocallyFiniteFamily) -> BasicBox:
    """A box around f meeting at most one family member.

    Three cases: f keeps the base almost inside itself; some piece sends
    part of itself out of the base under f; or the escape set avoids every
    piece.
    """
    a, b = family.base, family.outside
    if f.image(a).almost_subset(a):
        return normalize([SubbasicBox(a, a)])
    escape = f.preimage(b)
    for p in family.pieces:
        meet = p & escape
        if not meet.is_finite:
            return normalize([SubbasicBox(meet, b)])
    return normalize([SubbasicBox(escape & a, b)])


# ----------------------------------------------------------------------
# the parity apparatus


def fix_box(apparatus: ParityApparatus, n: int, m: int) -> BasicBox:
    """The box of maps fixing every part below max(n, m) other than n, m."""
    if n == m:
        raise PreconditionError("fix_box needs two distinct indices")
    apparatus.part(n), apparatus.part(m)
    constraints = [
        SubbasicBox(apparatus.parts[k], apparatus.parts[k])
        for k in range(max(n, m))
        if k not in (n, m)
    ]
    return normalize(constraints)


def _movement_constraints(apparatus: ParityApparatus, n: int, m: int) -> list[SubbasicBox]:
    return [SubbasicBox(apparatus.part(n), apparatus.part(m))] + [
        SubbasicBox(apparatus.parts[k], apparatus.parts[k])
        for k in range(max(n, m))
        if k not in (n, m)
    ]


def parity_box(apparatus: ParityApparatus, n: int, m: int) -> BasicBox:
    """One disjunct of a parity union: move part n into part m, fix below."""
    if n == m:
        raise PreconditionError("parity_box needs two distinct indices")
    return normalize(_movement_constraints(apparatus, n, m))


def _parity_pairs(parity: str, bound: int):
    first = 0 if parity == "even" else 1
    idx = range(first, bound + 1, 2)
    return [(n, m) for n in idx for m in idx if n != m]


def parity_member(
    f: ProgressionMap, apparatus: ParityApparatus, parity: str, bound: int
) -> bool:
    """Membership in the bounded truncation of the even (odd) union."""
    if parity not in ("even", "odd"):
        raise PreconditionError("parity must be 'even' or 'odd'")
    if bound > apparatus.bound:
        raise PreconditionError("bound exceeds the apparatus")
    return any(
        member(f, parity_box(apparatus, n, m)) for n, m in _parity_pairs(parity, bound)
    )


def parity_disjoint_upto(apparatus: ParityApparatus, bound: int):
    """Check all even-vs-odd disjunct pairs up to `bound` normalize to empty.

    Returns (True, None), or (False, offending index quadruple).
    """
    if bound > apparatus.bound:
        raise PreconditionError("bound exceeds the apparatus")
    for en, em in _parity_pairs("even", bound):
        even_part = _movement_constraints(apparatus, en, em)
        for on, om in _parity_pairs("odd", bound):
            if not conjunction_is_empty(even_part + _movement_constraints(apparatus, on, om)):
                return False, (en, em, on, om)
    return True, None


def approach_identity_witness(
    v_parts, apparatus: ParityApparatus, index_set
) -> ProgressionMap:
    """A map inside a given identity neighbourhood that moves one indexed
    part into another.

    The target pair is found by the halving recursion: repeatedly split
    the index set by whether the indexed part avoids the last unprocessed
    neighbourhood constraint, keep the larger half (ties keep the avoiding
    half), and orient the final pair so the movement respects the first
    constraint.  The witness then routes the moved part piecewise into the
    target part (within each constraint it meets) and fixes everything
    else, so both memberships are certified by member() checks.
    """
    v_parts = list(v_parts)
    idx = sorted(set(index_set))
    if len(idx) < 2:
        raise PreconditionError("need at least two indices to move a part")
    for i in idx:
        apparatus.part(i)
    survivors = idx
    for k in range(len(v_parts) - 1, 0, -1):
        c = v_parts[k]
        away = [i for i in survivors if apparatus.parts[i].almost_disjoint(c)]
        inside = [i for i in survivors if not apparatus.parts[i].almost_disjoint(c)]
        survivors = away if len(away) >= len(inside) else inside
    if len(survivors) < 2:
        # guaranteed not to happen when |index_set| >= 2^len(v_parts)
        raise SearchError("halving exhausted the index set")
    n, m = survivors[0], survivors[1]
    if v_parts:
        c1 = v_parts[0]
        oriented = apparatus.parts[n].almost_disjoint(c1) or not apparatus.parts[
            m
        ].almost_disjoint(c1)
        if not oriented:
            n, m = m, n
    src, dst = apparatus.parts[n], apparatus.parts[m]
    routed: list[tuple[PeriodicSet, ProgressionMap]] = []
    cover = EMPTY
    for c in v_parts:
        meet = (src & c) - cover
        if meet.is_finite:
            continue
        target = dst & c
        if target.is_finite:  # cannot happen when the halving invariants hold
            raise SearchError("routing target collapsed; preconditions violated")
        routed.append((meet, order_embedding(meet, target)))
        cover = cover | meet
    residual = src - cover
    if not residual.is_finite:
        routed.append((residual, order_embedding(residual, dst)))
    routed.append((~src, identity()))
    return combine_piecewise(routed)


# ----------------------------------------------------------------------
# the G-delta family


def gdelta_family(
    a_half: PeriodicSet, b_half: PeriodicSet, f: ProgressionMap, pieces
) -> list[SubbasicBox]:
    """Constraints [A_n, f(A_n)] for disjoint pieces inside one half.

    Finite truncations all contain f; the full intersection pins every
    piece's image, which no basic box can do, so the intersection has
    empty interior.
    """
    pieces = list(pieces)
    for p in pieces:
        if p.is_finite or not p.almost_subset(a_half):
            raise PreconditionError("pieces must be infinite and inside the first half")
        if not f.image(p).almost_subset(b_half):
            raise PreconditionError("the swap must carry each piece into the other half")
    return [SubbasicBox(p, f.image(p)) for p in pieces]


# ----------------------------------------------------------------------
# demo report


def fspace_demo(
    modulus: int = 64, bound: int = 16, levels: int = 8, union_bound: int = 32
) -> dict:
    """The non-F-space apparatus in one JSON-ready report.

    Disjointness of the bounded parity unions, the identity's failure to
    join either union, and one certified witness per identity
    neighbourhood size up to `levels`.
    """
    apparatus = ParityApparatus.mod_classes(modulus)
    apparatus.validate()
    if union_bound > apparatus.bound or bound > apparatus.bound:
        raise PreconditionError("bounds exceed the apparatus")
    ok, offender = parity_disjoint_upto(apparatus, bound)
    # the same truncated unions certify every witness; build their boxes once
    unions = {
        parity: [parity_box(apparatus, n, m) for n, m in _parity_pairs(parity, union_bound)]
        for parity in ("even", "odd")
    }
    idx = list(range(0, union_bound + 1, 2))
    witnesses = []
    for n_constraints in range(levels + 1):
        v_parts = [
            apparatus.parts[2 * j] | apparatus.parts[2 * j + 1]
            for j in range(n_constraints)
        ]
        w = approach_identity_witness(v_parts, apparatus, idx)
        witnesses.append(
            {
                "constraints": n_constraints,
                "witness": w.to_json(),
                "expr": w.to_expr(),
                "in_identity_nbhd": member(w, identity_nbhd(v_parts)) if v_parts else True,
                "in_even_union": any(member(w, box) for box in unions["even"]),
                "in_odd_union": any(member(w, box) for box in unions["odd"]),
            }
        )
    return {
        "modulus": modulus,
        "bound": bound,
        "union_bound": union_bound,
        "parity_unions_disjoint": ok,
        "disjointness_offender": list(offender) if offender else None,
        "identity_in_even_union": parity_member(identity(), apparatus, "even", bound),
        "identity_in_odd_union": parity_member(identity(), apparatus, "odd", bound),
        "witnesses": witnesses,
    }
