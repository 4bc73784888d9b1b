"""Compact-open basic open sets over the computable clopen algebra.

A subbasic box [A, B] denotes the functions sending the clopen set A* into
B*; at the representative level, membership of a piecewise-affine map f is
the decidable check image(f, A) <=* B.  A BasicBox is a finite conjunction
in normal form: the source sets are pairwise almost disjoint, each
infinite, and together they cover all but finitely many naturals (when
needed, a completion constraint [rest, omega] is appended so witnesses can
be assembled piece by piece).

Normalization folds constraints in one at a time through the exact
identity

    [A0,B0] & [A1,B1] = [A0&A1, B0&B1] & [A0-A1, B0] & [A1-A0, B1],

which preserves the denoted set of functions.  Refinement additionally
returns a certificate mapping every fine constraint to the coarse
constraint it shrinks, which is what the scheme builder consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CertificateError,
    NotNormalFormError,
    PartitionError,
    PreconditionError,
    RefinementEmptyError,
    StraddlingSeedError,
)
from .maps import ProgressionMap, combine_piecewise, identity, order_embedding
from .periodic import OMEGA, PeriodicSet

__all__ = [
    "SubbasicBox",
    "BasicBox",
    "RefinementCert",
    "OUTSIDE",
    "normalize",
    "is_empty",
    "member",
    "refine",
    "identity_nbhd",
    "fix_intersect_empty",
    "eval_image",
]

# certificate marker for a constraint whose source avoids every coarse source
OUTSIDE = -1


@dataclass(frozen=True)
class SubbasicBox:
    """One constraint [source, target]: functions mapping source* into target*."""

    source: PeriodicSet
    target: PeriodicSet

    def to_json(self) -> dict:
        return {"a": self.source.to_json(), "b": self.target.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "SubbasicBox":
        return cls(PeriodicSet.from_json(data["a"]), PeriodicSet.from_json(data["b"]))

    def to_expr(self) -> str:
        return f"[{self.source.to_expr()} -> {self.target.to_expr()}]"


@dataclass(frozen=True)
class BasicBox:
    """A finite conjunction of subbasic constraints (normal form when built
    by normalize/refine; use is_normal to check)."""

    constraints: tuple[SubbasicBox, ...]

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    @property
    def is_normal(self) -> bool:
        srcs = [c.source for c in self.constraints]
        if any(s.is_finite for s in srcs):
            return False
        for i in range(len(srcs)):
            for j in range(i + 1, len(srcs)):
                if not srcs[i].almost_disjoint(srcs[j]):
                    return False
        rest = OMEGA
        for s in srcs:
            rest = rest - s
        return rest.is_finite

    def to_json(self) -> list:
        return [c.to_json() for c in self.constraints]

    @classmethod
    def from_json(cls, data: list) -> "BasicBox":
        return cls(tuple(SubbasicBox.from_json(c) for c in data))

    def to_expr(self) -> str:
        return " & ".join(c.to_expr() for c in self.constraints)


@dataclass(frozen=True)
class RefinementCert:
    """For each fine constraint, the index of the coarse constraint it
    shrinks (source and target both almost-contained), or OUTSIDE."""

    assignment: tuple[int, ...]

    def to_json(self) -> list:
        return list(self.assignment)

    @classmethod
    def from_json(cls, data: list) -> "RefinementCert":
        return cls(tuple(int(x) for x in data))


def validate_cert(fine: BasicBox, coarse: BasicBox, cert: RefinementCert) -> None:
    """Raise CertificateError unless every assignment obligation holds."""
    if len(cert.assignment) != len(fine.constraints):
        raise CertificateError("certificate length does not match the finer box")
    for l, m in enumerate(cert.assignment):
        c = fine.constraints[l]
        if m == OUTSIDE:
            for other in coarse.constraints:
                if not c.source.almost_disjoint(other.source):
                    raise CertificateError(
                        f"constraint {l} marked OUTSIDE but meets a coarse source"
                    )
            continue
        if not 0 <= m < len(coarse.constraints):
            raise CertificateError(f"certificate index {m} out of range")
        outer = coarse.constraints[m]
        if not c.source.almost_subset(outer.source):
            raise CertificateError(f"source of constraint {l} not inside coarse {m}")
        if not c.target.almost_subset(outer.target):
            raise CertificateError(f"target of constraint {l} not inside coarse {m}")


def _fold(working: list[tuple[PeriodicSet, PeriodicSet, int]], extra: SubbasicBox):
    """Fold one constraint into a list of (source, target, tag) triples with
    pairwise disjoint sources, preserving the denoted function set."""
    a, b = extra.source, extra.target
    out = []
    leftover = a
    for src, tgt, tag in working:
        inter = src & a
        if inter.is_empty:  # untouched piece
            out.append((src, tgt, tag))
            continue
        leftover = leftover - src
        if not inter.is_finite:
            out.append((inter, tgt & b, tag))
        if inter == src:  # piece swallowed whole
            continue
        diff = src - a
        if not diff.is_finite:
            out.append((diff, tgt, tag))
    if not leftover.is_finite:
        out.append((leftover, b, OUTSIDE))
    return out


def _dedupe(boxes) -> list[SubbasicBox]:
    seen, out = set(), []
    for sb in boxes:
        key = (sb.source, sb.target)
        if key not in seen:
            seen.add(key)
            out.append(sb)
    return out


def normalize(boxes) -> BasicBox:
    """Normal form of a conjunction of subbasic constraints.

    Constraints with finite source vanish (their clopen set is empty in the
    remainder); a completion constraint [rest, omega] is appended when the
    sources leave an infinite remainder uncovered.
    """
    working: list[tuple[PeriodicSet, PeriodicSet, int]] = []
    for sb in _dedupe(boxes):
        working = _fold(working, sb)
    rest = OMEGA
    for src, _, _ in working:
        rest = rest - src
    constraints = [SubbasicBox(src, tgt) for src, tgt, _ in working]
    if not rest.is_finite:
        constraints.append(SubbasicBox(rest, OMEGA))
    return BasicBox(tuple(constraints))


def conjunction_is_empty(boxes) -> bool:
    """Emptiness of a raw conjunction: is_empty(normalize(boxes)), but the
    fold stops as soon as an infinite source is pinned to a finite target
    (later folds can only shrink sources and targets, so emptiness is
    monotone along the fold)."""
    working: list[tuple[PeriodicSet, PeriodicSet, int]] = []
    for sb in _dedupe(boxes):
        working = _fold(working, sb)
        for _, tgt, _ in working:
            if tgt.is_finite:
                return True
    return False


def member(f: ProgressionMap, box) -> bool:
    """True iff f maps every constraint's source almost into its target."""
    constraints = box.constraints if isinstance(box, BasicBox) else tuple(box)
    return all(f.image(c.source).almost_subset(c.target) for c in constraints)


def is_empty(box: BasicBox):
    """Decide emptiness of a normal-form box; return (empty, witness).

    A normal-form box is empty exactly when some constraint asks an
    infinite source to land in a finite target.  Otherwise the returned
    witness maps each source order-isomorphically into its target and is
    a member of the box.
    """
    if not box.is_normal:
        raise NotNormalFormError("is_empty needs a normal-form box")
    for c in box.constraints:
        if c.target.is_finite:
            return True, None
    if not box.constraints:
        return False, identity()
    parts = [
        (
            c.source,
            identity() if c.source.almost_subset(c.target) else order_embedding(c.source, c.target),
        )
        for c in box.constraints
    ]
    return False, combine_piecewise(parts)


def refine(outer: BasicBox, extra) -> tuple[BasicBox, RefinementCert]:
    """Intersect a normal-form box with extra constraints, with certificate.

    Raises RefinementEmptyError (carrying the offending constraint) when the
    refined box is empty.
    """
    if not outer.is_normal:
        raise NotNormalFormError("refine needs a normal-form outer box")
    working = [(c.source, c.target, i) for i, c in enumerate(outer.constraints)]
    for sb in _dedupe(extra):
        working = _fold(working, sb)
    for src, tgt, _ in working:
        if tgt.is_finite:
            raise RefinementEmptyError(
                "refinement empties the box", constraint=SubbasicBox(src, tgt)
            )
    fine = BasicBox(tuple(SubbasicBox(src, tgt) for src, tgt, _ in working))
    cert = RefinementCert(tuple(tag for _, _, tag in working))
    validate_cert(fine, outer, cert)
    return fine, cert


def identity_nbhd(partition) -> BasicBox:
    """The box fixing each part: the intersection of [A, A] over the parts."""
    parts = list(partition)
    for p in parts:
        if p.is_finite:
            raise PreconditionError("identity_nbhd needs infinite parts")
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if not parts[i].almost_disjoint(parts[j]):
                raise PartitionError("identity_nbhd parts must be almost disjoint")
    return normalize([SubbasicBox(p, p) for p in parts])


def fix_intersect_empty(c: PeriodicSet, a: PeriodicSet, b: PeriodicSet) -> bool:
    """Whether [C,C] and [A,B] are disjoint, read at the remainder level.

    For infinite, almost disjoint a and b this holds exactly when c meets a
    infinitely and b only finitely; it agrees with
    is_empty(normalize([[c,c],[a,b]])).
    """
    if a.is_finite or b.is_finite or not a.almost_disjoint(b):
        raise PreconditionError(
            "fix_intersect_empty needs infinite, almost disjoint a and b"
        )
    return (not (c & a).is_finite) and (c & b).is_finite


def eval_image(box: BasicBox, seed: PeriodicSet) -> PeriodicSet:
    """Evaluate the box at a point of the remainder approximated by `seed`.

    The image of a partitioned box under evaluation at a point inside one
    source A_k is that constraint's target; a seed meeting several parts
    infinitely does not determine a point, which is the straddling error.
    """
    if seed.is_finite:
        raise PreconditionError("seed must be infinite")
    hosts = [c for c in box.constraints if seed.almost_subset(c.source)]
    if len(hosts) != 1:
        raise StraddlingSeedError(
            "seed is not almost contained in a single source set"
        )
    return hosts[0].target
