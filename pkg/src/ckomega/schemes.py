"""Finite-splitting trees of paired clopen payloads, and the injection
they promise.

Each node carries a source set (the covering side: level sets partition
the naturals, children partition their parent) and a target set (the weak
side: children's targets nest into their parent's, every target
infinite).  ``build_injection`` realizes the promises greedily: n is sent
to the least unused member of the target of the node containing n at
level min(n, height).  Values only ever depend on levels up to their own
index, so deepening the tree never revises an emitted value.

Trees arrive from game play as certified chains of boxes whose relations
hold modulo finite sets; ``repair`` restores the exact relations by
finitely many reassignments (intersect children with parents, give
disputed naturals to the first sibling, give missing naturals to the
first child), which leaves every payload almost-equal to its input.

A tree is mutated only by the session that owns it (one level appended
per round); hand-off between tasks is fine, concurrent mutation is not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boxes import OUTSIDE, BasicBox, RefinementCert, SubbasicBox, validate_cert
from .errors import CertificateError, SchemeError
from .maps import LazyInjection
from .periodic import OMEGA, PeriodicSet

__all__ = ["SchemeNode", "SchemeTree", "validate", "repair", "build_injection",
           "verify_star", "chain_to_tree", "FULL_BOX"]


@dataclass
class SchemeNode:
    source: PeriodicSet
    target: PeriodicSet
    parent: int | None  # index into the previous level; None on level 0


class SchemeTree:
    """Levels of scheme nodes; height is the index of the deepest level."""

    def __init__(self, levels: list[list[SchemeNode]]):
        if not levels or not all(levels):
            raise SchemeError("a scheme tree needs at least one non-empty level")
        self.levels = levels

    @classmethod
    def single_root(cls, source: PeriodicSet = OMEGA, target: PeriodicSet = OMEGA) -> "SchemeTree":
        return cls([[SchemeNode(source, target, None)]])

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    def node_for(self, level: int, n: int) -> SchemeNode:
        hits = [node for node in self.levels[level] if n in node.source]
        if len(hits) != 1:
            raise SchemeError(
                f"level {level} does not partition omega at {n} (found {len(hits)} nodes)"
            )
        return hits[0]

    def target_for(self, n: int) -> PeriodicSet:
        """Target payload guiding the injection at input n (deepest-level
        fallback past the built height)."""
        return self.node_for(min(n, self.height), n).target

    def children(self, level: int, index: int) -> list[int]:
        if level >= self.height:
            return []
        return [j for j, node in enumerate(self.levels[level + 1]) if node.parent == index]

    def copy(self) -> "SchemeTree":
        return SchemeTree(
            [[SchemeNode(n.source, n.target, n.parent) for n in lvl] for lvl in self.levels]
        )

    def to_json(self) -> dict:
        nodes = []
        offsets = [0]
        for lvl in self.levels:
            offsets.append(offsets[-1] + len(lvl))
        for i, lvl in enumerate(self.levels):
            for node in lvl:
                parent = -1 if node.parent is None else offsets[i - 1] + node.parent
                nodes.append(
                    {"c": node.source.to_json(), "d": node.target.to_json(), "parent": parent}
                )
        return {"nodes": nodes}

    @classmethod
    def from_json(cls, data: dict) -> "SchemeTree":
        raw = data["nodes"]
        depth = []
        for i, nd in enumerate(raw):
            p = nd["parent"]
            if p == -1:
                depth.append(0)
            elif 0 <= p < i:
                depth.append(depth[p] + 1)
            else:
                raise SchemeError("nodes must be listed in breadth-first order")
        levels: list[list[SchemeNode]] = [[] for _ in range(max(depth) + 1)] if raw else []
        offsets: dict[int, int] = {}
        for i, nd in enumerate(raw):
            lvl = depth[i]
            parent = None if nd["parent"] == -1 else offsets[nd["parent"]]
            offsets[i] = len(levels[lvl])
            levels[lvl].append(
                SchemeNode(
                    PeriodicSet.from_json(nd["c"]), PeriodicSet.from_json(nd["d"]), parent
                )
            )
        return cls(levels)


def validate(tree: SchemeTree) -> list[dict]:
    """Report every violated exactness clause; empty report means valid.

    Clauses: level sources pairwise disjoint and covering omega, child
    source/target contained in the parent's, payloads infinite.
    """
    report: list[dict] = []
    for li, lvl in enumerate(tree.levels):
        cover = PeriodicSet.empty()
        for ni, node in enumerate(lvl):
            if node.source.is_finite:
                report.append({"clause": "infinite-source", "level": li, "node": ni})
            if node.target.is_finite:
                report.append({"clause": "infinite-target", "level": li, "node": ni})
            cover = cover | node.source
            for nj in range(ni + 1, len(lvl)):
                if not (node.source & lvl[nj].source).is_empty:
                    report.append(
                        {"clause": "level-disjoint", "level": li, "nodes": [ni, nj]}
                    )
            if li > 0:
                if node.parent is None or not 0 <= node.parent < len(tree.levels[li - 1]):
                    report.append({"clause": "parent-link", "level": li, "node": ni})
                else:
                    parent = tree.levels[li - 1][node.parent]
                    if not (node.source - parent.source).is_empty:
                        report.append(
                            {"clause": "child-source", "level": li, "node": ni}
                        )
                    if not (node.target - parent.target).is_empty:
                        report.append(
                            {"clause": "child-target", "level": li, "node": ni}
                        )
        if not (~cover).is_empty:
            report.append({"clause": "level-cover", "level": li})
    return report


def _repair_level(
    prev_lvl: list[SchemeNode] | None, lvl: list[SchemeNode], li: int
) -> list[SchemeNode]:
    new_lvl: list[SchemeNode] = []
    for ni, node in enumerate(lvl):
        src, tgt = node.source, node.target
        if prev_lvl is not None:
            if node.parent is None or not 0 <= node.parent < len(prev_lvl):
                raise SchemeError(f"node {ni} at level {li} has no valid parent")
            parent = prev_lvl[node.parent]
            src = src & parent.source
            tgt = tgt & parent.target
        for prev in new_lvl:  # disputed naturals stay with the first sibling
            src = src - prev.source
        new_lvl.append(SchemeNode(src, tgt, node.parent))
    if prev_lvl is None:
        missing = OMEGA
        for node in new_lvl:
            missing = missing - node.source
        if not missing.is_finite:
            raise SchemeError("root level leaves infinitely many naturals uncovered")
        if not missing.is_empty:
            first = new_lvl[0]
            new_lvl[0] = SchemeNode(first.source | missing, first.target, first.parent)
    else:
        for pi, parent in enumerate(prev_lvl):
            kids = [ni for ni, node in enumerate(new_lvl) if node.parent == pi]
            if not kids:
                raise SchemeError(f"node {pi} at level {li - 1} has no children")
            missing = parent.source
            for ni in kids:
                missing = missing - new_lvl[ni].source
            if not missing.is_finite:
                raise SchemeError(
                    f"children of node {pi} at level {li - 1} leave an infinite gap"
                )
            if not missing.is_empty:
                first = new_lvl[kids[0]]
                new_lvl[kids[0]] = SchemeNode(
                    first.source | missing, first.target, first.parent
                )
    for ni, node in enumerate(new_lvl):
        if node.source.is_finite or node.target.is_finite:
            raise SchemeError(
                f"repair would make a payload finite at level {li}, node {ni}"
            )
    return new_lvl


def repair(tree: SchemeTree) -> SchemeTree:
    """Restore exact relations on a tree that is valid up to finite errors.

    Raises SchemeError when a payload would have to become finite (the
    input then violated an almost-relation, not just an exact one).
    """
    out: list[list[SchemeNode]] = []
    for li, lvl in enumerate(tree.levels):
        out.append(_repair_level(out[li - 1] if li else None, lvl, li))
    return SchemeTree(out)


def build_injection(tree: SchemeTree) -> LazyInjection:
    """The greedy injection realizing an exact tree's promises."""
    if tree.height < 1:
        raise SchemeError("build_injection needs a tree of height at least 1")
    problems = validate(tree)
    if problems:
        raise SchemeError(f"tree is not exact: {problems[0]}")
    return LazyInjection(tree)


def verify_star(tree: SchemeTree, phi, horizon: int) -> bool:
    """Check every node's promise on the emitted prefix below `horizon`.

    For each level m, node t and m <= n < horizon with n in the source of
    t, the value phi(n) must lie in the target of t.  `phi` may be a
    LazyInjection or any indexable prefix; the prefix must already reach
    the horizon.
    """
    prefix = phi.memo if isinstance(phi, LazyInjection) else phi
    if horizon > len(prefix):
        raise SchemeError("verification horizon exceeds the memoized prefix")
    for m, lvl in enumerate(tree.levels):
        for node in lvl:
            for n in range(m, horizon):
                if n in node.source and prefix[n] not in node.target:
                    return False
    return True


FULL_BOX = BasicBox((SubbasicBox(OMEGA, OMEGA),))


def chain_to_tree(chain: list[tuple[BasicBox, RefinementCert]]) -> SchemeTree:
    """Turn a certified descending chain of boxes into a repaired tree.

    An implicit full-space root occupies level 0; box i populates level
    i+1, with parent links read off its certificate (the first box is
    certified against the full-space box).  OUTSIDE constraints attach
    under the coarser box's completion node.
    """
    tree = SchemeTree.single_root()
    prev = FULL_BOX
    for box, cert in chain:
        _append_level(tree, box, cert, prev)
        prev = box
    return tree


def _completion_index(box: BasicBox) -> int:
    for i, c in enumerate(box.constraints):
        if c.target == OMEGA:
            return i
    raise CertificateError("OUTSIDE constraint needs a completion node to attach to")


def _append_level(
    tree: SchemeTree, box: BasicBox, cert: RefinementCert, prev: BasicBox
) -> None:
    """Append one repaired level built from `box` certified against `prev`."""
    if not box.is_normal:
        raise SchemeError("chain boxes must be in normal form")
    if any(c.target.is_finite for c in box.constraints):  # normal-form emptiness
        raise SchemeError("chain boxes must be non-empty")
    if cert is None:
        raise CertificateError("every chain box needs a certificate")
    validate_cert(box, prev, cert)
    raw = []
    for c, tag in zip(box.constraints, cert.assignment):
        parent = _completion_index(prev) if tag == OUTSIDE else tag
        raw.append(SchemeNode(c.source, c.target, parent))
    tree.levels.append(_repair_level(tree.levels[-1], raw, len(tree.levels)))
