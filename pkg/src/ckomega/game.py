"""Playable (strong) Choquet game on the representable function space.

Player E refines the current box (a certified shrink, with a declared
piecewise-affine point in strong mode); player NE's reply is the winning
one-move tactic: adopt E's certified basic box, deepen the scheme tree by
one level, and finalize one more value of the streamed witness injection.
There is no finite-time win adjudication; the engine's deliverable is the
running witness, whose finalized values never change.

One session has one owner; independent sessions may run concurrently, but
operations on a single session must be serialized by the caller.
"""

from __future__ import annotations

from .boxes import BasicBox, RefinementCert, SubbasicBox, is_empty, member, refine
from .errors import IllegalMoveError, PreconditionError, RefinementEmptyError
from .maps import LazyInjection, ProgressionMap, identity
from .periodic import PeriodicSet
from .schemes import FULL_BOX, SchemeTree, _append_level

__all__ = ["GameSession", "new_game"]

MODES = ("plain", "strong")
_SPLIT_CAP = 512


class GameSession:
    """State of one game: certified chain, scheme tree, streamed witness."""

    def __init__(self, mode: str = "plain"):
        if mode not in MODES:
            raise PreconditionError(f"mode must be one of {MODES}")
        self.mode = mode
        self.chain: list[tuple[BasicBox, RefinementCert | None]] = [(FULL_BOX, None)]
        self.tree = SchemeTree.single_root()
        self.witness = LazyInjection(self.tree)
        self.history: list[dict] = []
        self.turn = "E"
        self.status = "ongoing"
        self._pending: tuple[BasicBox, RefinementCert, ProgressionMap | None] | None = None
        self.witness.apply(0)

    # ------------------------------------------------------------------

    @property
    def rounds(self) -> int:
        """Completed rounds (one NE reply each)."""
        return len(self.chain) - 1

    @property
    def current_box(self) -> BasicBox:
        return self.chain[-1][0]

    def _require_ongoing(self) -> None:
        if self.status != "ongoing":
            raise IllegalMoveError("the game was abandoned", "abandoned")

    def move_e(self, extra, point: ProgressionMap | None = None) -> "GameSession":
        """E's move: extra constraints refining the current box.

        Illegal moves raise without touching the state: an empty
        refinement, a missing point in strong mode, or a declared point
        outside the refined box.
        """
        self._require_ongoing()
        if self.turn != "E":
            raise IllegalMoveError("it is not E's turn", "wrong-turn")
        extra = list(extra)
        try:
            fine, cert = refine(self.current_box, extra)
        except RefinementEmptyError as exc:
            raise IllegalMoveError(f"refinement is empty ({exc})", "empty") from exc
        if self.mode == "strong":
            if point is None:
                raise IllegalMoveError("strong mode requires a declared point", "missing-point")
            if not member(point, fine):
                raise IllegalMoveError(
                    "declared point is not a member of the refined box", "not-member"
                )
        self._pending = (fine, cert, point)
        self.history.append(
            {
                "player": "E",
                "extra": [sb.to_json() for sb in extra],
                "point": point.to_json() if point is not None else None,
            }
        )
        self.turn = "NE"
        return self

    def move_ne(self) -> "GameSession":
        """NE's tactic: adopt E's certified box and extend tree + witness."""
        self._require_ongoing()
        if self.turn != "NE":
            raise IllegalMoveError("it is not NE's turn", "wrong-turn")
        fine, cert, _ = self._pending
        _append_level(self.tree, fine, cert, self.current_box)
        self.chain.append((fine, cert))
        self._pending = None
        self.history.append({"player": "NE"})
        self.turn = "E"
        self.witness.apply(self.rounds)
        return self

    def play_round(self, extra, point: ProgressionMap | None = None) -> "GameSession":
        """One full round: E's move followed immediately by NE's reply."""
        self.move_e(extra, point)
        return self.move_ne()

    def witness_prefix(self, k: int) -> list[int]:
        """Finalized witness values 0..k; k may not exceed completed rounds."""
        if k < 0 or k > self.rounds:
            raise PreconditionError("witness prefix index exceeds completed rounds")
        return self.witness.prefix(k)

    def abandon(self) -> None:
        self.status = "abandoned"

    # ------------------------------------------------------------------

    def suggestions(self) -> list[dict]:
        """Deterministic menu of always-legal E moves against the current box."""
        out = [{"kind": "stall", "label": "keep the current box", "extra": []}]
        for i, c in enumerate(self.current_box.constraints):
            sub = _half_of(c.source)
            if sub is not None:
                out.append(
                    {
                        "kind": "split",
                        "label": f"split the source of constraint {i}",
                        "extra": [SubbasicBox(sub, c.target).to_json()],
                    }
                )
            bsub = _half_of(c.target)
            if bsub is not None:
                out.append(
                    {
                        "kind": "shrink",
                        "label": f"shrink the target of constraint {i}",
                        "extra": [SubbasicBox(c.source, bsub).to_json()],
                    }
                )
        return out

    def point_templates(self) -> list[dict]:
        """Maps that are members of the current box, usable as strong-mode points."""
        box = self.current_box
        _, witness = is_empty(box)
        candidates = [witness]
        if identity() != witness:
            candidates.append(identity())
        out = []
        for f in candidates:
            if member(f, box):
                out.append({"expr": f.to_expr(), "map": f.to_json()})
        return out

    # ------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "turn": self.turn,
            "status": self.status,
            "round": self.rounds,
            "chain": [
                {"box": box.to_json(), "cert": cert.to_json() if cert else None}
                for box, cert in self.chain
            ],
            "history": [dict(h) for h in self.history],
            "tree": self.tree.to_json(),
            "witness": self.witness.prefix(self.rounds),
        }

    def export_log(self) -> list[dict]:
        """E's accepted moves, one dict per round, replayable via replay()."""
        return [
            {"extra": h["extra"], "point": h["point"]}
            for h in self.history
            if h["player"] == "E"
        ]

    @classmethod
    def replay(cls, mode: str, entries) -> "GameSession":
        session = cls(mode)
        for entry in entries:
            extra = [SubbasicBox.from_json(x) for x in entry["extra"]]
            point = (
                ProgressionMap.from_json(entry["point"])
                if entry.get("point") is not None
                else None
            )
            session.play_round(extra, point)
        return session


def _half_of(s: PeriodicSet) -> PeriodicSet | None:
    """An infinite part of s whose complement in s is infinite, or None."""
    res = sorted(s.residues)
    if len(res) >= 2:
        return s & PeriodicSet(s.modulus, res[: len(res) // 2])
    if res and s.modulus <= _SPLIT_CAP:
        return s & PeriodicSet.residue_class(res[0], 2 * s.modulus)
    return None


def new_game(mode: str = "plain") -> GameSession:
    return GameSession(mode)
