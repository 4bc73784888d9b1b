"""Regenerate session6.json: a scripted 6-round game recorded move by move.

Run from the repository root:  python3 frontend/tests/fixtures/make_fixture.py
"""

import json
import pathlib

from ckomega import jsonio
from ckomega.game import GameSession

MOVES = [
    "[0%2 -> 0%2]",
    "[1%2 -> 1%2]",
    "[0%4 -> 0%4]",
    "[1%4 -> 1%2]",
    "[0%8 -> 0%4]",
    "[0%2 - 0%8 -> 0%2]",
]

ILLEGAL = "[0%2 -> {5}]"


def main() -> None:
    from ckomega.parsing import parse_subboxes

    session = GameSession("plain")
    moves = []
    state_after_5 = None
    for i, text in enumerate(MOVES, start=1):
        extra = parse_subboxes(text)
        session.play_round(extra)
        moves.append({"extra": [sb.to_json() for sb in extra], "point": None})
        if i == 5:
            state_after_5 = session.to_json()
    fixture = {
        "moves": moves,
        "illegal_move": {
            "extra": [sb.to_json() for sb in parse_subboxes(ILLEGAL)],
            "point": None,
        },
        "state_after_5": state_after_5,
        "state_after_6": session.to_json(),
    }
    out = pathlib.Path(__file__).with_name("session6.json")
    out.write_text(jsonio.dumps(fixture) + "\n", encoding="utf-8")
    print(f"wrote {out} (rounds: {fixture['state_after_6']['round']})")


if __name__ == "__main__":
    main()
