"""Canonical JSON: one byte layout per value, shared by CLI, service and UI.

Dicts are emitted in construction order (every to_json builds keys in a
fixed order), separators carry no whitespace, and all numbers are ints, so
equal values serialize to identical bytes.
"""

from __future__ import annotations

import json


def dumps(data) -> str:
    return json.dumps(data, separators=(",", ":"), ensure_ascii=True)


def pretty(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=True)


def loads(text: str):
    return json.loads(text)
