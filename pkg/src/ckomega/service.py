"""JSON-over-HTTP session service exposing the game engine.

In-memory sessions behind an opaque id; operations on one session are
serialized by a per-session lock while distinct sessions run concurrently.
Bodies and responses use the same canonical JSON as the CLI.  With a log
directory configured, every accepted E move is appended to
<id>.jsonl, which replays to a byte-identical state.

Routes:
    POST   /session                {"mode": "plain"|"strong"} -> {"id": ...}
    POST   /session/<id>/move      {"extra": [...], "point": {...}|null}
    GET    /session/<id>/state
    GET    /session/<id>/witness?k=N
    GET    /session/<id>/suggestions
    DELETE /session/<id>
    POST   /parse                  {"kind": "set"|"box"|"map", "text": ...}

Errors: 404 unknown session, 409 wrong turn or abandoned, 422 illegal
move / bad arguments, all with {"error": ..., "detail": ...} bodies.
"""

from __future__ import annotations

import os
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import jsonio
from .boxes import SubbasicBox
from .errors import IllegalMoveError, ParseError, PreconditionError, WorkbenchError
from .game import GameSession
from .maps import ProgressionMap
from .parsing import parse_map, parse_set, parse_subboxes


class SessionStore:
    def __init__(self, log_dir: str | None = None):
        self._lock = threading.Lock()
        self._sessions: dict[str, tuple[GameSession, threading.Lock]] = {}
        self.log_dir = log_dir
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

    def create(self, mode: str) -> str:
        session = GameSession(mode)
        sid = uuid.uuid4().hex
        with self._lock:
            self._sessions[sid] = (session, threading.Lock())
        return sid

    def get(self, sid: str) -> tuple[GameSession, threading.Lock]:
        with self._lock:
            if sid not in self._sessions:
                raise KeyError(sid)
            return self._sessions[sid]

    def delete(self, sid: str) -> None:
        with self._lock:
            if sid not in self._sessions:
                raise KeyError(sid)
            del self._sessions[sid]

    def append_log(self, sid: str, entry: dict) -> None:
        if not self.log_dir:
            return
        path = os.path.join(self.log_dir, f"{sid}.jsonl")
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(entry) + "\n")


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore  # set by make_server

    # ------------------------------------------------------------------

    def _send(self, code: int, data=None) -> None:
        body = (jsonio.dumps(data) + "\n").encode() if data is not None else b""
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        if body:
            self.wfile.write(body)

    def _error(self, code: int, error: str, detail: str = "") -> None:
        self._send(code, {"error": error, "detail": detail})

    def _body(self):
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        return jsonio.loads(self.rfile.read(length).decode())

    def log_message(self, fmt, *args):  # quiet by default
        pass

    # ------------------------------------------------------------------

    def do_POST(self):
        path = urlparse(self.path).path.rstrip("/")
        try:
            if path == "/session":
                return self._create_session()
            if path == "/parse":
                return self._parse()
            parts = path.strip("/").split("/")
            if len(parts) == 3 and parts[0] == "session" and parts[2] == "move":
                return self._move(parts[1])
            self._error(404, "not-found", path)
        except WorkbenchError as exc:
            self._error(422, "domain-error", str(exc))

    def do_GET(self):
        url = urlparse(self.path)
        parts = url.path.strip("/").split("/")
        if len(parts) == 3 and parts[0] == "session":
            sid, leaf = parts[1], parts[2]
            try:
                session, lock = self.store.get(sid)
            except KeyError:
                return self._error(404, "unknown-session", sid)
            with lock:
                if leaf == "state":
                    return self._send(200, session.to_json())
                if leaf == "witness":
                    qs = parse_qs(url.query)
                    try:
                        k = int(qs.get("k", ["0"])[0])
                        prefix = session.witness_prefix(k)
                    except (ValueError, PreconditionError) as exc:
                        return self._error(422, "bad-witness-index", str(exc))
                    return self._send(200, {"prefix": prefix})
                if leaf == "suggestions":
                    return self._send(
                        200,
                        {
                            "suggestions": session.suggestions(),
                            "points": session.point_templates(),
                        },
                    )
        self._error(404, "not-found", url.path)

    def do_DELETE(self):
        parts = urlparse(self.path).path.strip("/").split("/")
        if len(parts) == 2 and parts[0] == "session":
            try:
                self.store.delete(parts[1])
            except KeyError:
                return self._error(404, "unknown-session", parts[1])
            return self._send(204)
        self._error(404, "not-found", self.path)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    # ------------------------------------------------------------------

    def _create_session(self):
        body = self._body()
        mode = body.get("mode", "plain")
        try:
            sid = self.store.create(mode)
        except PreconditionError as exc:
            return self._error(422, "bad-mode", str(exc))
        self._send(200, {"id": sid})

    def _parse(self):
        body = self._body()
        kind, text = body.get("kind"), body.get("text", "")
        try:
            if kind == "set":
                data = parse_set(text).to_json()
            elif kind == "box":
                data = [sb.to_json() for sb in parse_subboxes(text)]
            elif kind == "map":
                data = parse_map(text).to_json()
            else:
                return self._error(422, "bad-kind", f"unknown kind {kind!r}")
        except ParseError as exc:
            return self._error(422, "parse-error", str(exc))
        self._send(200, {"kind": kind, "value": data})

    def _move(self, sid: str):
        try:
            session, lock = self.store.get(sid)
        except KeyError:
            return self._error(404, "unknown-session", sid)
        body = self._body()
        try:
            extra = [SubbasicBox.from_json(x) for x in body.get("extra", [])]
            point_json = body.get("point")
            point = ProgressionMap.from_json(point_json) if point_json else None
        except (KeyError, TypeError, WorkbenchError) as exc:
            return self._error(422, "bad-move-body", str(exc))
        with lock:
            if session.turn != "E" or session.status != "ongoing":
                return self._error(409, "wrong-turn", session.status)
            try:
                session.play_round(extra, point)
            except IllegalMoveError as exc:
                return self._error(422, exc.reason, str(exc))
            self.store.append_log(
                sid,
                {
                    "extra": [sb.to_json() for sb in extra],
                    "point": point.to_json() if point else None,
                },
            )
            self._send(200, session.to_json())


def make_server(port: int, host: str = "127.0.0.1", log_dir: str | None = None):
    store = SessionStore(log_dir)
    handler = type("BoundHandler", (_Handler,), {"store": store})
    server = ThreadingHTTPServer((host, port), handler)
    server.store = store
    return server


def serve(port: int, host: str = "127.0.0.1", log_dir: str | None = None) -> None:
    server = make_server(port, host, log_dir)
    print(f"listening on http://{host}:{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
