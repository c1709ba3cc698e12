"""HTTP front end for navigator sessions, on the standard library stack.

Endpoints (all JSON, UTF-8):

* ``POST /api/sessions`` -> 201 ``{session_id, state}``
* ``GET /api/sessions/{id}`` -> ``{state}``
* ``POST /api/sessions/{id}/answer`` ``{value: int}`` -> ``{state}``
* ``POST /api/sessions/{id}/undo`` -> ``{state}``
* ``GET /api/catalog`` -> variable and product labels for UI rendering

Errors come back as ``{error: text}`` with 400 (bad input), 404
(unknown session/path), 409 (operation conflicts with session state)
or 405. Unknown request fields are ignored; responses carry only the
documented fields. A static UI directory, when configured, is served
for all non-API GET paths.
"""

from __future__ import annotations

import json
import mimetypes
import posixpath
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import urlparse

from .diagram import Diagram
from .errors import (
    InvalidAnswerError,
    SessionConflictError,
    UnknownSessionError,
)
from .navigator import DEFAULT_TTL, SessionStore

__all__ = ["NavigatorServer", "make_server"]

_SESSION_PATH = re.compile(r"^/api/sessions/([A-Za-z0-9_-]+)(?:/(answer|undo))?$")

#: Cap request bodies well above any legal payload.
_MAX_BODY = 64 * 1024


class NavigatorServer(ThreadingHTTPServer):
    """Threading HTTP server owning the session store and catalog info."""

    daemon_threads = True

    def __init__(
        self,
        address: tuple[str, int],
        diagram: Diagram,
        catalog_name: str = "catalog",
        ui_dir: Path | None = None,
        ttl: float = DEFAULT_TTL,
        verbose: bool = False,
    ) -> None:
        super().__init__(address, _Handler)
        self.diagram = diagram
        self.store = SessionStore(diagram, ttl=ttl)
        self.catalog_name = catalog_name
        self.ui_dir = Path(ui_dir).resolve() if ui_dir else None
        self.verbose = verbose

    @property
    def port(self) -> int:
        return self.server_address[1]

    def catalog_doc(self) -> dict:
        schema = self.diagram.schema
        return {
            "name": self.catalog_name,
            "variables": [
                {"name": v.name, "labels": list(v.value_labels)}
                for v in schema.variables
            ],
            "products": [
                {"id": i, "label": label}
                for i, label in enumerate(schema.output_labels)
            ],
        }


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: NavigatorServer

    # -- plumbing ---------------------------------------------------------

    def log_message(self, fmt: str, *args) -> None:
        if self.server.verbose:
            super().log_message(fmt, *args)

    def _send_json(self, status: int, doc: dict) -> None:
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _fail(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def _read_body(self) -> dict:
        """Parse the request body as a JSON object; empty body means {}."""
        length = int(self.headers.get("Content-Length") or 0)
        if length > _MAX_BODY:
            raise ValueError("request body too large")
        raw = self.rfile.read(length) if length else b""
        if not raw.strip():
            return {}
        doc = json.loads(raw)
        if not isinstance(doc, dict):
            raise ValueError("request body must be a JSON object")
        return doc

    # -- routing --------------------------------------------------------------

    def do_GET(self) -> None:
        path = urlparse(self.path).path
        if path == "/api/catalog":
            self._send_json(200, self.server.catalog_doc())
            return
        match = _SESSION_PATH.match(path)
        if match and match.group(2) is None:
            self._with_session(match.group(1), lambda sess: sess.state())
            return
        if path.startswith("/api/"):
            self._fail(404, "unknown API path")
            return
        self._serve_static(path)

    def do_POST(self) -> None:
        path = urlparse(self.path).path
        try:
            body = self._read_body()
        except json.JSONDecodeError as exc:
            self._fail(400, f"request body is not valid JSON: {exc}")
            return
        except ValueError as exc:
            self._fail(400, str(exc))
            return

        if path == "/api/sessions":
            self._create_session(body)
            return
        match = _SESSION_PATH.match(path)
        if match and match.group(2) == "answer":
            if "value" not in body:
                self._fail(400, "missing field: value")
                return
            self._with_session(
                match.group(1), lambda sess: sess.answer(body["value"])
            )
            return
        if match and match.group(2) == "undo":
            self._with_session(match.group(1), lambda sess: sess.undo())
            return
        self._fail(404, "unknown API path")

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_PUT(self) -> None:
        self._fail(405, "method not allowed")

    do_DELETE = do_PUT
    do_PATCH = do_PUT

    # -- handlers ----------------------------------------------------------------

    def _create_session(self, body: dict) -> None:
        requested = body.get("catalog")
        if requested is not None and requested != self.server.catalog_name:
            self._fail(404, f"unknown catalog: {requested}")
            return
        session = self.server.store.create()
        with session.lock:
            state = session.state()
        self._send_json(201, {"session_id": session.id, "state": state})

    def _with_session(self, session_id: str, op) -> None:
        try:
            session = self.server.store.get(session_id)
            with session.lock:
                state = op(session)
        except UnknownSessionError as exc:
            self._fail(404, str(exc))
        except InvalidAnswerError as exc:
            self._fail(400, str(exc))
        except SessionConflictError as exc:
            self._fail(409, str(exc))
        else:
            self._send_json(200, {"state": state})

    # -- static UI ------------------------------------------------------------------

    def _serve_static(self, path: str) -> None:
        root = self.server.ui_dir
        if root is None or not root.is_dir():
            if path == "/":
                self._send_json(
                    200,
                    {
                        "service": "product navigator API",
                        "catalog": self.server.catalog_name,
                    },
                )
                return
            self._fail(404, "not found")
            return
        clean = posixpath.normpath(path.lstrip("/"))
        if clean in (".", ""):
            clean = "index.html"
        target = (root / clean).resolve()
        if root not in target.parents and target != root:
            self._fail(404, "not found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            # SPA routes fall back to the entry page
            target = root / "index.html"
            if not target.is_file():
                self._fail(404, "not found")
                return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def make_server(
    diagram: Diagram,
    host: str = "127.0.0.1",
    port: int = 0,
    catalog_name: str = "catalog",
    ui_dir: Path | None = None,
    ttl: float = DEFAULT_TTL,
    verbose: bool = False,
) -> NavigatorServer:
    """Bind (but do not start) a navigator server; port 0 picks a free port."""
    return NavigatorServer(
        (host, port), diagram,
        catalog_name=catalog_name, ui_dir=ui_dir, ttl=ttl, verbose=verbose,
    )


def serve_forever(server: NavigatorServer) -> None:
    """Run until interrupted; convenience for the CLI."""
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def start_background(server: NavigatorServer) -> threading.Thread:
    """Run the server on a daemon thread; used by tests."""
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return thread
