"""Interactive selection sessions over a built diagram.

A session walks the diagram one answered question at a time. The
trail records every (variable, chosen value) pair; the position is
always the node reached by replaying the trail from the root, which
is what makes undo trivial and cheap.

Sessions are kept in an in-memory store keyed by unguessable tokens
and expire after a configurable idle period. The store hands out one
lock per session so concurrent requests against the same session are
serialized, never interleaved; the diagram itself is shared
read-only.
"""

from __future__ import annotations

import secrets
import threading
import time

from .diagram import Diagram, NonTerminal, Terminal
from .errors import (
    InvalidAnswerError,
    SessionConflictError,
    UnknownSessionError,
)

__all__ = ["Session", "SessionStore", "DEFAULT_TTL"]

#: Idle lifetime of a session, in seconds.
DEFAULT_TTL = 30 * 60


class Session:
    """One dialogue: current position plus the trail that led there."""

    __slots__ = ("id", "diagram", "position", "trail", "lock", "touched")

    def __init__(self, session_id: str, diagram: Diagram) -> None:
        self.id = session_id
        self.diagram = diagram
        self.position = diagram.root
        self.trail: list[tuple[int, int]] = []
        self.lock = threading.Lock()
        self.touched = time.monotonic()

    # -- views ----------------------------------------------------------

    def state(self) -> dict:
        """The wire-format state document.

        Exactly one of ``question`` / ``result`` is present for the
        question and resolved statuses; a no-match state carries
        neither. ``trail`` is always present.
        """
        schema = self.diagram.schema
        node = self.diagram.node(self.position)
        doc: dict = {}
        if isinstance(node, NonTerminal):
            spec = schema.variables[node.var]
            doc["status"] = "question"
            doc["question"] = {
                "variable": spec.name,
                "options": list(spec.value_labels),
            }
        elif isinstance(node, Terminal):
            doc["status"] = "resolved"
            doc["result"] = {
                "product_id": node.value,
                "label": schema.output_labels[node.value],
            }
        else:
            doc["status"] = "no_match"
        doc["trail"] = [
            {
                "variable": schema.variables[var].name,
                "value": value,
                "label": schema.variables[var].value_labels[value],
            }
            for var, value in self.trail
        ]
        return doc

    @property
    def resolved(self) -> bool:
        return not isinstance(self.diagram.node(self.position), NonTerminal)

    # -- transitions --------------------------------------------------------

    def answer(self, value) -> dict:
        node = self.diagram.node(self.position)
        if not isinstance(node, NonTerminal):
            raise SessionConflictError("session is already resolved")
        # bool is an int subclass; JSON true/false must not pass as 1/0
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidAnswerError("answer value must be an integer")
        arity = self.diagram.schema.variables[node.var].arity
        if not 0 <= value < arity:
            raise InvalidAnswerError(
                f"answer value {value} outside [0, {arity})"
            )
        self.position = node.children[value]
        self.trail.append((node.var, value))
        self.touched = time.monotonic()
        return self.state()

    def undo(self) -> dict:
        if not self.trail:
            raise SessionConflictError("nothing to undo")
        self.trail.pop()
        self.position = self._replay()
        self.touched = time.monotonic()
        return self.state()

    # -- invariants -----------------------------------------------------------

    def _replay(self) -> int:
        ref = self.diagram.root
        for var, value in self.trail:
            node = self.diagram.node(ref)
            assert isinstance(node, NonTerminal) and node.var == var
            ref = node.children[value]
        return ref

    def audit(self) -> None:
        """Assert the replay invariant; used by tests after every step."""
        if self._replay() != self.position:
            raise AssertionError("trail replay does not reach the position")


class SessionStore:
    """Thread-safe in-memory session registry with idle expiry."""

    def __init__(self, diagram: Diagram, ttl: float = DEFAULT_TTL) -> None:
        self.diagram = diagram
        self.ttl = ttl
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _sweep(self, now: float) -> None:
        dead = [
            sid
            for sid, sess in self._sessions.items()
            if now - sess.touched > self.ttl
        ]
        for sid in dead:
            del self._sessions[sid]

    def create(self) -> Session:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            sid = secrets.token_urlsafe(16)
            while sid in self._sessions:
                sid = secrets.token_urlsafe(16)
            session = Session(sid, self.diagram)
            self._sessions[sid] = session
            return session

    def get(self, session_id: str) -> Session:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(f"no such session: {session_id}")
            session.touched = now
            return session

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)
