"""HTTP session service for interactive (human-teacher) learning runs.

One session = one learner thread blocked on a deferred teacher.  The wire
protocol is a small JSON API:

* ``POST /sessions`` ``{framework, learner, signature, caps?}`` -> ``{sessionId}``
* ``GET /sessions/{id}/pending`` -> ``{kind, payload, step}`` or 204
* ``POST /sessions/{id}/answer`` ``{"answer": "yes"|"no"}`` or
  ``{"counterexample": "ci: ..."}``
* ``GET /sessions/{id}/transcript`` -> full transcript JSON
* ``DELETE /sessions/{id}``

Transcripts are recorded by the same machinery as machine-teacher runs, so a
human session is schema-identical to an in-process one.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .frameworks import framework
from .harness import RecordingSession, Transcript
from .learners import (
    CapExhaustedError,
    EnumerationExhaustedError,
    LEARNER_FRAMEWORKS,
    LEARNERS,
    LearnerCaps,
)
from .oracles import (
    AnswerValidationError,
    DeferredTeacher,
    SessionClosedError,
)
from .syntax import Signature, TBox, print_tbox, size_of


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


class Session:
    """One interactive run: a learner thread driven by console answers."""

    def __init__(self, framework_id: str, learner_id: str, sig: Signature,
                 caps: LearnerCaps, timeout: float | None = None):
        self.id = uuid.uuid4().hex
        self.framework = framework(framework_id)
        self.learner_id = learner_id
        self.signature = sig
        self.caps = caps
        config = {
            "framework": framework_id,
            "learner": learner_id,
            "signature": {
                "concepts": sorted(sig.concept_names),
                "roles": sorted(sig.role_names),
            },
            "caps": {
                "maxQueries": caps.max_queries,
                "maxSize": caps.max_size,
                "depthCap": caps.depth_cap,
            },
        }
        self.teacher = DeferredTeacher(self.framework, timeout)
        self.recorder = RecordingSession(self.teacher, Transcript(config), caps)
        self.halted = False
        self.outcome: str | None = None
        self.hypothesis: TBox | None = None
        self._lock = threading.Lock()
        self._thread = threading.Thread(target=self._run, daemon=True)

    def start(self) -> None:
        self._thread.start()

    def _run(self) -> None:
        learner = LEARNERS[self.learner_id]
        hypothesis: TBox | None = None
        outcome = "halted"
        try:
            if self.learner_id == "elh-enum-eq":
                hypothesis = learner(self.recorder, self.signature,
                                     max_size=self.caps.max_size)
            else:
                hypothesis = learner(self.recorder, self.signature)
        except SessionClosedError:
            outcome = "closed"
        except CapExhaustedError:
            outcome = "cap-exhausted"
        except EnumerationExhaustedError:
            outcome = "max-size-exhausted"
        except TimeoutError:
            outcome = "timeout"
        except Exception as err:  # surfaced via the transcript, not a crash
            outcome = f"error: {err}"
        with self._lock:
            self.hypothesis = hypothesis
            self.outcome = outcome
            metrics = self.recorder.metrics
            # no machine-held target: success stays unknown
            metrics.success = None
            if hypothesis is not None:
                metrics.hypothesis_size = size_of(hypothesis)
                self.recorder.snapshot(hypothesis)
            self.recorder.halt(outcome, hypothesis)
            self.halted = True

    def pending_view(self) -> dict | None:
        if self.halted:
            return None
        pending = self.teacher.pending()
        if pending is None:
            return None
        # step of the QueryPosed event currently awaiting an answer
        step = self.recorder.transcript.events[-1].step
        return {"kind": pending.kind, "payload": pending.payload, "step": step}

    def submit_answer(self, payload: dict) -> None:
        if self.halted:
            raise ApiError(409, "session already halted")
        try:
            self.teacher.submit(payload)
        except AnswerValidationError as err:
            status = 409 if "no query is pending" in str(err) else 400
            raise ApiError(status, str(err)) from err

    def transcript_dict(self) -> dict:
        with self._lock:
            out = self.recorder.transcript.to_dict(self.recorder.metrics)
            out["halted"] = self.halted
            out["outcome"] = self.outcome
            out["hypothesis"] = (
                print_tbox(self.hypothesis) if self.hypothesis is not None else None
            )
            return out

    def close(self) -> None:
        self.teacher.close()
        self._thread.join(timeout=5)


class SessionManager:
    def __init__(self, timeout: float | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._timeout = timeout

    def create(self, body: dict) -> Session:
        framework_id = body.get("framework")
        learner_id = body.get("learner")
        if learner_id not in LEARNERS:
            raise ApiError(400, f"unknown learner: {learner_id!r}")
        if framework_id != LEARNER_FRAMEWORKS[learner_id]:
            raise ApiError(
                400,
                f"learner {learner_id!r} requires framework "
                f"{LEARNER_FRAMEWORKS[learner_id]!r}",
            )
        sig_body = body.get("signature") or {}
        try:
            sig = Signature.of(
                sig_body.get("concepts", ()), sig_body.get("roles", ())
            )
        except (TypeError, ValueError) as err:
            raise ApiError(400, f"bad signature: {err}") from err
        caps_body = body.get("caps") or {}
        try:
            caps = LearnerCaps(
                max_queries=caps_body.get("maxQueries", 100_000),
                max_size=caps_body.get("maxSize", 8),
                depth_cap=caps_body.get("depthCap", 3),
            )
        except (TypeError, ValueError) as err:
            raise ApiError(400, f"bad caps: {err}") from err
        session = Session(framework_id, learner_id, sig, caps, self._timeout)
        with self._lock:
            self._sessions[session.id] = session
        session.start()
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session: {session_id}")
        return session

    def delete(self, session_id: str) -> None:
        session = self.get(session_id)
        session.close()
        with self._lock:
            self._sessions.pop(session_id, None)

    def close_all(self) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
            self._sessions.clear()
        for session in sessions:
            session.close()


_SESSION_PATH = re.compile(r"/sessions/([0-9a-f]+)(?:/(pending|answer|transcript))?$")


def _make_handler(manager: SessionManager):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, *args) -> None:  # keep test output quiet
            pass

        def _send_json(self, status: int, body: dict | None) -> None:
            data = b"" if body is None else json.dumps(body).encode()
            self.send_response(status)
            if data:
                self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            if data:
                self.wfile.write(data)

        def _read_body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                raise ApiError(400, "request body required")
            try:
                body = json.loads(raw)
            except json.JSONDecodeError as err:
                raise ApiError(400, f"malformed JSON: {err}") from err
            if not isinstance(body, dict):
                raise ApiError(400, "request body must be a JSON object")
            return body

        def _dispatch(self) -> None:
            if self.command == "POST" and self.path.rstrip("/") == "/sessions":
                session = manager.create(self._read_body())
                self._send_json(200, {"sessionId": session.id})
                return
            m = _SESSION_PATH.match(self.path)
            if not m:
                raise ApiError(404, f"no such endpoint: {self.path}")
            session_id, action = m.group(1), m.group(2)
            if self.command == "DELETE" and action is None:
                manager.delete(session_id)
                self._send_json(200, {"ok": True})
                return
            session = manager.get(session_id)
            if self.command == "GET" and action == "pending":
                view = session.pending_view()
                if view is None and not session.halted:
                    self._send_json(204, None)
                elif view is None:
                    self._send_json(
                        200,
                        {
                            "kind": "halted",
                            "payload": print_tbox(session.hypothesis)
                            if session.hypothesis is not None
                            else "",
                            "step": len(session.recorder.transcript.events) - 1,
                        },
                    )
                else:
                    self._send_json(200, view)
                return
            if self.command == "POST" and action == "answer":
                session.submit_answer(self._read_body())
                self._send_json(200, {"ok": True})
                return
            if self.command == "GET" and action == "transcript":
                self._send_json(200, session.transcript_dict())
                return
            raise ApiError(404, f"no such endpoint: {self.command} {self.path}")

        def _handle(self) -> None:
            try:
                self._dispatch()
            except ApiError as err:
                self._send_json(err.status, {"error": err.message})
            except Exception as err:  # pragma: no cover - defensive
                self._send_json(500, {"error": f"internal error: {err}"})

        do_GET = _handle
        do_POST = _handle
        do_DELETE = _handle

    return Handler


class SessionService:
    """A running HTTP service plus its session manager."""

    def __init__(self, host: str, port: int, timeout: float | None = None):
        self.manager = SessionManager(timeout)
        self.server = ThreadingHTTPServer((host, port), _make_handler(self.manager))

    @property
    def address(self) -> tuple[str, int]:
        return self.server.server_address[0], self.server.server_address[1]

    def serve_forever(self) -> None:
        self.server.serve_forever()

    def start_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        thread.start()
        return thread

    def shutdown(self) -> None:
        self.manager.close_all()
        self.server.shutdown()
        self.server.server_close()


def session_service(bind: str, timeout: float | None = None) -> SessionService:
    """Create (but do not start) the service bound to ``host:port``."""
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"bind address must be HOST:PORT, got {bind!r}")
    return SessionService(host, int(port_text), timeout)
