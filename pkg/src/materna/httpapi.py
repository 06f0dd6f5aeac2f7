"""Request/response API over a local socket, plus static console serving.

Thin JSON layer over MaternaService; every validation error surfaces as a
structured error body so the console can show it inline.
"""

from __future__ import annotations

import datetime as dt
import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import jsonio
from .errors import (
    AdviceTooLong,
    AlreadyClosed,
    BadAge,
    BadNextReview,
    BadWeek,
    DateMismatch,
    DuplicatePhone,
    MaternaError,
    NoCapacityAnywhere,
    NoExcuse,
    NoFacilities,
    NoVehicleAvailable,
    ParseError,
    UnknownOrder,
    UnknownWoman,
)

_STATUS = {
    UnknownWoman: 404,
    UnknownOrder: 404,
    DuplicatePhone: 409,
    AlreadyClosed: 409,
    NoExcuse: 409,
    DateMismatch: 409,
    NoCapacityAnywhere: 409,
    NoFacilities: 409,
    NoVehicleAvailable: 409,
    AdviceTooLong: 400,
    BadNextReview: 400,
    BadWeek: 400,
    BadAge: 400,
    ParseError: 400,
}


def _status_for(exc: Exception) -> int:
    for klass, status in _STATUS.items():
        if isinstance(exc, klass):
            return status
    return 400


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "materna"

    # quiet: one line per request would swamp scenario runs
    def log_message(self, fmt, *args):
        pass

    @property
    def service(self):
        return self.server.service

    # --- plumbing ---

    def _send(self, status: int, body: bytes, content_type: str):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _json(self, payload, status: int = 200):
        self._send(status, (json.dumps(payload) + "\n").encode("utf-8"), "application/json")

    def _error(self, exc: Exception, status: int | None = None):
        self._json(
            {"error": type(exc).__name__, "detail": str(exc)},
            status=status if status is not None else _status_for(exc),
        )

    def _body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length else b""

    def _json_body(self) -> dict:
        raw = self._body()
        if not raw:
            return {}
        return json.loads(raw.decode("utf-8"))

    # --- verbs ---

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if url.path == "/outbox":
                max_count = int(parse_qs(url.query).get("max", ["10"])[0])
                self._json({"lines": self.service.drain_outbox(max_count)})
            elif url.path == "/women":
                self._json([jsonio.woman_to_dict(w) for w in self.service.registry.women()])
            elif len(parts) == 2 and parts[0] == "women":
                woman = self.service.registry.lookup(parts[1])
                self._json(
                    {
                        "woman": jsonio.woman_to_dict(woman),
                        "reviews": [
                            jsonio.review_to_dict(r)
                            for r in self.service.scheduler.reviews_of(parts[1])
                        ],
                        "advice": [
                            jsonio.advice_to_dict(a)
                            for a in self.service.scheduler.advice_of(parts[1])
                        ],
                    }
                )
            elif url.path == "/advice":
                self._json([jsonio.advice_to_dict(a) for a in self.service.scheduler.advice_ledger])
            elif url.path == "/dispatch":
                self._json([jsonio.order_to_dict(o) for o in self.service.dispatcher.orders()])
            elif url.path == "/facilities.geojson":
                self._send(
                    200,
                    (json.dumps(self.service.facilities_geojson()) + "\n").encode("utf-8"),
                    "application/geo+json",
                )
            elif url.path == "/clock":
                self._json({"now": self.service.now.isoformat(), "mode": self.service.config.clock_mode})
            elif parts and parts[0] == "console":
                self._serve_console(parts[1:])
            elif url.path == "/":
                self._redirect("/console/")
            else:
                self._json({"error": "NotFound", "detail": url.path}, status=404)
        except MaternaError as exc:
            self._error(exc)
        except (ValueError, KeyError) as exc:
            self._error(exc, status=400)

    def _redirect(self, target: str):
        self.send_response(302)
        self.send_header("Location", target)
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _serve_console(self, rel_parts):
        root = self.server.console_root
        if root is None:
            self._json({"error": "NotFound", "detail": "console not configured"}, status=404)
            return
        rel = "/".join(rel_parts) or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._json({"error": "NotFound", "detail": "bad path"}, status=404)
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._json({"error": "NotFound", "detail": rel}, status=404)
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), ctype)

    def do_POST(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if url.path == "/gateway/inbound":
                line = self._body().decode("utf-8", errors="replace").rstrip("\n")
                queued = self.service.ingest(line)
                self._json({"queued": len(queued)})
            elif len(parts) == 2 and parts[0] == "reviews":
                self._post_review(parts[1])
            elif url.path == "/advice":
                data = self._json_body()
                sent = self.service.compose_advice(data["who"], data["target"], data["text"])
                self._json({"sent": len(sent)})
            elif len(parts) == 3 and parts[0] == "dispatch" and parts[2] == "close":
                data = self._json_body()
                order = self.service.close_order(int(parts[1]), data.get("outcome", ""))
                self._json(jsonio.order_to_dict(order))
            elif url.path == "/clock/tick":
                self._post_tick()
            else:
                self._json({"error": "NotFound", "detail": url.path}, status=404)
        except MaternaError as exc:
            self._error(exc)
        except (ValueError, KeyError, TypeError) as exc:
            self._error(exc, status=400)

    def _post_review(self, phone: str):
        data = self._json_body()
        kwargs = {
            "gestational_week": data["gestational_week"],
            "next_review": dt.date.fromisoformat(data["next_review"]),
        }
        for key in ("weight_kg", "blood_pressure", "notes"):
            if data.get(key) is not None:
                kwargs[key] = data[key]
        if data.get("conditions"):
            kwargs["conditions"] = jsonio.conditions_from_values(data["conditions"])
        record = self.service.record_review(phone, **kwargs)
        self._json(jsonio.review_to_dict(record))

    def _post_tick(self):
        data = self._json_body()
        minutes = int(data.get("advance_minutes", 0))
        if minutes:
            self.service.advance_to(self.service.now + dt.timedelta(minutes=minutes))
        sent = self.service.run_sweep()
        self._json({"now": self.service.now.isoformat(), "sent": len(sent)})


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, service, addr=("127.0.0.1", 0), console_root=None):
        super().__init__(addr, ApiHandler)
        self.service = service
        root = console_root or service.config.console_path
        self.console_root = Path(root).resolve() if root else None


def serve_in_thread(service, addr=("127.0.0.1", 0), console_root=None):
    """Start the API server on a background thread; returns (server, base_url)."""
    server = ApiServer(service, addr=addr, console_root=console_root)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    return server, f"http://{host}:{port}"
