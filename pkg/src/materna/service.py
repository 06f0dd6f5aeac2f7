"""Gateway ingestion, outbox, clock, persistence, and replay.

All state mutations funnel through one lock and append to the event log,
so a fixed inbound sequence plus a fixed clock sequence reproduces the
same log and outbox byte for byte. Restoring from a log replays events
into a fresh service built from the same config.
"""

from __future__ import annotations

import datetime as dt
import json
import threading

from . import jsonio
from .config import ServiceConfig
from .dispatch import Dispatcher, Vehicle
from .errors import (
    BadAge,
    DateMismatch,
    DuplicatePhone,
    MaternaError,
    NoCapacityAnywhere,
    NoExcuse,
    NoFacilities,
    NoVehicleAvailable,
    ParseError,
    UnknownWoman,
)
from .eventlog import Event, EventWriter, escape_payload
from .messages import (
    Advice,
    Assign,
    ChangeReview,
    Confirm,
    Err,
    Register,
    Remind,
    Rescue,
    Sos,
    encode_outbound,
    parse_inbound,
    parse_outbound,
)
from .registry import Registry
from .scheduler import CareScheduler

DEAD_LETTER_LINE = "ERR|UNKNOWN|BADMSG"


class Outbox:
    """FIFO queue standing in for outbound SMS delivery."""

    def __init__(self):
        self._entries: list[dict] = []

    def push(self, line: str) -> None:
        self._entries.append({"line": line, "fetched": False})

    def drain(self, max_count: int) -> list[str]:
        """Up to max_count undelivered lines in FIFO order, marked fetched."""
        if max_count < 1:
            raise ValueError(f"max must be >= 1, got {max_count}")
        out = []
        for entry in self._entries:
            if len(out) >= max_count:
                break
            if not entry["fetched"]:
                entry["fetched"] = True
                out.append(entry["line"])
        return out

    def pending_count(self) -> int:
        return sum(1 for e in self._entries if not e["fetched"])

    def lines(self) -> list[str]:
        return [e["line"] for e in self._entries]


class MaternaService:
    """The server: parses, routes, queues, and journals everything."""

    def __init__(self, config: ServiceConfig, registry: Registry, event_log_path=None):
        self.config = config
        self.registry = registry
        self.scheduler = CareScheduler(registry, config.advice_templates)
        self.dispatcher = Dispatcher(
            registry,
            heli_threshold_km=config.heli_threshold_km,
            speeds_kmh={
                Vehicle.CAR: config.speed_car,
                Vehicle.BOAT: config.speed_boat,
                Vehicle.HELI: config.speed_heli,
            },
            water_zone_prefix=config.water_zone_prefix,
        )
        self.outbox = Outbox()
        self.dead_letters: list[dict] = []
        self._writer = EventWriter(event_log_path or config.event_log_path)
        self._lock = threading.RLock()
        self._virtual = config.clock_mode == "virtual"
        self._now = dt.datetime.fromisoformat(config.clock_start)

    @classmethod
    def from_config(cls, config: ServiceConfig, event_log_path=None) -> "MaternaService":
        if not config.facilities_path:
            raise ValueError("config needs facilities_path")
        registry = Registry.load(config.facilities_path, id_code_seed=config.id_code_seed)
        return cls(config, registry, event_log_path=event_log_path)

    # --- clock ---

    @property
    def now(self) -> dt.datetime:
        if self._virtual:
            return self._now
        return dt.datetime.now().replace(microsecond=0)

    def advance_to(self, when: dt.datetime) -> None:
        if not self._virtual:
            raise MaternaError("cannot set the clock in wall mode")
        if when < self._now:
            raise ValueError(f"clock cannot move backwards ({when} < {self._now})")
        with self._lock:
            self._now = when

    # --- events ---

    @property
    def events(self) -> list[Event]:
        return list(self._writer.events)

    def _append(self, kind: str, payload: str, at=None) -> Event:
        return self._writer.append(at or self.now, kind, payload)

    def _queue(self, msg, origin: str = "SERVER") -> str:
        line = encode_outbound(msg)
        self._append("OutboundQueued", f"{origin}|{line}")
        self.outbox.push(line)
        return line

    # --- gateway ---

    def ingest(self, line: str) -> list:
        """Route one inbound line; failures become ERR messages, never raises."""
        with self._lock:
            try:
                msg = parse_inbound(line)
            except ParseError:
                self._append("InboundRejected", escape_payload(line))
                self.dead_letters.append(
                    {"line": DEAD_LETTER_LINE, "input": escape_payload(line)}
                )
                return []
            self._append("InboundAccepted", line)
            outbounds = self._route(msg)
            for out in outbounds:
                self._queue(out)
            return outbounds

    def _route(self, msg) -> list:
        try:
            if isinstance(msg, Register):
                record, assign = self.registry.register(msg, self.now)
                self.scheduler.enroll(record)
                return [assign]
            if isinstance(msg, Sos):
                order, rescue = self.dispatcher.handle_sos(msg, self.now)
                self._append("OrderOpened", jsonio.dumps(jsonio.order_to_dict(order)))
                return [rescue]
            if isinstance(msg, ChangeReview):
                self.scheduler.reschedule(msg, self.now.date())
                return []
            if isinstance(msg, Confirm):
                self.scheduler.confirm(msg)
                return []
        except DuplicatePhone:
            return [Err(msg.phone, "DUP")]
        except (NoCapacityAnywhere, NoFacilities, NoVehicleAvailable):
            return [Err(msg.phone, "NOCAP")]
        except BadAge:
            return [Err(msg.phone, "BADAGE")]
        except UnknownWoman:
            return [Err(msg.phone, "UNREG")]
        except NoExcuse:
            return [Err(msg.phone, "NOEXCUSE")]
        except DateMismatch:
            return [Err(msg.phone, "BADMSG")]
        raise TypeError(f"unroutable message {msg!r}")

    def drain_outbox(self, max_count: int) -> list[str]:
        with self._lock:
            return self.outbox.drain(max_count)

    # --- operator / MD paths ---

    def record_review(self, phone: str, **md_fields):
        with self._lock:
            record = self.scheduler.record_review(phone, self.now.date(), **md_fields)
            conditions = md_fields.get("conditions")
            payload = {
                "record": jsonio.review_to_dict(record),
                "conditions": sorted(c.value for c in conditions) if conditions else None,
            }
            self._append("ReviewRecorded", jsonio.dumps(payload))
            return record

    def compose_advice(self, who: str, target: str, text: str) -> list:
        with self._lock:
            pairs = self.scheduler.compose_advice(who, target, text, self.now.date())
            messages = []
            for advice, _row in pairs:
                self._queue(advice, origin=who.upper())
                messages.append(advice)
            return messages

    def close_order(self, order_id: int, outcome: str):
        with self._lock:
            order = self.dispatcher.close_order(order_id, outcome)
            self._append(
                "OrderClosed", jsonio.dumps({"order_id": order_id, "outcome": outcome})
            )
            return order

    def release_slot(self, facility_id: int, phone: str) -> None:
        with self._lock:
            self.registry.release_slot(facility_id, phone)
            self._append(
                "SlotReleased", jsonio.dumps({"facility_id": facility_id, "phone": phone})
            )

    # --- clock-driven sweep ---

    def run_sweep(self) -> list:
        """Daily duties: review reminders, then trimester advice."""
        with self._lock:
            today = self.now.date()
            emitted = []
            for remind in self.scheduler.tick(today):
                self._queue(remind)
                emitted.append(remind)
            for advice, _row in self.scheduler.advice_due(today):
                self._queue(advice)
                emitted.append(advice)
            return emitted

    # --- views ---

    def facilities_geojson(self) -> dict:
        return jsonio.facilities_geojson(self.registry.facilities)

    def snapshot(self) -> dict:
        """Canonical observable state; delivery marks and the clock are transient."""
        with self._lock:
            return {
                "facilities": [jsonio.facility_to_dict(f) for f in self.registry.facilities],
                "women": [jsonio.woman_to_dict(w) for w in self.registry.women()],
                "reviews": {
                    w.phone: [jsonio.review_to_dict(r) for r in self.scheduler.reviews_of(w.phone)]
                    for w in self.registry.women()
                },
                "advice": [jsonio.advice_to_dict(a) for a in self.scheduler.advice_ledger],
                "last_advised": dict(self.scheduler.last_advised),
                "orders": [jsonio.order_to_dict(o) for o in self.dispatcher.orders()],
                "outbox": self.outbox.lines(),
                "dead_letters": list(self.dead_letters),
                "next_id_code": self.registry.next_id_code,
                "next_order_id": self.dispatcher.next_order_id,
                "next_event_seq": self._writer.next_seq,
            }

    def write_snapshot(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(self.snapshot()) + "\n")

    def close(self) -> None:
        self._writer.close()

    # --- replay ---

    @classmethod
    def restore(cls, config: ServiceConfig, events: list[Event], registry=None) -> "MaternaService":
        """Rebuild observable state by replaying a gapless event log.

        The config (and the fresh registry built from it) must match the one
        the original service started from.
        """
        if registry is None:
            service = cls.from_config(config)
        else:
            service = cls(config, registry)
        for event in events:
            service._apply_event(event)
        service._writer.adopt(events)
        if events and service._virtual:
            service._now = events[-1].at
        return service

    def _apply_event(self, event: Event) -> None:
        kind, payload, at = event.kind, event.payload, event.at
        if kind == "InboundAccepted":
            msg = parse_inbound(payload)
            try:
                if isinstance(msg, Register):
                    record, _assign = self.registry.register(msg, at)
                    self.scheduler.enroll(record)
                elif isinstance(msg, ChangeReview):
                    self.scheduler.reschedule(msg, at.date())
                elif isinstance(msg, Confirm):
                    self.scheduler.confirm(msg)
                # Sos state lands via its OrderOpened event
            except MaternaError:
                pass  # the rejection already produced an ERR event
        elif kind == "InboundRejected":
            self.dead_letters.append({"line": DEAD_LETTER_LINE, "input": payload})
        elif kind == "OutboundQueued":
            origin, _, line = payload.partition("|")
            self.outbox.push(line)
            msg = parse_outbound(line)
            if isinstance(msg, Remind):
                self.scheduler.mark_reminder_sent(msg.phone)
            elif isinstance(msg, Advice):
                self.scheduler.apply_advice_row(origin, msg)
        elif kind == "ReviewRecorded":
            data = json.loads(payload)
            conditions = None
            if data["conditions"] is not None:
                conditions = jsonio.conditions_from_values(data["conditions"])
            self.scheduler.apply_review(jsonio.review_from_dict(data["record"]), conditions)
        elif kind == "OrderOpened":
            self.dispatcher.restore_order(jsonio.order_from_dict(json.loads(payload)))
        elif kind == "OrderClosed":
            data = json.loads(payload)
            self.dispatcher.close_order(data["order_id"], data["outcome"])
        elif kind == "SlotReleased":
            data = json.loads(payload)
            self.registry.release_slot(data["facility_id"], data["phone"])
