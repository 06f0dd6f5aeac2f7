"""Append-only event log: `EVT|<seq>|<iso8601-datetime>|<kind>|<payload>`.

Sequence numbers start at 1 and are gapless; payloads are single-line
(JSON or wire text, with raw input escaped where needed).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .errors import CorruptLog

KINDS = (
    "InboundAccepted",
    "InboundRejected",
    "OutboundQueued",
    "ReviewRecorded",
    "OrderOpened",
    "OrderClosed",
    "SlotReleased",
)


@dataclass(frozen=True)
class Event:
    seq: int
    at: dt.datetime
    kind: str
    payload: str


def escape_payload(raw: str) -> str:
    """Make arbitrary input single-line safe for the log."""
    return raw.encode("unicode_escape").decode("ascii")


def encode_event(event: Event) -> str:
    if "\n" in event.payload or "\r" in event.payload:
        raise ValueError("event payload must be single-line")
    return f"EVT|{event.seq}|{event.at.isoformat()}|{event.kind}|{event.payload}"


def parse_event(line: str, expect_seq: int) -> Event:
    parts = line.split("|", 4)
    if len(parts) != 5 or parts[0] != "EVT":
        raise CorruptLog(expect_seq, f"unparseable event line: {line[:80]!r}")
    try:
        seq = int(parts[1])
        at = dt.datetime.fromisoformat(parts[2])
    except ValueError:
        raise CorruptLog(expect_seq, f"bad seq or timestamp: {line[:80]!r}") from None
    if parts[3] not in KINDS:
        raise CorruptLog(seq, f"unknown event kind {parts[3]!r}")
    if seq != expect_seq:
        raise CorruptLog(seq, f"expected seq {expect_seq}")
    return Event(seq, at, parts[3], parts[4])


def parse_events(text: str) -> list[Event]:
    """Parse a whole log, enforcing gapless ascending sequence from 1."""
    events = []
    for raw in text.splitlines():
        if not raw.strip():
            continue
        events.append(parse_event(raw, len(events) + 1))
    return events


def read_events(path) -> list[Event]:
    with open(path, encoding="utf-8") as fh:
        return parse_events(fh.read())


class EventWriter:
    """Appends encoded events to an in-memory list and optionally a file."""

    def __init__(self, path=None):
        self.events: list[Event] = []
        self._fh = open(path, "a", encoding="utf-8") if path else None

    @property
    def next_seq(self) -> int:
        return len(self.events) + 1

    def append(self, at: dt.datetime, kind: str, payload: str) -> Event:
        event = Event(self.next_seq, at, kind, payload)
        line = encode_event(event)
        self.events.append(event)
        if self._fh is not None:
            self._fh.write(line + "\n")
            self._fh.flush()
        return event

    def adopt(self, events: list[Event]) -> None:
        """Seed the writer with already-replayed history."""
        self.events = list(events)

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None
