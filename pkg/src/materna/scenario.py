"""Deterministic scripted scenarios for the device simulator.

Grammar, one step per line (minutes are non-decreasing offsets from the
virtual start; blank lines and # comments allowed)::

    @<minutes> <raw inbound line>
    @<minutes> TICK
    @<minutes> GENREG <count> <lat> <lon> <radius_km>
    @<minutes> GENSOS <count>
    @<minutes> GENREVIEW <count> <min_days_ahead> <max_days_ahead>

The GEN steps synthesize traffic from the seeded RNG, which is what makes a
report reproducible byte for byte for a fixed seed.
"""

from __future__ import annotations

import datetime as dt
import math
import random
from dataclasses import dataclass

from .errors import BadScenario
from .eventlog import Event
from .geo import GeoPoint
from .messages import (
    Advice,
    Assign,
    Err,
    Register,
    Remind,
    Rescue,
    Sos,
    encode_inbound,
    parse_outbound,
)

_DEG_PER_KM_LAT = 180.0 / (math.pi * 6371.0088)

_NAME_HEADS = ("Sa", "Nu", "Da", "La", "Mi", "Ro", "He", "Zi", "Ka", "Be")
_NAME_TAILS = ("ra", "la", "rin", "na", "ya", "sa", "van", "dia", "mar", "lin")


@dataclass(frozen=True)
class Step:
    line_no: int
    minutes: int
    kind: str  # LINE | TICK | GENREG | GENSOS | GENREVIEW
    args: tuple


def parse_scenario(text: str) -> list[Step]:
    steps: list[Step] = []
    last_minutes = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not raw.startswith("@"):
            raise BadScenario(line_no, "step must start with @<minutes>")
        head, _, rest = raw.partition(" ")
        if not head[1:].isdigit():
            raise BadScenario(line_no, f"bad minutes {head[1:]!r}")
        minutes = int(head[1:])
        if minutes < last_minutes:
            raise BadScenario(line_no, "minutes must not decrease")
        last_minutes = minutes
        if not rest:
            raise BadScenario(line_no, "missing step body")
        steps.append(_parse_body(line_no, minutes, rest))
    return steps


def _parse_body(line_no: int, minutes: int, body: str) -> Step:
    token = body.split(" ", 1)[0]
    if token == "TICK":
        if body != "TICK":
            raise BadScenario(line_no, "TICK takes no arguments")
        return Step(line_no, minutes, "TICK", ())
    if token == "GENREG":
        parts = body.split()
        if len(parts) != 5:
            raise BadScenario(line_no, "GENREG needs: count lat lon radius_km")
        try:
            count = int(parts[1])
            center = GeoPoint(float(parts[2]), float(parts[3]))
            radius = float(parts[4])
        except ValueError as exc:
            raise BadScenario(line_no, str(exc)) from None
        if count < 1 or radius < 0:
            raise BadScenario(line_no, "GENREG needs count >= 1 and radius >= 0")
        return Step(line_no, minutes, "GENREG", (count, center, radius))
    if token == "GENSOS":
        parts = body.split()
        if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
            raise BadScenario(line_no, "GENSOS needs a positive count")
        return Step(line_no, minutes, "GENSOS", (int(parts[1]),))
    if token == "GENREVIEW":
        parts = body.split()
        if len(parts) != 4:
            raise BadScenario(line_no, "GENREVIEW needs: count min_days max_days")
        try:
            count, lo, hi = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError as exc:
            raise BadScenario(line_no, str(exc)) from None
        if count < 1 or lo < 1 or hi < lo:
            raise BadScenario(line_no, "GENREVIEW needs count >= 1 and 1 <= min <= max")
        return Step(line_no, minutes, "GENREVIEW", (count, lo, hi))
    # anything else is a raw inbound line, malformed ones included on purpose
    return Step(line_no, minutes, "LINE", (body,))


class TrafficGenerator:
    """Seeded synthesis of women, registrations, and SOS calls."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self._used_phones: set[str] = set()

    def phone(self) -> str:
        while True:
            candidate = f"07{self.rng.randrange(10**8):08d}"
            if candidate not in self._used_phones:
                self._used_phones.add(candidate)
                return candidate

    def name(self) -> str:
        return self.rng.choice(_NAME_HEADS) + self.rng.choice(_NAME_TAILS)

    def point_near(self, center: GeoPoint, radius_km: float) -> GeoPoint:
        dlat = self.rng.uniform(-radius_km, radius_km) * _DEG_PER_KM_LAT
        scale = _DEG_PER_KM_LAT / max(0.1, math.cos(math.radians(center.lat_deg)))
        dlon = self.rng.uniform(-radius_km, radius_km) * scale
        lat = min(90.0, max(-90.0, center.lat_deg + dlat))
        lon = min(180.0, max(-180.0, center.lon_deg + dlon))
        return GeoPoint(lat, lon)

    def register_line(self, center: GeoPoint, radius_km: float) -> str:
        msg = Register(self.phone(), self.point_near(center, radius_km),
                       self.name(), self.rng.randint(16, 45))
        return encode_inbound(msg)

    def sos_line(self, woman) -> str:
        return encode_inbound(Sos(woman.phone, self.point_near(woman.home_location, 2.0)))


def run_scenario(service, steps: list[Step], seed: int) -> None:
    """Drive the service through the steps; state lands in its event log."""
    gen = TrafficGenerator(seed)
    start = service.now
    for step in steps:
        when = start + dt.timedelta(minutes=step.minutes)
        if when > service.now:
            service.advance_to(when)
        try:
            _execute(service, gen, step)
        except Exception as exc:  # surface which step broke
            raise BadScenario(step.line_no, f"{type(exc).__name__}: {exc}") from exc


def _execute(service, gen: TrafficGenerator, step: Step) -> None:
    if step.kind == "LINE":
        service.ingest(step.args[0])
    elif step.kind == "TICK":
        service.run_sweep()
    elif step.kind == "GENREG":
        count, center, radius = step.args
        for _ in range(count):
            service.ingest(gen.register_line(center, radius))
    elif step.kind == "GENSOS":
        women = service.registry.women(active_only=True)
        if not women:
            return
        for _ in range(step.args[0]):
            service.ingest(gen.sos_line(gen.rng.choice(women)))
    elif step.kind == "GENREVIEW":
        count, lo, hi = step.args
        women = service.registry.women(active_only=True)
        if not women:
            return
        today = service.now.date()
        for woman in gen.rng.sample(women, min(count, len(women))):
            service.record_review(
                woman.phone,
                gestational_week=gen.rng.randint(4, 40),
                next_review=today + dt.timedelta(days=gen.rng.randint(lo, hi)),
            )


REPORT_FIELDS = (
    "registrations_ok",
    "registrations_rejected",
    "reminders_sent",
    "advice_t1",
    "advice_t2",
    "advice_t3",
    "sos_orders",
    "vehicle_car",
    "vehicle_boat",
    "vehicle_heli",
    "errors_out",
    "dead_letters",
    "messages_in",
    "messages_out",
    "messages_total",
)


def summarize_events(events: list[Event]) -> dict:
    """Fold the event stream into the report counters."""
    counters = {field: 0 for field in REPORT_FIELDS}
    reg_attempts = 0
    for event in events:
        if event.kind == "InboundAccepted":
            counters["messages_in"] += 1
            if event.payload.startswith("REG|"):
                reg_attempts += 1
        elif event.kind == "InboundRejected":
            counters["messages_in"] += 1
            counters["dead_letters"] += 1
        elif event.kind == "OrderOpened":
            counters["sos_orders"] += 1
        elif event.kind == "OutboundQueued":
            counters["messages_out"] += 1
            _count_outbound(counters, event.payload.partition("|")[2])
    counters["registrations_rejected"] = reg_attempts - counters["registrations_ok"]
    counters["messages_total"] = counters["messages_in"] + counters["messages_out"]
    return counters


def _count_outbound(counters: dict, line: str) -> None:
    msg = parse_outbound(line)
    if isinstance(msg, Assign):
        counters["registrations_ok"] += 1
    elif isinstance(msg, Remind):
        counters["reminders_sent"] += 1
    elif isinstance(msg, Advice):
        counters[f"advice_t{msg.trimester}"] += 1
    elif isinstance(msg, Rescue):
        counters[f"vehicle_{msg.vehicle.lower()}"] += 1
    elif isinstance(msg, Err):
        counters["errors_out"] += 1


def render_report(counters: dict) -> str:
    return "".join(f"{field}={counters[field]}\n" for field in REPORT_FIELDS)
