"""Facility dataset and woman registration with capacity accounting.

The facility file is UTF-8 text with a required header line
``id,name,zone,lat,lon,registered,capacity,vehicles`` where vehicles is a
``+``-joined subset of CAR/BOAT/HELI (empty allowed). A GeoJSON
FeatureCollection with the same properties and Point geometry is accepted too.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import re
import threading
from dataclasses import dataclass, field, replace
from datetime import date, datetime

from . import geo
from .errors import (
    BadAge,
    CapacityViolation,
    DuplicateFacilityId,
    DuplicatePhone,
    MalformedRow,
    NotRegisteredThere,
    UnknownWoman,
)
from .geo import GeoPoint
from .messages import Assign, Register

PHONE_RE = re.compile(r"^[0-9]{7,15}$")

CSV_HEADER = ["id", "name", "zone", "lat", "lon", "registered", "capacity", "vehicles"]

MIN_AGE = 10
MAX_AGE = 60

MAX_NAME_LEN = 20
MAX_ZONE_LEN = 7


class Vehicle(enum.Enum):
    CAR = "CAR"
    BOAT = "BOAT"
    HELI = "HELI"


class Condition(enum.Enum):
    HYPERTENSION = "Hypertension"
    DIABETES = "Diabetes"
    CARDIAC = "Cardiac"
    ASTHMA = "Asthma"


@dataclass
class Facility:
    """One maternity care centre or hospital row."""

    id: int
    name: str
    zone: str
    location: GeoPoint
    registered_count: int
    capacity: int
    vehicles: frozenset = frozenset()

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"facility id must be positive, got {self.id}")
        if self.capacity < 1:
            raise ValueError(f"capacity must be positive, got {self.capacity}")
        if not 0 <= self.registered_count <= self.capacity:
            raise CapacityViolation(self.id, self.registered_count, self.capacity)

    def vehicles_token(self) -> str:
        return "+".join(sorted(v.value for v in self.vehicles))


@dataclass
class WomanRecord:
    """A registered pregnant woman."""

    phone: str
    id_code: int
    name: str
    age: int
    home_location: GeoPoint
    assigned_facility: int
    registered_at: datetime
    gestation_start: date | None = None
    conditions: frozenset = frozenset()
    active: bool = True


def parse_vehicles(token: str) -> frozenset:
    """Parse a +-joined vehicle subset; empty string means no vehicles."""
    if token == "":
        return frozenset()
    out = set()
    for part in token.split("+"):
        try:
            out.add(Vehicle(part))
        except ValueError:
            raise ValueError(f"unknown vehicle {part!r}") from None
    return frozenset(out)


def _facility_from_fields(line_no: int, fields: dict) -> Facility:
    try:
        fid = int(fields["id"])
        name = fields["name"]
        zone = fields["zone"]
        lat = float(fields["lat"])
        lon = float(fields["lon"])
        registered = int(fields["registered"])
        capacity = int(fields["capacity"])
        vehicles = parse_vehicles(fields["vehicles"])
    except (KeyError, ValueError, TypeError) as exc:
        raise MalformedRow(line_no, str(exc)) from None
    if len(name) > MAX_NAME_LEN:
        raise MalformedRow(line_no, f"name longer than {MAX_NAME_LEN} chars")
    if len(zone) > MAX_ZONE_LEN:
        raise MalformedRow(line_no, f"zone longer than {MAX_ZONE_LEN} chars")
    if "|" in name or "|" in zone:
        raise MalformedRow(line_no, "'|' not allowed in name or zone")
    try:
        location = GeoPoint(lat, lon)
    except ValueError as exc:
        raise MalformedRow(line_no, str(exc)) from None
    try:
        return Facility(fid, name, zone, location, registered, capacity, vehicles)
    except ValueError as exc:
        raise MalformedRow(line_no, str(exc)) from None


def parse_facilities_csv(text: str) -> list[Facility]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return []
    if rows[0] != CSV_HEADER:
        raise MalformedRow(1, f"header must be {','.join(CSV_HEADER)}")
    facilities = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise MalformedRow(line_no, f"expected {len(CSV_HEADER)} fields, got {len(row)}")
        facilities.append(_facility_from_fields(line_no, dict(zip(CSV_HEADER, row))))
    return facilities


def parse_facilities_geojson(text: str) -> list[Facility]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRow(1, f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise MalformedRow(1, "expected a GeoJSON FeatureCollection")
    facilities = []
    for idx, feature in enumerate(doc.get("features", []), start=1):
        geom = feature.get("geometry") or {}
        props = feature.get("properties") or {}
        if geom.get("type") != "Point":
            raise MalformedRow(idx, "feature geometry must be a Point")
        coords = geom.get("coordinates") or []
        if len(coords) < 2:
            raise MalformedRow(idx, "Point needs [lon, lat] coordinates")
        fields = {
            "id": props.get("id"),
            "name": props.get("name", ""),
            "zone": props.get("zone", ""),
            "lat": coords[1],
            "lon": coords[0],
            "registered": props.get("registered"),
            "capacity": props.get("capacity"),
            "vehicles": props.get("vehicles", ""),
        }
        facilities.append(_facility_from_fields(idx, fields))
    return facilities


def parse_facilities(text: str) -> list[Facility]:
    """Dispatch on content: GeoJSON when the payload starts with '{'."""
    if text.lstrip().startswith("{"):
        return parse_facilities_geojson(text)
    return parse_facilities_csv(text)


class Registry:
    """Shared mutable store of facilities and registered women.

    register/release serialize through one lock so concurrent registrations
    can never overbook a facility; reads take the same lock briefly.
    """

    def __init__(self, facilities, id_code_seed: int = 1000):
        self._facilities: dict[int, Facility] = {}
        for fac in facilities:
            if fac.id in self._facilities:
                raise DuplicateFacilityId(fac.id)
            self._facilities[fac.id] = fac
        self._women: dict[str, WomanRecord] = {}
        self._next_id_code = id_code_seed
        self._lock = threading.Lock()

    @classmethod
    def load(cls, path, id_code_seed: int = 1000) -> "Registry":
        with open(path, encoding="utf-8") as fh:
            return cls(parse_facilities(fh.read()), id_code_seed=id_code_seed)

    # --- reads ---

    @property
    def facilities(self) -> list[Facility]:
        with self._lock:
            return list(self._facilities.values())

    def facility(self, facility_id: int) -> Facility:
        with self._lock:
            if facility_id not in self._facilities:
                raise KeyError(facility_id)
            return self._facilities[facility_id]

    def lookup(self, phone: str) -> WomanRecord:
        with self._lock:
            record = self._women.get(phone)
        if record is None:
            raise UnknownWoman(phone)
        return record

    def women(self, active_only: bool = False) -> list[WomanRecord]:
        with self._lock:
            records = list(self._women.values())
        if active_only:
            records = [w for w in records if w.active]
        return records

    def active_count(self) -> int:
        return len(self.women(active_only=True))

    @property
    def next_id_code(self) -> int:
        with self._lock:
            return self._next_id_code

    # --- writes ---

    def register(self, msg: Register, now: datetime):
        """Assign the nearest facility with a free slot and book it.

        Returns (WomanRecord, Assign). Selection and the occupancy increment
        happen under one lock, so capacity holds under concurrency.
        """
        if not MIN_AGE <= msg.age <= MAX_AGE:
            raise BadAge(f"age {msg.age} outside [{MIN_AGE}, {MAX_AGE}]")
        with self._lock:
            if msg.phone in self._women:
                raise DuplicatePhone(msg.phone)
            facility, distance = geo.select_facility(
                msg.location, list(self._facilities.values())
            )
            facility.registered_count += 1
            record = WomanRecord(
                phone=msg.phone,
                id_code=self._next_id_code,
                name=msg.name,
                age=msg.age,
                home_location=msg.location,
                assigned_facility=facility.id,
                registered_at=now,
            )
            self._next_id_code += 1
            self._women[msg.phone] = record
            assign = Assign(msg.phone, facility.id, facility.name, distance)
        return record, assign

    def release_slot(self, facility_id: int, phone: str) -> None:
        """Free the woman's slot and mark her record inactive."""
        with self._lock:
            record = self._women.get(phone)
            if record is None or not record.active:
                raise UnknownWoman(phone)
            if record.assigned_facility != facility_id:
                raise NotRegisteredThere(f"{phone} is not registered at facility {facility_id}")
            facility = self._facilities.get(facility_id)
            if facility is None:
                raise NotRegisteredThere(f"no facility {facility_id}")
            facility.registered_count -= 1
            record.active = False

    def set_conditions(self, phone: str, conditions) -> None:
        with self._lock:
            record = self._women.get(phone)
            if record is None:
                raise UnknownWoman(phone)
            record.conditions = frozenset(conditions)
