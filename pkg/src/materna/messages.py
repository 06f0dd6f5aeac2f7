"""Line protocol for the simulated SMS channel.

One message per line, pipe-delimited UTF-8, no escaping: ``|`` and line
breaks are rejected inside free-text fields, which keeps encode/parse
bijective. Coordinates carry exactly 6 decimals, distances exactly 1.

Inbound::

    REG|<phone>|<lat.6>|<lon.6>|<name>|<age>
    SOS|<phone>|<lat.6>|<lon.6>
    CHG|<phone>|<YYYY-MM-DD>
    CNF|<phone>|<YYYY-MM-DD>

Outbound::

    ASSIGN|<phone>|<facility_id>|<facility_name>|<km.1>
    REMIND|<phone>|<YYYY-MM-DD>
    ADVICE|<phone>|<1|2|3>|<text>
    RESCUE|<phone>|<CAR|BOAT|HELI>|<eta_min>
    ERR|<phone>|<code>
"""

from __future__ import annotations

import datetime as dt
import math
import re
from dataclasses import dataclass

from .errors import AdviceTooLong, ParseError
from .geo import GeoPoint

PHONE_RE = re.compile(r"^[0-9]{7,15}$")
COORD_RE = re.compile(r"^-?(?:0|[1-9][0-9]{0,2})\.[0-9]{6}$")
DATE_RE = re.compile(r"^[0-9]{4}-[0-9]{2}-[0-9]{2}$")
POS_INT_RE = re.compile(r"^[1-9][0-9]*$")
AGE_RE = re.compile(r"^(?:0|[1-9][0-9]{0,2})$")
DISTANCE_RE = re.compile(r"^(?:0|[1-9][0-9]*)\.[0-9]$")

VEHICLE_TOKENS = ("CAR", "BOAT", "HELI")
ERR_CODES = ("DUP", "NOCAP", "UNREG", "BADMSG", "BADAGE", "NOEXCUSE")

MAX_ADVICE_LEN = 250


# --- inbound ---

@dataclass(frozen=True)
class Register:
    phone: str
    location: GeoPoint
    name: str
    age: int


@dataclass(frozen=True)
class Sos:
    phone: str
    location: GeoPoint


@dataclass(frozen=True)
class ChangeReview:
    phone: str
    new_date: dt.date


@dataclass(frozen=True)
class Confirm:
    phone: str
    date: dt.date


# --- outbound ---

@dataclass(frozen=True)
class Assign:
    phone: str
    facility_id: int
    facility_name: str
    distance_km: float


@dataclass(frozen=True)
class Remind:
    phone: str
    review_date: dt.date


@dataclass(frozen=True)
class Advice:
    phone: str
    trimester: int
    text: str


@dataclass(frozen=True)
class Rescue:
    phone: str
    vehicle: str
    eta_min: int


@dataclass(frozen=True)
class Err:
    phone: str
    code: str


InboundMessage = Register | Sos | ChangeReview | Confirm
OutboundMessage = Assign | Remind | Advice | Rescue | Err


def _split(line: str):
    """Line-level checks; returns fields plus the offset of each field."""
    if not isinstance(line, str):
        raise ParseError("message must be text", 0)
    if line == "":
        raise ParseError("empty line", 0)
    for i, ch in enumerate(line):
        if ch in ("\n", "\r"):
            raise ParseError("line break inside message", i)
    if line[0].isspace():
        raise ParseError("leading whitespace", 0)
    if line[-1].isspace():
        raise ParseError("trailing whitespace", len(line) - 1)
    fields = line.split("|")
    offsets = []
    pos = 0
    for f in fields:
        offsets.append(pos)
        pos += len(f) + 1
    return fields, offsets


def _expect(fields, offsets, verb: str, count: int):
    if len(fields) != count:
        raise ParseError(
            f"{verb} expects {count} fields, got {len(fields)}",
            offsets[min(count, len(fields)) - 1],
        )


def _phone(value: str, offset: int) -> str:
    if not PHONE_RE.match(value):
        raise ParseError(f"bad phone {value!r}", offset)
    return value


def _coord(value: str, offset: int, bound: float, what: str) -> float:
    if not COORD_RE.match(value):
        raise ParseError(f"bad {what} {value!r}", offset)
    number = float(value)
    if not -bound <= number <= bound:
        raise ParseError(f"{what} out of range", offset)
    return number


def _date(value: str, offset: int) -> dt.date:
    if not DATE_RE.match(value):
        raise ParseError(f"bad date {value!r}", offset)
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise ParseError(f"bad date {value!r}", offset) from None


def _text(value: str, offset: int, what: str, max_len: int) -> str:
    if value == "":
        raise ParseError(f"empty {what}", offset)
    if len(value) > max_len:
        raise ParseError(f"{what} longer than {max_len} chars", offset)
    return value


def parse_inbound(line: str) -> InboundMessage:
    """Parse one inbound line; raises ParseError on any deviation."""
    fields, offsets = _split(line)
    verb = fields[0]
    if verb == "REG":
        _expect(fields, offsets, "REG", 6)
        phone = _phone(fields[1], offsets[1])
        lat = _coord(fields[2], offsets[2], 90.0, "latitude")
        lon = _coord(fields[3], offsets[3], 180.0, "longitude")
        name = _text(fields[4], offsets[4], "name", 60)
        if not AGE_RE.match(fields[5]):
            raise ParseError(f"bad age {fields[5]!r}", offsets[5])
        return Register(phone, GeoPoint(lat, lon), name, int(fields[5]))
    if verb == "SOS":
        _expect(fields, offsets, "SOS", 4)
        phone = _phone(fields[1], offsets[1])
        lat = _coord(fields[2], offsets[2], 90.0, "latitude")
        lon = _coord(fields[3], offsets[3], 180.0, "longitude")
        return Sos(phone, GeoPoint(lat, lon))
    if verb == "CHG":
        _expect(fields, offsets, "CHG", 3)
        return ChangeReview(_phone(fields[1], offsets[1]), _date(fields[2], offsets[2]))
    if verb == "CNF":
        _expect(fields, offsets, "CNF", 3)
        return Confirm(_phone(fields[1], offsets[1]), _date(fields[2], offsets[2]))
    raise ParseError(f"unknown verb {verb!r}", 0)


def parse_outbound(line: str) -> OutboundMessage:
    """Simulator-side parser for server-to-woman lines."""
    fields, offsets = _split(line)
    verb = fields[0]
    if verb == "ASSIGN":
        _expect(fields, offsets, "ASSIGN", 5)
        phone = _phone(fields[1], offsets[1])
        if not POS_INT_RE.match(fields[2]):
            raise ParseError(f"bad facility id {fields[2]!r}", offsets[2])
        name = _text(fields[3], offsets[3], "facility name", 20)
        if not DISTANCE_RE.match(fields[4]):
            raise ParseError(f"bad distance {fields[4]!r}", offsets[4])
        return Assign(phone, int(fields[2]), name, float(fields[4]))
    if verb == "REMIND":
        _expect(fields, offsets, "REMIND", 3)
        return Remind(_phone(fields[1], offsets[1]), _date(fields[2], offsets[2]))
    if verb == "ADVICE":
        _expect(fields, offsets, "ADVICE", 4)
        phone = _phone(fields[1], offsets[1])
        if fields[2] not in ("1", "2", "3"):
            raise ParseError(f"bad trimester {fields[2]!r}", offsets[2])
        text = _text(fields[3], offsets[3], "advice text", MAX_ADVICE_LEN)
        return Advice(phone, int(fields[2]), text)
    if verb == "RESCUE":
        _expect(fields, offsets, "RESCUE", 4)
        phone = _phone(fields[1], offsets[1])
        if fields[2] not in VEHICLE_TOKENS:
            raise ParseError(f"bad vehicle {fields[2]!r}", offsets[2])
        if not POS_INT_RE.match(fields[3]):
            raise ParseError(f"bad eta {fields[3]!r}", offsets[3])
        return Rescue(phone, fields[2], int(fields[3]))
    if verb == "ERR":
        _expect(fields, offsets, "ERR", 3)
        phone = _phone(fields[1], offsets[1])
        if fields[2] not in ERR_CODES:
            raise ParseError(f"bad error code {fields[2]!r}", offsets[2])
        return Err(phone, fields[2])
    raise ParseError(f"unknown verb {verb!r}", 0)


def _check_phone(phone: str) -> str:
    if not PHONE_RE.match(phone):
        raise ValueError(f"bad phone {phone!r}")
    return phone


def _check_text(value: str, what: str) -> str:
    if value == "" or "|" in value or "\n" in value or "\r" in value:
        raise ValueError(f"{what} must be non-empty without '|' or line breaks")
    return value


def encode_inbound(msg: InboundMessage) -> str:
    """Render an inbound message to its wire line (device side)."""
    if isinstance(msg, Register):
        _check_text(msg.name, "name")
        if not 0 <= msg.age <= 999:
            raise ValueError(f"age {msg.age} not encodable")
        return (
            f"REG|{_check_phone(msg.phone)}|{msg.location.lat_deg:.6f}"
            f"|{msg.location.lon_deg:.6f}|{msg.name}|{msg.age}"
        )
    if isinstance(msg, Sos):
        return (
            f"SOS|{_check_phone(msg.phone)}|{msg.location.lat_deg:.6f}"
            f"|{msg.location.lon_deg:.6f}"
        )
    if isinstance(msg, ChangeReview):
        return f"CHG|{_check_phone(msg.phone)}|{msg.new_date.isoformat()}"
    if isinstance(msg, Confirm):
        return f"CNF|{_check_phone(msg.phone)}|{msg.date.isoformat()}"
    raise TypeError(f"not an inbound message: {msg!r}")


def encode_outbound(msg: OutboundMessage) -> str:
    """Render an outbound message; distance carries exactly 1 decimal."""
    if isinstance(msg, Assign):
        _check_text(msg.facility_name, "facility name")
        if msg.facility_id < 1:
            raise ValueError(f"bad facility id {msg.facility_id}")
        if not math.isfinite(msg.distance_km) or msg.distance_km < 0:
            raise ValueError(f"bad distance {msg.distance_km}")
        return (
            f"ASSIGN|{_check_phone(msg.phone)}|{msg.facility_id}"
            f"|{msg.facility_name}|{msg.distance_km:.1f}"
        )
    if isinstance(msg, Remind):
        return f"REMIND|{_check_phone(msg.phone)}|{msg.review_date.isoformat()}"
    if isinstance(msg, Advice):
        if len(msg.text) > MAX_ADVICE_LEN:
            raise AdviceTooLong(f"advice text is {len(msg.text)} chars, max {MAX_ADVICE_LEN}")
        _check_text(msg.text, "advice text")
        if msg.trimester not in (1, 2, 3):
            raise ValueError(f"bad trimester {msg.trimester}")
        return f"ADVICE|{_check_phone(msg.phone)}|{msg.trimester}|{msg.text}"
    if isinstance(msg, Rescue):
        if msg.vehicle not in VEHICLE_TOKENS:
            raise ValueError(f"bad vehicle {msg.vehicle!r}")
        if msg.eta_min < 1:
            raise ValueError(f"bad eta {msg.eta_min}")
        return f"RESCUE|{_check_phone(msg.phone)}|{msg.vehicle}|{msg.eta_min}"
    if isinstance(msg, Err):
        if msg.code not in ERR_CODES:
            raise ValueError(f"bad error code {msg.code!r}")
        return f"ERR|{_check_phone(msg.phone)}|{msg.code}"
    raise TypeError(f"not an outbound message: {msg!r}")
