"""Domain exceptions shared across the package."""

from __future__ import annotations


class MaternaError(Exception):
    """Base class for all domain errors."""


# --- geo / selection ---

class NoFacilities(MaternaError):
    """No facility is loaded, so nothing can be selected."""


class NoCapacityAnywhere(MaternaError):
    """Every known facility is at capacity."""


# --- facility dataset ---

class MalformedRow(MaternaError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class DuplicateFacilityId(MaternaError):
    def __init__(self, facility_id: int):
        super().__init__(f"duplicate facility id {facility_id}")
        self.facility_id = facility_id


class CapacityViolation(MaternaError):
    def __init__(self, facility_id: int, registered: int, capacity: int):
        super().__init__(
            f"facility {facility_id}: registered {registered} exceeds capacity {capacity}"
        )
        self.facility_id = facility_id


# --- registration ---

class DuplicatePhone(MaternaError):
    """The phone number is already registered."""


class UnknownWoman(MaternaError):
    """No record exists for the given phone number."""


class NotRegisteredThere(MaternaError):
    """The woman is not assigned to the named facility."""


class BadAge(MaternaError):
    """Age outside the accepted range."""


# --- wire protocol ---

class ParseError(MaternaError):
    def __init__(self, reason: str, offset: int = 0):
        super().__init__(f"{reason} (offset {offset})")
        self.reason = reason
        self.offset = offset


class AdviceTooLong(MaternaError):
    """Advice text exceeds the 250 character message bound."""


# --- reviews and advice ---

class BadNextReview(MaternaError):
    """next_review must be strictly in the future."""


class NoExcuse(MaternaError):
    """Reschedule refused by policy."""


class DateMismatch(MaternaError):
    """Confirmation date does not match the pending review."""


class BadWeek(MaternaError):
    """Gestational week outside [1, 45]."""


# --- dispatch ---

class UnknownOrder(MaternaError):
    """No dispatch order with that id."""


class AlreadyClosed(MaternaError):
    """The dispatch order was closed before."""


class NoVehicleAvailable(MaternaError):
    """No facility holds any rescue vehicle."""


# --- persistence / simulator ---

class CorruptLog(MaternaError):
    def __init__(self, seq: int, reason: str = "gap or unparseable event"):
        super().__init__(f"event {seq}: {reason}")
        self.seq = seq
        self.reason = reason


class BadScenario(MaternaError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason
