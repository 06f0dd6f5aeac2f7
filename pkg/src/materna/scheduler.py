"""Review records, reminder sweeps, reschedule policy, and the advice ledger.

Callers serialize mutations (the service funnels everything through one
lock); the sweep methods assume a single clock driver.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass, field

from .errors import (
    AdviceTooLong,
    BadNextReview,
    BadWeek,
    DateMismatch,
    NoExcuse,
    UnknownWoman,
)
from .geo import GeoPoint
from .messages import MAX_ADVICE_LEN, Advice, ChangeReview, Confirm, Remind

BP_RE = re.compile(r"^[0-9]{2,3}/[0-9]{2,3}$")

# Reschedule policy: one change per review, at most this many days later.
MAX_POSTPONE_DAYS = 14

# Reminder fires when the next review is this many days away.
REMIND_WINDOW_MIN = 3
REMIND_WINDOW_MAX = 7

MAX_GESTATION_WEEK = 45

WHO_VALUES = ("Server", "MD", "Admin")


def trimester_of(gestational_week: int) -> int:
    """Map a gestational week to its trimester (cutoffs after weeks 13 and 27)."""
    if not 1 <= gestational_week <= MAX_GESTATION_WEEK:
        raise BadWeek(f"week {gestational_week} outside [1, {MAX_GESTATION_WEEK}]")
    if gestational_week <= 13:
        return 1
    if gestational_week <= 27:
        return 2
    return 3


@dataclass(frozen=True)
class PrimeInfo:
    """Identity fields auto-copied into every review record."""

    name: str
    age: int
    home_location: GeoPoint
    assigned_facility: int


@dataclass
class ReviewRecord:
    phone: str
    seq: int
    prime_info: PrimeInfo
    review_date: dt.date
    gestational_week: int
    next_review: dt.date
    weight_kg: float | None = None
    blood_pressure: str | None = None
    notes: str | None = None
    confirmed: bool = False
    reminder_sent: bool = False
    reschedules: int = 0


@dataclass
class AdviceRecord:
    id_code: int
    phone: str
    trimester: int
    advice_done: bool
    type_of_advice: str
    who_advisement: str
    message: str

    def __post_init__(self):
        if len(self.message) > MAX_ADVICE_LEN:
            raise AdviceTooLong(f"message is {len(self.message)} chars")
        if self.who_advisement not in WHO_VALUES:
            raise ValueError(f"bad who_advisement {self.who_advisement!r}")
        if self.type_of_advice not in ("Normal", "Other"):
            raise ValueError(f"bad type_of_advice {self.type_of_advice!r}")
        if self.who_advisement == "Server" and self.type_of_advice != "Normal":
            raise ValueError("server advice must be of type Normal")


class CareScheduler:
    """Per-woman review history plus the advice ledger."""

    def __init__(self, registry, advice_templates: dict):
        for trimester in (1, 2, 3):
            text = advice_templates.get(trimester)
            if not text or len(text) > MAX_ADVICE_LEN:
                raise ValueError(f"missing or oversize advice template for trimester {trimester}")
        self.registry = registry
        self.templates = dict(advice_templates)
        self._reviews: dict[str, list[ReviewRecord]] = {}
        self.advice_ledger: list[AdviceRecord] = []
        self._last_advised: dict[str, int] = {}

    # --- care files ---

    def enroll(self, record) -> None:
        """Open the woman's care file at registration time."""
        self._reviews.setdefault(record.phone, [])

    def reviews_of(self, phone: str) -> list[ReviewRecord]:
        return list(self._reviews.get(phone, []))

    def advice_of(self, phone: str) -> list[AdviceRecord]:
        return [a for a in self.advice_ledger if a.phone == phone]

    @property
    def last_advised(self) -> dict:
        return dict(self._last_advised)

    def _pending(self, phone: str) -> ReviewRecord | None:
        history = self._reviews.get(phone)
        return history[-1] if history else None

    # --- MD entry ---

    def record_review(
        self,
        phone: str,
        now: dt.date,
        *,
        gestational_week: int,
        next_review: dt.date,
        weight_kg: float | None = None,
        blood_pressure: str | None = None,
        notes: str | None = None,
        conditions=None,
    ) -> ReviewRecord:
        """Append a review; prime info chains from the previous record."""
        woman = self.registry.lookup(phone)
        trimester_of(gestational_week)  # validates the week
        if next_review <= now:
            raise BadNextReview(f"next review {next_review} is not after {now}")
        if blood_pressure is not None and not BP_RE.match(blood_pressure):
            raise ValueError(f"blood pressure {blood_pressure!r} is not sys/dia")
        history = self._reviews.setdefault(phone, [])
        if history:
            prime = history[-1].prime_info
        else:
            prime = PrimeInfo(woman.name, woman.age, woman.home_location, woman.assigned_facility)
        record = ReviewRecord(
            phone=phone,
            seq=len(history) + 1,
            prime_info=prime,
            review_date=now,
            gestational_week=gestational_week,
            next_review=next_review,
            weight_kg=weight_kg,
            blood_pressure=blood_pressure,
            notes=notes,
        )
        history.append(record)
        if conditions is not None:
            self.registry.set_conditions(phone, conditions)
        return record

    def apply_review(self, record: ReviewRecord, conditions=None) -> None:
        """Install an already-built record (event replay path)."""
        self._reviews.setdefault(record.phone, []).append(record)
        if conditions is not None:
            self.registry.set_conditions(record.phone, conditions)

    # --- reminders ---

    def tick(self, now: dt.date) -> list[Remind]:
        """One reminder per pending unconfirmed review when its date is near.

        Normally fires 3 to 7 days ahead; if ticks were missed, a catch-up
        fires once inside the final 3 days, never after the date passed.
        """
        out = []
        for phone, history in self._reviews.items():
            if not history:
                continue
            woman = self.registry.lookup(phone)
            if not woman.active:
                continue
            latest = history[-1]
            if latest.confirmed or latest.reminder_sent:
                continue
            days_until = (latest.next_review - now).days
            if 0 <= days_until <= REMIND_WINDOW_MAX:
                latest.reminder_sent = True
                out.append(Remind(phone, latest.next_review))
        return out

    def mark_reminder_sent(self, phone: str) -> None:
        latest = self._pending(phone)
        if latest is not None:
            latest.reminder_sent = True

    # --- confirm / reschedule ---

    def reschedule(self, msg: ChangeReview, now: dt.date) -> ReviewRecord:
        self.registry.lookup(msg.phone)
        latest = self._pending(msg.phone)
        if latest is None:
            raise NoExcuse("no pending review to reschedule")
        if latest.reschedules >= 1:
            raise NoExcuse("review was already rescheduled once")
        if msg.new_date > latest.next_review + dt.timedelta(days=MAX_POSTPONE_DAYS):
            raise NoExcuse(f"new date is more than {MAX_POSTPONE_DAYS} days later")
        if msg.new_date <= now:
            raise NoExcuse("new date is not in the future")
        latest.next_review = msg.new_date
        latest.reschedules += 1
        latest.reminder_sent = False
        latest.confirmed = False
        return latest

    def confirm(self, msg: Confirm) -> ReviewRecord:
        self.registry.lookup(msg.phone)
        latest = self._pending(msg.phone)
        if latest is None:
            raise DateMismatch("no pending review to confirm")
        if msg.date != latest.next_review:
            raise DateMismatch(f"pending review is {latest.next_review}, not {msg.date}")
        latest.confirmed = True
        return latest

    # --- advice ---

    def current_week(self, phone: str, today: dt.date) -> int | None:
        """Gestational week extrapolated from the latest review, capped."""
        history = self._reviews.get(phone)
        if not history:
            return None
        latest = history[-1]
        elapsed_weeks = (today - latest.review_date).days // 7
        return min(latest.gestational_week + elapsed_weeks, MAX_GESTATION_WEEK)

    def advice_due(self, now: dt.date) -> list[tuple[Advice, AdviceRecord]]:
        """Server advice once per trimester change; no gestational data, no advice."""
        out = []
        for phone in self._reviews:
            woman = self.registry.lookup(phone)
            if not woman.active:
                continue
            week = self.current_week(phone, now)
            if week is None or week < 1:
                continue
            trimester = trimester_of(week)
            if self._last_advised.get(phone) == trimester:
                continue
            text = self.templates[trimester]
            advice = Advice(phone, trimester, text)
            row = AdviceRecord(
                id_code=woman.id_code,
                phone=phone,
                trimester=trimester,
                advice_done=True,
                type_of_advice="Normal",
                who_advisement="Server",
                message=text,
            )
            self.advice_ledger.append(row)
            self._last_advised[phone] = trimester
            out.append((advice, row))
        return out

    def compose_advice(
        self, who: str, target: str, text: str, now: dt.date
    ) -> list[tuple[Advice, AdviceRecord]]:
        """MD or Admin advice to one phone or broadcast to ALL active women."""
        if who not in ("MD", "Admin"):
            raise ValueError(f"bad sender {who!r}")
        if len(text) > MAX_ADVICE_LEN:
            raise AdviceTooLong(f"advice text is {len(text)} chars, max {MAX_ADVICE_LEN}")
        if text == "" or "|" in text or "\n" in text or "\r" in text:
            raise ValueError("advice text must be non-empty without '|' or line breaks")
        if target == "ALL":
            women = [w for w in self.registry.women() if w.active]
        else:
            women = [self.registry.lookup(target)]
        out = []
        for woman in women:
            week = self.current_week(woman.phone, now)
            trimester = trimester_of(week) if week is not None and week >= 1 else 1
            advice = Advice(woman.phone, trimester, text)
            row = AdviceRecord(
                id_code=woman.id_code,
                phone=woman.phone,
                trimester=trimester,
                advice_done=True,
                type_of_advice="Other",
                who_advisement=who,
                message=text,
            )
            self.advice_ledger.append(row)
            out.append((advice, row))
        return out

    def apply_advice_row(self, origin: str, advice: Advice) -> None:
        """Rebuild one ledger row from a queued ADVICE line (replay path)."""
        woman = self.registry.lookup(advice.phone)
        who = {"SERVER": "Server", "MD": "MD", "ADMIN": "Admin"}[origin]
        row = AdviceRecord(
            id_code=woman.id_code,
            phone=advice.phone,
            trimester=advice.trimester,
            advice_done=True,
            type_of_advice="Normal" if who == "Server" else "Other",
            who_advisement=who,
            message=advice.text,
        )
        self.advice_ledger.append(row)
        if who == "Server":
            self._last_advised[advice.phone] = advice.trimester
