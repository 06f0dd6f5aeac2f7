"""Acceptance suite: one test per release criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion. Every tolerance and time budget is pinned here.
"""

from __future__ import annotations

import datetime as dt
import random
import time
from concurrent.futures import ThreadPoolExecutor

import pytest

from materna.cli import main as cli_main
from materna.config import ServiceConfig
from materna.errors import ParseError
from materna.eventlog import encode_event, parse_events, read_events
from materna.geo import GeoPoint, haversine_km, select_facility
from materna.messages import (
    Advice,
    Assign,
    ChangeReview,
    Confirm,
    Err,
    Register,
    Remind,
    Rescue,
    Sos,
    encode_inbound,
    encode_outbound,
    parse_inbound,
    parse_outbound,
)
from materna.registry import Facility, Registry
from materna.service import MaternaService

from conftest import SOURCE, demo_facilities, make_service
from oracles import brute_nearest_under_capacity

DAY = dt.timedelta(days=1)


def _pass(name: str, note: str = ""):
    suffix = f" ({note})" if note else ""
    print(f"PASS {name}{suffix}")


def budget(started: float, limit_s: float):
    elapsed = time.perf_counter() - started
    assert elapsed < limit_s, f"took {elapsed:.2f}s, budget {limit_s}s"
    return elapsed


def test_worked_example_selects_maternity_hospital():
    """Nearest centre is full, so the free one at ~3.7 km is chosen."""
    started = time.perf_counter()
    facilities = demo_facilities()
    chosen, distance = select_facility(SOURCE, facilities)
    assert chosen.name == "Maternity Hospital"
    assert distance == pytest.approx(3.7, rel=0.05)
    by_id = {f.id: haversine_km(SOURCE, f.location) for f in facilities}
    assert by_id[1] == pytest.approx(0.5, rel=0.05)
    assert by_id[3] == pytest.approx(3.7, rel=0.05)
    assert by_id[2] == pytest.approx(6.5, rel=0.05)
    elapsed = budget(started, 1.0)
    _pass("worked-example selection", f"{elapsed:.3f}s")


def test_selection_matches_bruteforce_oracle_on_1000_instances():
    started = time.perf_counter()
    rng = random.Random(424242)
    matches = 0
    for _ in range(1000):
        n = rng.randint(1, 200)
        facilities = []
        for i in range(1, n + 1):
            capacity = rng.randint(1, 30)
            facilities.append(
                Facility(
                    i, f"F{i}", "Z",
                    GeoPoint(rng.uniform(-89, 89), rng.uniform(-179, 179)),
                    rng.randint(0, capacity), capacity,
                )
            )
        source = GeoPoint(rng.uniform(-89, 89), rng.uniform(-179, 179))
        expected = brute_nearest_under_capacity(source, facilities)
        if expected is None:
            with pytest.raises(Exception):
                select_facility(source, facilities)
            matches += 1
        else:
            chosen, _ = select_facility(source, facilities)
            assert chosen.id == expected.id
            matches += 1
    assert matches == 1000
    elapsed = budget(started, 10.0)
    _pass("selection oracle equivalence", f"1000/1000 in {elapsed:.2f}s")


def test_capacity_is_linearizable_under_concurrent_registration():
    started = time.perf_counter()
    rng = random.Random(7)
    for trial in range(50):
        service = make_service(
            facilities=[Facility(1, "Only", "Z", GeoPoint(0, 0), 0, 10)]
        )
        phones = [f"07{trial:02d}{i:06d}" for i in range(100)]
        rng.shuffle(phones)

        def attempt(phone):
            time.sleep(rng.random() / 2000.0)
            return service.ingest(f"REG|{phone}|0.000000|0.000000|W|25")

        with ThreadPoolExecutor(max_workers=20) as pool:
            results = list(pool.map(attempt, phones))
        flat = [m for out in results for m in out]
        assigns = [m for m in flat if isinstance(m, Assign)]
        nocaps = [m for m in flat if isinstance(m, Err) and m.code == "NOCAP"]
        assert len(assigns) == 10, f"trial {trial}: {len(assigns)} assigns"
        assert len(nocaps) == 90, f"trial {trial}: {len(nocaps)} rejections"
        assert service.registry.facility(1).registered_count == 10
    elapsed = budget(started, 30.0)
    _pass("capacity linearizability", f"50 trials in {elapsed:.2f}s")


def test_reminder_window_over_60_day_sweep():
    started = time.perf_counter()
    rng = random.Random(1999)
    service = make_service(
        facilities=[Facility(1, "Big", "Z", GeoPoint(0, 0), 0, 1000)]
    )
    phones = [f"075{i:07d}" for i in range(500)]
    record_day = {p: rng.randint(0, 20) for p in phones}
    horizon = {}
    for phone in phones:
        service.ingest(f"REG|{phone}|0.000000|0.000000|W|25")
    service.drain_outbox(10_000)
    start_date = service.now.date()
    fired: dict[str, int] = {}
    for offset in range(60):
        if offset:
            service.advance_to(service.now + DAY)
        today = service.now.date()
        for phone in phones:
            if record_day[phone] == offset:
                ahead = rng.randint(8, 35)
                horizon[phone] = today + dt.timedelta(days=ahead)
                service.record_review(phone, gestational_week=rng.randint(4, 40),
                                      next_review=horizon[phone])
        service.run_sweep()
        for line in service.drain_outbox(10_000):
            msg = parse_outbound(line)
            if isinstance(msg, Remind):
                assert msg.phone not in fired, f"{msg.phone} reminded twice"
                fired[msg.phone] = (msg.review_date - today).days
    assert set(fired) == set(phones), "every review reminded exactly once"
    assert all(0 <= d <= 7 for d in fired.values())
    assert all(3 <= d <= 7 for d in fired.values()), "no downtime, so the 3-7 window holds"
    elapsed = budget(started, 10.0)
    _pass("reminder window sweep", f"500 reviews in {elapsed:.2f}s")


def _random_message(rng: random.Random):
    phone = f"{rng.randrange(10**7, 10**15)}"
    lat = rng.randrange(-90_000_000, 90_000_001) / 1e6
    lon = rng.randrange(-180_000_000, 180_000_001) / 1e6
    day = dt.date(2012, 1, 1) + dt.timedelta(days=rng.randrange(0, 3650))
    name = "".join(rng.choice("abcdefgh ijklmnop") for _ in range(rng.randint(1, 12))).strip() or "w"
    text = "".join(rng.choice("abc def!?") for _ in range(rng.randint(1, 250))).strip() or "x"
    kind = rng.randrange(9)
    if kind == 0:
        return Register(phone, GeoPoint(lat, lon), name, rng.randint(0, 99))
    if kind == 1:
        return Sos(phone, GeoPoint(lat, lon))
    if kind == 2:
        return ChangeReview(phone, day)
    if kind == 3:
        return Confirm(phone, day)
    if kind == 4:
        return Assign(phone, rng.randint(1, 9999), name.replace("|", " ") or "f", rng.randrange(0, 100000) / 10.0)
    if kind == 5:
        return Remind(phone, day)
    if kind == 6:
        return Advice(phone, rng.randint(1, 3), text)
    if kind == 7:
        return Rescue(phone, rng.choice(["CAR", "BOAT", "HELI"]), rng.randint(1, 600))
    return Err(phone, rng.choice(["DUP", "NOCAP", "UNREG", "BADMSG", "BADAGE", "NOEXCUSE"]))


def test_protocol_round_trip_and_fuzz():
    started = time.perf_counter()
    rng = random.Random(160)
    inbound_types = (Register, Sos, ChangeReview, Confirm)
    for _ in range(10_000):
        msg = _random_message(rng)
        if isinstance(msg, inbound_types):
            line = encode_inbound(msg)
            assert parse_inbound(line) == msg
            assert encode_inbound(parse_inbound(line)) == line
        else:
            line = encode_outbound(msg)
            assert parse_outbound(line) == msg
            assert encode_outbound(parse_outbound(line)) == line

    survived = 0
    for i in range(100_000):
        random_bytes = i % 10 < 7
        if random_bytes:
            blob = bytes(rng.randrange(256) for _ in range(rng.randint(0, 40)))
            line = blob.decode("latin-1")
        else:
            victim = _random_message(rng)
            base = encode_inbound(victim) if isinstance(victim, inbound_types) else encode_outbound(victim)
            cut = rng.randrange(len(base))
            line = base[:cut] + chr(rng.randrange(256)) + base[cut + 1:]
        try:
            parse_inbound(line)
            # a one-byte mutation may still be grammatical; raw noise never is
            assert not random_bytes, f"random bytes parsed: {line!r}"
        except ParseError:
            pass
        survived += 1
    assert survived == 100_000
    elapsed = budget(started, 30.0)
    _pass("protocol round-trip and fuzz", f"10k round trips, 100k fuzz lines in {elapsed:.2f}s")


def test_duplicate_registration_always_rejected():
    service = make_service()
    first = service.ingest("REG|07504432147|36.190000|44.010000|Sara|27")
    assert isinstance(first[0], Assign)
    occupancy = {f.id: f.registered_count for f in service.registry.facilities}
    for _ in range(5):
        again = service.ingest("REG|07504432147|36.190000|44.010000|Sara|27")
        assert again == [Err("07504432147", "DUP")]
        assert {f.id: f.registered_count for f in service.registry.facilities} == occupancy
    _pass("duplicate rejection")


def test_advice_lifecycle_over_40_weeks():
    service = make_service()
    service.ingest("REG|07504432147|36.190000|44.010000|Sara|27")
    service.record_review(
        "07504432147", gestational_week=1,
        next_review=service.now.date() + dt.timedelta(days=290),
    )
    advice_lines = []
    for week in range(41):
        if week:
            service.advance_to(service.now + 7 * DAY)
        service.run_sweep()
        advice_lines.extend(
            line for line in service.drain_outbox(100) if line.startswith("ADVICE|")
        )
    parsed = [parse_outbound(line) for line in advice_lines]
    assert [m.trimester for m in parsed] == [1, 2, 3]
    ledger = service.scheduler.advice_ledger
    assert len(ledger) == 3
    assert [row.trimester for row in ledger] == [1, 2, 3]
    for row in ledger:
        assert row.who_advisement == "Server"
        assert row.type_of_advice == "Normal"
        assert row.advice_done is True
        assert len(row.message) <= 250
    _pass("advice lifecycle", "3 server advices, trimesters 1-2-3")


def _write_population_inputs(tmp_path, weeks=40, women=1000):
    rng = random.Random(11)
    rows = ["id,name,zone,lat,lon,registered,capacity,vehicles"]
    vehicle_mix = ["CAR", "CAR+HELI", "CAR+BOAT", "CAR", "CAR+HELI"]
    for i in range(1, 21):
        lat = 36.10 + rng.random() * 0.2
        lon = 43.90 + rng.random() * 0.2
        zone = "W-RIV" if i % 7 == 0 else f"Z{i:02d}"
        rows.append(
            f"{i},Centre {i},{zone},{lat:.6f},{lon:.6f},0,{rng.randint(60, 80)},{vehicle_mix[i % 5]}"
        )
    facilities = tmp_path / "city.csv"
    facilities.write_text("\n".join(rows) + "\n")

    steps = [f"@0 GENREG {women} 36.190000 44.010000 12"]
    steps.append(f"@30 GENREVIEW {int(women * 0.7)} 10 40")
    for day in range(1, weeks * 7 + 1):
        steps.append(f"@{day * 1440} TICK")
        if day == 30:
            steps.append(f"@{day * 1440 + 1} GENSOS 40")
        if day == 60:
            steps.append(f"@{day * 1440 + 2} GENREVIEW {int(women * 0.4)} 10 40")
    scenario = tmp_path / "population.scn"
    scenario.write_text("\n".join(steps) + "\n")
    return facilities, scenario


def test_determinism_and_replay(tmp_path):
    started = time.perf_counter()
    facilities, scenario = _write_population_inputs(tmp_path)

    reports = []
    for run in ("one", "two"):
        out = tmp_path / f"report_{run}.txt"
        code = cli_main([
            "scenario", str(scenario), "--seed", "2012",
            "--facilities", str(facilities), "--out", str(out),
        ])
        assert code == 0
        reports.append(out.read_text())
    assert reports[0] == reports[1], "fixed-seed runs must be byte-identical"
    log_one = (tmp_path / "report_one.txt.events").read_text()
    log_two = (tmp_path / "report_two.txt.events").read_text()
    assert log_one == log_two

    # replay the log into a fresh service and compare observable state
    config = ServiceConfig(facilities_path=str(facilities))
    live = MaternaService.from_config(config)
    from materna.scenario import parse_scenario, run_scenario

    run_scenario(live, parse_scenario(scenario.read_text()), 2012)
    events = parse_events("\n".join(encode_event(e) for e in live.events))
    assert [encode_event(e) for e in events] == log_one.splitlines()
    restored = MaternaService.restore(config, events)
    assert restored.snapshot() == live.snapshot()
    elapsed = budget(started, 120.0)
    _pass("determinism and replay", f"{len(events)} events in {elapsed:.2f}s")
