from __future__ import annotations

import datetime as dt

import pytest
import requests

from materna.httpapi import serve_in_thread

from conftest import REG_LINE, make_service


@pytest.fixture
def api():
    service = make_service()
    server, base = serve_in_thread(service)
    yield service, base
    server.shutdown()


def post_line(base, line):
    return requests.post(f"{base}/gateway/inbound", data=line.encode("utf-8"), timeout=5)


class TestGateway:
    def test_register_then_outbox(self, api):
        service, base = api
        r = post_line(base, REG_LINE)
        assert r.status_code == 200 and r.json() == {"queued": 1}
        out = requests.get(f"{base}/outbox", params={"max": 5}, timeout=5).json()
        assert out["lines"] == ["ASSIGN|07504432147|3|Maternity Hospital|3.7"]
        # drained means gone
        again = requests.get(f"{base}/outbox", params={"max": 5}, timeout=5).json()
        assert again["lines"] == []

    def test_women_listing_and_detail(self, api):
        _, base = api
        post_line(base, REG_LINE)
        women = requests.get(f"{base}/women", timeout=5).json()
        assert [w["phone"] for w in women] == ["07504432147"]
        detail = requests.get(f"{base}/women/07504432147", timeout=5).json()
        assert detail["woman"]["name"] == "Sara"
        assert detail["reviews"] == [] and detail["advice"] == []

    def test_unknown_woman_404(self, api):
        _, base = api
        r = requests.get(f"{base}/women/9999999", timeout=5)
        assert r.status_code == 404
        assert r.json()["error"] == "UnknownWoman"


class TestReviewEndpoint:
    def test_review_round_trip(self, api):
        service, base = api
        post_line(base, REG_LINE)
        body = {
            "gestational_week": 12,
            "next_review": (service.now.date() + dt.timedelta(days=25)).isoformat(),
            "weight_kg": 63.0,
            "blood_pressure": "117/74",
            "notes": "normal visit",
            "conditions": ["Hypertension"],
        }
        r = requests.post(f"{base}/reviews/07504432147", json=body, timeout=5)
        assert r.status_code == 200
        record = r.json()
        assert record["seq"] == 1
        assert record["prime_info"]["name"] == "Sara"
        detail = requests.get(f"{base}/women/07504432147", timeout=5).json()
        assert len(detail["reviews"]) == 1
        assert detail["woman"]["conditions"] == ["Hypertension"]

    def test_past_next_review_rejected(self, api):
        service, base = api
        post_line(base, REG_LINE)
        body = {"gestational_week": 12, "next_review": service.now.date().isoformat()}
        r = requests.post(f"{base}/reviews/07504432147", json=body, timeout=5)
        assert r.status_code == 400
        assert r.json()["error"] == "BadNextReview"


class TestAdviceEndpoint:
    def test_compose_and_history(self, api):
        _, base = api
        post_line(base, REG_LINE)
        r = requests.post(
            f"{base}/advice",
            json={"who": "Admin", "target": "ALL", "text": "Visit day moved"},
            timeout=5,
        )
        assert r.json() == {"sent": 1}
        ledger = requests.get(f"{base}/advice", timeout=5).json()
        assert [row["who_advisement"] for row in ledger] == ["Admin"]

    def test_oversize_advice_rejected_with_400(self, api):
        _, base = api
        post_line(base, REG_LINE)
        r = requests.post(
            f"{base}/advice",
            json={"who": "MD", "target": "07504432147", "text": "x" * 251},
            timeout=5,
        )
        assert r.status_code == 400
        assert r.json()["error"] == "AdviceTooLong"


class TestDispatchEndpoint:
    def test_board_and_close(self, api):
        _, base = api
        post_line(base, REG_LINE)
        post_line(base, "SOS|07504432147|36.190000|44.010000")
        board = requests.get(f"{base}/dispatch", timeout=5).json()
        assert len(board) == 1 and board[0]["status"] == "Open"
        oid = board[0]["order_id"]
        r = requests.post(f"{base}/dispatch/{oid}/close", json={"outcome": "safe"}, timeout=5)
        assert r.json()["status"] == "Closed"
        r2 = requests.post(f"{base}/dispatch/{oid}/close", json={"outcome": "again"}, timeout=5)
        assert r2.status_code == 409
        assert r2.json()["error"] == "AlreadyClosed"


class TestClockAndMap:
    def test_tick_advances_and_sweeps(self, api):
        service, base = api
        post_line(base, REG_LINE)
        requests.post(
            f"{base}/reviews/07504432147",
            json={
                "gestational_week": 10,
                "next_review": (service.now.date() + dt.timedelta(days=15)).isoformat(),
            },
            timeout=5,
        )
        r = requests.post(f"{base}/clock/tick", json={"advance_minutes": 10 * 24 * 60}, timeout=5)
        assert r.status_code == 200
        out = requests.get(f"{base}/outbox", params={"max": 50}, timeout=5).json()["lines"]
        assert any(line.startswith("REMIND|") for line in out)

    def test_facilities_geojson(self, api):
        _, base = api
        doc = requests.get(f"{base}/facilities.geojson", timeout=5).json()
        assert doc["type"] == "FeatureCollection"
        assert len(doc["features"]) == 3
        names = {f["properties"]["name"] for f in doc["features"]}
        assert "Maternity Hospital" in names

    def test_unknown_route_404(self, api):
        _, base = api
        assert requests.get(f"{base}/nope", timeout=5).status_code == 404
