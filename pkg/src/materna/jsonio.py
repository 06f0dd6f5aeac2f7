"""JSON mirrors of the domain records, used by the API and the event log.

Dates and datetimes serialize as ISO-8601 strings; enum sets serialize as
sorted value lists so output is byte-stable.
"""

from __future__ import annotations

import datetime as dt
import json

from .dispatch import DispatchOrder
from .geo import GeoPoint
from .registry import Condition, Facility, Vehicle, WomanRecord
from .scheduler import AdviceRecord, PrimeInfo, ReviewRecord


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def geopoint_to_dict(p: GeoPoint) -> dict:
    return {"lat_deg": p.lat_deg, "lon_deg": p.lon_deg}


def geopoint_from_dict(d: dict) -> GeoPoint:
    return GeoPoint(d["lat_deg"], d["lon_deg"])


def facility_to_dict(f: Facility) -> dict:
    return {
        "id": f.id,
        "name": f.name,
        "zone": f.zone,
        "location": geopoint_to_dict(f.location),
        "registered_count": f.registered_count,
        "capacity": f.capacity,
        "vehicles": sorted(v.value for v in f.vehicles),
    }


def woman_to_dict(w: WomanRecord) -> dict:
    return {
        "phone": w.phone,
        "id_code": w.id_code,
        "name": w.name,
        "age": w.age,
        "home_location": geopoint_to_dict(w.home_location),
        "assigned_facility": w.assigned_facility,
        "registered_at": w.registered_at.isoformat(),
        "gestation_start": w.gestation_start.isoformat() if w.gestation_start else None,
        "conditions": sorted(c.value for c in w.conditions),
        "active": w.active,
    }


def review_to_dict(r: ReviewRecord) -> dict:
    return {
        "phone": r.phone,
        "seq": r.seq,
        "prime_info": {
            "name": r.prime_info.name,
            "age": r.prime_info.age,
            "home_location": geopoint_to_dict(r.prime_info.home_location),
            "assigned_facility": r.prime_info.assigned_facility,
        },
        "review_date": r.review_date.isoformat(),
        "gestational_week": r.gestational_week,
        "weight_kg": r.weight_kg,
        "blood_pressure": r.blood_pressure,
        "notes": r.notes,
        "next_review": r.next_review.isoformat(),
        "confirmed": r.confirmed,
        "reminder_sent": r.reminder_sent,
        "reschedules": r.reschedules,
    }


def review_from_dict(d: dict) -> ReviewRecord:
    prime = d["prime_info"]
    return ReviewRecord(
        phone=d["phone"],
        seq=d["seq"],
        prime_info=PrimeInfo(
            name=prime["name"],
            age=prime["age"],
            home_location=geopoint_from_dict(prime["home_location"]),
            assigned_facility=prime["assigned_facility"],
        ),
        review_date=dt.date.fromisoformat(d["review_date"]),
        gestational_week=d["gestational_week"],
        next_review=dt.date.fromisoformat(d["next_review"]),
        weight_kg=d["weight_kg"],
        blood_pressure=d["blood_pressure"],
        notes=d["notes"],
        confirmed=d["confirmed"],
        reminder_sent=d["reminder_sent"],
        reschedules=d["reschedules"],
    )


def advice_to_dict(a: AdviceRecord) -> dict:
    return {
        "id_code": a.id_code,
        "phone": a.phone,
        "trimester": a.trimester,
        "advice_done": a.advice_done,
        "type_of_advice": a.type_of_advice,
        "who_advisement": a.who_advisement,
        "message": a.message,
    }


def order_to_dict(o: DispatchOrder) -> dict:
    return {
        "order_id": o.order_id,
        "phone": o.phone,
        "location": geopoint_to_dict(o.location),
        "origin_facility": o.origin_facility,
        "vehicle": o.vehicle.value,
        "kit": o.kit,
        "distance_km": o.distance_km,
        "created_at": o.created_at.isoformat(),
        "status": o.status,
        "outcome": o.outcome,
    }


def order_from_dict(d: dict) -> DispatchOrder:
    return DispatchOrder(
        order_id=d["order_id"],
        phone=d["phone"],
        location=geopoint_from_dict(d["location"]),
        origin_facility=d["origin_facility"],
        vehicle=Vehicle(d["vehicle"]),
        kit=d["kit"],
        distance_km=d["distance_km"],
        created_at=dt.datetime.fromisoformat(d["created_at"]),
        status=d["status"],
        outcome=d["outcome"],
    )


def conditions_from_values(values) -> frozenset:
    return frozenset(Condition(v) for v in values)


def facilities_geojson(facilities) -> dict:
    """FeatureCollection export for map display; round-trips through the loader."""
    features = []
    for f in facilities:
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "Point",
                    "coordinates": [f.location.lon_deg, f.location.lat_deg],
                },
                "properties": {
                    "id": f.id,
                    "name": f.name,
                    "zone": f.zone,
                    "registered": f.registered_count,
                    "capacity": f.capacity,
                    "vehicles": f.vehicles_token(),
                },
            }
        )
    return {"type": "FeatureCollection", "features": features}
