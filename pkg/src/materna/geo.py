"""Great-circle geometry and capacity-aware facility selection.

Distances are plain floats in kilometers, always non-negative. Facility
arguments are duck-typed: anything with ``id``, ``location``,
``registered_count`` and ``capacity`` attributes works (see registry.Facility).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoCapacityAnywhere, NoFacilities

# Mean Earth radius, kilometers.
EARTH_RADIUS_KM = 6371.0088


@dataclass(frozen=True)
class GeoPoint:
    """A position in decimal degrees. Out-of-range values are rejected."""

    lat_deg: float
    lon_deg: float

    def __post_init__(self):
        lat, lon = self.lat_deg, self.lon_deg
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise ValueError(f"coordinates must be finite, got ({lat}, {lon})")
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {lat} outside [-90, 90]")
        if not -180.0 <= lon <= 180.0:
            raise ValueError(f"longitude {lon} outside [-180, 180]")


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points, in kilometers.

    Symmetric and zero for identical points.
    """
    phi1 = math.radians(a.lat_deg)
    phi2 = math.radians(b.lat_deg)
    dphi = math.radians(b.lat_deg - a.lat_deg)
    dlam = math.radians(b.lon_deg - a.lon_deg)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    # clamp guards rounding just above 1.0 for near-antipodal pairs
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def rank_by_distance(source: GeoPoint, facilities) -> list:
    """All facilities ordered by ascending distance, ties by ascending id.

    Returns a list of (facility, distance_km) pairs.
    """
    ranked = sorted(
        ((haversine_km(source, f.location), f.id, f) for f in facilities),
        key=lambda t: (t[0], t[1]),
    )
    return [(f, d) for d, _id, f in ranked]


def k_nearest(source: GeoPoint, facilities, k: int) -> list:
    """The min(k, n) closest facilities with their distances, ascending."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not facilities:
        raise NoFacilities("no facilities loaded")
    return rank_by_distance(source, facilities)[:k]


def select_facility(source: GeoPoint, facilities, shortlist_k: int = 3):
    """Pick the closest facility that still has a free slot.

    The shortlist_k nearest facilities are checked first; when all of them
    are full the search widens over the remaining facilities in ascending
    distance so a registrant is never stranded while a slot exists anywhere.
    Occupancy is not mutated here.
    """
    if not facilities:
        raise NoFacilities("no facilities loaded")
    ranked = rank_by_distance(source, facilities)
    for facility, distance in ranked[:shortlist_k]:
        if facility.registered_count < facility.capacity:
            return facility, distance
    for facility, distance in ranked[shortlist_k:]:
        if facility.registered_count < facility.capacity:
            return facility, distance
    raise NoCapacityAnywhere("every facility is at capacity")
