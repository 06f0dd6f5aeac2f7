#!/usr/bin/env python3
"""Derive the demo-city facility coordinates from target distances.

Uses the spherical law of cosines (independent of the package's haversine)
to place three centres at 0.5, 3.7 and 6.5 km from the source, then checks
both formulas agree. Prints the CSV rows used in data/facilities_erbil.csv.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from materna.geo import GeoPoint, haversine_km  # noqa: E402
from oracles import slc_km  # noqa: E402

R = 6371.0088
SOURCE = (36.190000, 44.010000)
DEG_PER_KM_LAT = 180.0 / (math.pi * R)


def main():
    deg_per_km_lon = DEG_PER_KM_LAT / math.cos(math.radians(SOURCE[0]))
    targets = [
        ("Ankawa", 0.5, SOURCE[0] + 0.5 * DEG_PER_KM_LAT, SOURCE[1]),
        ("Tayrawa", 6.5, SOURCE[0] - 6.5 * DEG_PER_KM_LAT, SOURCE[1]),
        ("Maternity Hospital", 3.7, SOURCE[0], SOURCE[1] + 3.7 * deg_per_km_lon),
    ]
    print(f"source: {SOURCE[0]:.6f}, {SOURCE[1]:.6f}")
    for name, km, lat, lon in targets:
        lat, lon = round(lat, 6), round(lon, 6)
        oracle = slc_km(SOURCE[0], SOURCE[1], lat, lon)
        packaged = haversine_km(GeoPoint(*SOURCE), GeoPoint(lat, lon))
        drift = abs(oracle - km) / km
        print(
            f"{name:20s} lat={lat:.6f} lon={lon:.6f} "
            f"target={km:.1f} oracle={oracle:.4f} haversine={packaged:.4f} "
            f"rel_err={drift:.2e}"
        )
        assert drift < 0.001, "derived coordinates drifted off target"


if __name__ == "__main__":
    main()
