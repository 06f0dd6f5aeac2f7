#!/usr/bin/env python3
"""End-to-end demo: seed the demo city, run the demo scenario, show traffic.

Run from the repository root: python3 scripts/run_demo.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from materna.config import ServiceConfig  # noqa: E402
from materna.scenario import parse_scenario, render_report, run_scenario, summarize_events  # noqa: E402
from materna.service import MaternaService  # noqa: E402


def main():
    config = ServiceConfig(facilities_path=str(ROOT / "data" / "facilities_erbil.csv"))
    service = MaternaService.from_config(config)
    steps = parse_scenario((ROOT / "data" / "scenario_demo.txt").read_text())
    run_scenario(service, steps, seed=1)

    print("== outbound traffic ==")
    for line in service.drain_outbox(100):
        print(" ", line)
    print("== report ==")
    print(render_report(summarize_events(service.events)), end="")
    print("== dispatch board ==")
    for order in service.dispatcher.orders():
        print(f"  order {order.order_id}: {order.vehicle.value} from facility "
              f"{order.origin_facility}, kit {order.kit}, {order.distance_km:.1f} km, "
              f"{order.status}")


if __name__ == "__main__":
    main()
