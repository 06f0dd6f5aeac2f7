"""Emergency rescue: vehicle choice, origin facility, kit, and order tracking."""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime

from . import geo
from .errors import AlreadyClosed, NoVehicleAvailable, UnknownOrder
from .geo import GeoPoint
from .messages import Rescue, Sos
from .registry import Condition, Vehicle

DEFAULT_SPEEDS_KMH = {Vehicle.CAR: 40.0, Vehicle.BOAT: 30.0, Vehicle.HELI: 150.0}
DEFAULT_HELI_THRESHOLD_KM = 15.0
DEFAULT_WATER_ZONE_PREFIX = "W"

# Most urgent condition wins the kit.
KIT_PRIORITY = (Condition.CARDIAC, Condition.HYPERTENSION, Condition.DIABETES, Condition.ASTHMA)

STATUS_OPEN = "Open"
STATUS_CLOSED = "Closed"


@dataclass
class DispatchOrder:
    order_id: int
    phone: str
    location: GeoPoint
    origin_facility: int
    vehicle: Vehicle
    kit: str
    distance_km: float
    created_at: datetime
    status: str = STATUS_OPEN
    outcome: str | None = None


def eta_minutes(distance_km: float, speed_kmh: float) -> int:
    """Whole minutes to cover the distance, never below 1."""
    return max(1, math.ceil(distance_km / speed_kmh * 60.0))


class Dispatcher:
    """Creates and tracks rescue orders. Order creation is serialized by the caller."""

    def __init__(
        self,
        registry,
        heli_threshold_km: float = DEFAULT_HELI_THRESHOLD_KM,
        speeds_kmh: dict | None = None,
        water_zone_prefix: str = DEFAULT_WATER_ZONE_PREFIX,
    ):
        self.registry = registry
        self.heli_threshold_km = heli_threshold_km
        self.speeds_kmh = dict(speeds_kmh or DEFAULT_SPEEDS_KMH)
        self.water_zone_prefix = water_zone_prefix
        self._orders: dict[int, DispatchOrder] = {}
        self._next_order_id = 1

    @property
    def next_order_id(self) -> int:
        return self._next_order_id

    def orders(self) -> list[DispatchOrder]:
        return list(self._orders.values())

    def order(self, order_id: int) -> DispatchOrder:
        if order_id not in self._orders:
            raise UnknownOrder(f"no order {order_id}")
        return self._orders[order_id]

    def _choose_vehicle(self, sos_distance_km: float, zone: str, available: set) -> Vehicle:
        """Far cases fly, water zones float, everything else drives.

        When the rule's class is missing everywhere, fall back in the order
        Car, Boat, Heli so a rescue always goes out while any vehicle exists.
        """
        if sos_distance_km > self.heli_threshold_km and Vehicle.HELI in available:
            return Vehicle.HELI
        if zone.startswith(self.water_zone_prefix) and Vehicle.BOAT in available:
            return Vehicle.BOAT
        for fallback in (Vehicle.CAR, Vehicle.BOAT, Vehicle.HELI):
            if fallback in available:
                return fallback
        raise NoVehicleAvailable("no facility holds any vehicle")

    def handle_sos(self, msg: Sos, now: datetime) -> tuple[DispatchOrder, Rescue]:
        """Open an order for a registered sender and emit the RESCUE message.

        Never touches registration occupancy.
        """
        woman = self.registry.lookup(msg.phone)
        facilities = self.registry.facilities
        available = set()
        for fac in facilities:
            available |= fac.vehicles
        if not available:
            raise NoVehicleAvailable("no facility holds any vehicle")
        assigned = self.registry.facility(woman.assigned_facility)
        sos_distance = geo.haversine_km(msg.location, assigned.location)
        vehicle = self._choose_vehicle(sos_distance, assigned.zone, available)
        equipped = [f for f in facilities if vehicle in f.vehicles]
        origin, distance = geo.rank_by_distance(msg.location, equipped)[0]
        kit = "Standard"
        for condition in KIT_PRIORITY:
            if condition in woman.conditions:
                kit = condition.value
                break
        order = DispatchOrder(
            order_id=self._next_order_id,
            phone=msg.phone,
            location=msg.location,
            origin_facility=origin.id,
            vehicle=vehicle,
            kit=kit,
            distance_km=distance,
            created_at=now,
        )
        self._next_order_id += 1
        self._orders[order.order_id] = order
        rescue = Rescue(msg.phone, vehicle.value, eta_minutes(distance, self.speeds_kmh[vehicle]))
        return order, rescue

    def close_order(self, order_id: int, outcome: str) -> DispatchOrder:
        order = self.order(order_id)
        if order.status == STATUS_CLOSED:
            raise AlreadyClosed(f"order {order_id} was already closed")
        order.status = STATUS_CLOSED
        order.outcome = outcome
        return order

    def restore_order(self, order: DispatchOrder) -> None:
        """Install a rebuilt order (event replay path)."""
        self._orders[order.order_id] = order
        self._next_order_id = max(self._next_order_id, order.order_id + 1)
