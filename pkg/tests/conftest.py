from __future__ import annotations

import datetime as dt
from pathlib import Path

import pytest

from materna.config import ServiceConfig
from materna.geo import GeoPoint
from materna.messages import Register
from materna.registry import Facility, Registry, Vehicle
from materna.service import MaternaService

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

# Demo city geometry: source with three centres at roughly 0.5 / 3.7 / 6.5 km,
# derived with the law-of-cosines oracle in oracles.py before the build.
SOURCE = GeoPoint(36.190000, 44.010000)
REG_LINE = "REG|07504432147|36.190000|44.010000|Sara|27"


def demo_facilities():
    return [
        Facility(1, "Ankawa", "ERB-N", GeoPoint(36.194497, 44.010000), 10, 10,
                 frozenset({Vehicle.CAR})),
        Facility(2, "Tayrawa", "ERB-S", GeoPoint(36.131544, 44.010000), 4, 15,
                 frozenset({Vehicle.CAR})),
        Facility(3, "Maternity Hospital", "ERB-C", GeoPoint(36.190000, 44.051230), 7, 25,
                 frozenset({Vehicle.CAR, Vehicle.HELI})),
    ]


@pytest.fixture
def facilities():
    return demo_facilities()


@pytest.fixture
def registry():
    return Registry(demo_facilities(), id_code_seed=1000)


@pytest.fixture
def start_time():
    return dt.datetime(2012, 11, 1, 8, 0, 0)


def make_service(facilities=None, event_log_path=None, **config_kwargs):
    config = ServiceConfig(**config_kwargs)
    registry = Registry(
        facilities if facilities is not None else demo_facilities(),
        id_code_seed=config.id_code_seed,
    )
    return MaternaService(config, registry, event_log_path=event_log_path)


@pytest.fixture
def service():
    return make_service()


def reg_msg(phone="07504432147", lat=36.19, lon=44.01, name="Sara", age=27):
    return Register(phone, GeoPoint(lat, lon), name, age)
