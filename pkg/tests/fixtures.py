"""The demo weather-station pair shared across the test suite."""

from __future__ import annotations

import json
from pathlib import Path

from ssnforge.ontology import (
    Namespaces,
    SensorInstance,
    SensorType,
    instance_from_json,
    instance_to_graph,
    type_from_json,
    type_to_graph,
)
from ssnforge.rdf import Graph

DATA_DIR = Path(__file__).parent / "data"

AIR_TEMPERATURE = "http://example.org/properties/AirTemperature"
HUMIDITY = "http://example.org/properties/Humidity"


def weather_station_json() -> dict:
    return json.loads((DATA_DIR / "weatherstation.json").read_text(encoding="utf-8"))


def demo_instance_json() -> dict:
    return json.loads((DATA_DIR / "demo-weatherstation.json").read_text(encoding="utf-8"))


def weather_station() -> SensorType:
    return type_from_json(weather_station_json())


def demo_instance() -> SensorInstance:
    return instance_from_json(demo_instance_json())


def demo_union_graph(ns: Namespaces = Namespaces()) -> Graph:
    """Type graph plus instance graph (the registry's 45 stored triples)."""
    return type_to_graph(weather_station(), ns).union(instance_to_graph(demo_instance(), weather_station(), ns))
