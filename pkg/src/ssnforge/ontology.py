"""Sensor-type and sensor-instance domain model with its RDF mapping.

A sensor type is published as a class: a subclass of the SSN sensor class
that observes one or more properties, each optionally qualified by a
measurement capability carrying accuracy and frequency figures. A sensor
instance is an individual of that class with an owner, a WGS84 location, a
feature of interest, and one unit/stream-field binding per observed
property.

Mapping is deterministic: equal inputs always produce identical graphs, so
canonical serializations are byte-stable. Node IRIs are minted from slugs
under a configurable base IRI; no blank nodes are emitted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence

from .rdf import Graph, Iri, Literal, Triple

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
SSN_NS = "http://purl.oclc.org/NET/ssnx/ssn#"
GEO_NS = "http://www.w3.org/2003/01/geo/wgs84_pos#"
OIOT_NS = "http://openiot.eu/ontology/ns/"
UNIT_NS = "http://qudt.org/vocab/unit#"

DEFAULT_BASE_IRI = "http://example.org/oi/"

UNIT_KELVIN = Iri(UNIT_NS + "Kelvin")
UNIT_DEGREE_CELSIUS = Iri(UNIT_NS + "DegreeCelsius")
UNIT_PERCENT = Iri(UNIT_NS + "Percent")
UNIT_HERTZ = Iri(UNIT_NS + "Hertz")

SLUG_RE = re.compile(r"^[a-z0-9\-]+$")
FIELD_NAME_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9_]*$")
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True, slots=True)
class Namespaces:
    """Vocabulary namespaces plus the base IRI new node IRIs are minted under."""

    rdf: Iri = Iri(RDF_NS)
    rdfs: Iri = Iri(RDFS_NS)
    xsd: Iri = Iri(XSD_NS)
    ssn: Iri = Iri(SSN_NS)
    geo: Iri = Iri(GEO_NS)
    oiot: Iri = Iri(OIOT_NS)
    unit: Iri = Iri(UNIT_NS)
    base_iri: Iri = Iri(DEFAULT_BASE_IRI)

    def __post_init__(self):
        if not self.base_iri.value.endswith(("/", "#")):
            raise ValueError("base IRI must end with '/' or '#'")

    def prefixes(self) -> dict[str, Iri]:
        """Prefix map registered on every generated graph."""
        return {
            "rdf": self.rdf,
            "rdfs": self.rdfs,
            "xsd": self.xsd,
            "ssn": self.ssn,
            "geo": self.geo,
            "oiot": self.oiot,
            "unit": self.unit,
        }


@dataclass(frozen=True, slots=True)
class ObservedProperty:
    iri: Iri
    label: Optional[str] = None


@dataclass(frozen=True, slots=True)
class Measurement:
    """A measurement figure: a decimal value with its unit IRI."""

    value: float
    unit: Iri


@dataclass(frozen=True, slots=True)
class MeasurementCapability:
    """Accuracy/frequency figures qualifying one observed property."""

    property: Iri
    accuracy: Optional[Measurement] = None
    frequency: Optional[Measurement] = None


@dataclass(frozen=True, slots=True)
class SensorType:
    id: str
    name: str
    observes: tuple[ObservedProperty, ...]
    capabilities: tuple[MeasurementCapability, ...] = ()


@dataclass(frozen=True, slots=True)
class PropertyBinding:
    """Per-property unit choice and the stream field the annotator maps it to."""

    property: Iri
    unit: Iri
    xgsn_field: str


@dataclass(frozen=True, slots=True)
class SensorInstance:
    id: str
    name: str
    type_id: str
    latitude: float
    longitude: float
    feature_of_interest: str  # absolute IRI, or a slug minted under foi/
    bindings: tuple[PropertyBinding, ...]
    owner: Optional[str] = None
    description: Optional[str] = None


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    message: str


EMPTY_OBSERVES = "EMPTY_OBSERVES"
DUP_PROPERTY = "DUP_PROPERTY"
BAD_SLUG = "BAD_SLUG"
NEG_ACCURACY = "NEG_ACCURACY"
NONPOS_FREQUENCY = "NONPOS_FREQUENCY"
CAP_UNKNOWN_PROPERTY = "CAP_UNKNOWN_PROPERTY"
LAT_RANGE = "LAT_RANGE"
LON_RANGE = "LON_RANGE"
BINDING_MISMATCH = "BINDING_MISMATCH"
DUP_FIELD = "DUP_FIELD"
BAD_FIELD_NAME = "BAD_FIELD_NAME"


class BadSlug(ValueError):
    """An IRI path part is not a lowercase slug."""


class ShapeError(ValueError):
    """A definition JSON document does not have the documented shape."""


class InvalidType(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in violations))
        self.violations = list(violations)


class InvalidInstance(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in violations))
        self.violations = list(violations)


class TypeMismatch(ValueError):
    """The instance names a different type than the one supplied."""


def slugify(text: str) -> str:
    """Lowercase and squeeze everything outside [a-z0-9-] to single dashes.

    Returns the empty string when nothing survives; callers must treat that
    as a bad slug.
    """
    s = re.sub(r"[^a-z0-9\-]+", "-", text.lower())
    return re.sub(r"-{2,}", "-", s).strip("-")


def local_name(iri: Iri) -> str:
    """The segment after the last '#' or '/' (the whole IRI if neither occurs)."""
    v = iri.value
    for sep in ("#", "/"):
        if sep in v:
            return v.rsplit(sep, 1)[1]
    return v


_KIND_SEGMENTS = {
    "type": "types",
    "instance": "sensors",
    "capability": "cap",
    "measurement": "m",
    "binding": "bind",
    "foi": "foi",
}


def mint_iri(kind: str, parts: Sequence[str], ns: Namespaces) -> Iri:
    """Deterministically mint a node IRI: base + kind segment + slug parts.

    Raises BadSlug when any lowercased part is not a [a-z0-9-]+ slug.
    """
    segment = _KIND_SEGMENTS.get(kind)
    if segment is None:
        raise ValueError(f"unknown IRI kind: {kind!r}")
    cleaned = []
    for part in parts:
        lowered = part.lower()
        if not SLUG_RE.match(lowered):
            raise BadSlug(f"not a valid slug: {part!r}")
        cleaned.append(lowered)
    if not cleaned:
        raise BadSlug("at least one path part required")
    return Iri(ns.base_iri.value + segment + "/" + "/".join(cleaned))


def _finite(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def validate_type(t: SensorType) -> list[Violation]:
    """Check every sensor-type invariant; empty list means registrable."""
    violations: list[Violation] = []
    if not SLUG_RE.match(t.id or ""):
        violations.append(Violation(BAD_SLUG, f"type id must match [a-z0-9-]+, got {t.id!r}"))
    if not t.observes:
        violations.append(Violation(EMPTY_OBSERVES, "a sensor type must observe at least one property"))
    seen_iris: set[str] = set()
    seen_slugs: set[str] = set()
    for prop in t.observes:
        if prop.iri.value in seen_iris:
            violations.append(Violation(DUP_PROPERTY, f"property listed twice: {prop.iri.value}"))
        seen_iris.add(prop.iri.value)
        slug = slugify(local_name(prop.iri))
        if slug and slug in seen_slugs:
            # minted capability/measurement IRIs would collide
            violations.append(Violation(DUP_PROPERTY, f"property local name collides after slugging: {slug!r}"))
        seen_slugs.add(slug)
    cap_props: set[str] = set()
    for cap in t.capabilities:
        if cap.property.value not in seen_iris:
            violations.append(
                Violation(CAP_UNKNOWN_PROPERTY, f"capability for unobserved property: {cap.property.value}")
            )
        if cap.property.value in cap_props:
            violations.append(Violation(DUP_PROPERTY, f"more than one capability for property: {cap.property.value}"))
        cap_props.add(cap.property.value)
        if cap.accuracy is not None and not (_finite(cap.accuracy.value) and cap.accuracy.value >= 0):
            violations.append(Violation(NEG_ACCURACY, "accuracy must be a finite number >= 0"))
        if cap.frequency is not None and not (_finite(cap.frequency.value) and cap.frequency.value > 0):
            violations.append(Violation(NONPOS_FREQUENCY, "frequency must be a finite number > 0"))
    return violations


def validate_instance(i: SensorInstance, t: SensorType) -> list[Violation]:
    """Check every sensor-instance invariant against its type; assumes i.type_id == t.id."""
    violations: list[Violation] = []
    if not SLUG_RE.match(i.id or ""):
        violations.append(Violation(BAD_SLUG, f"instance id must match [a-z0-9-]+, got {i.id!r}"))
    if not (_finite(i.latitude) and -90 <= i.latitude <= 90):
        violations.append(Violation(LAT_RANGE, f"latitude must be within [-90, 90], got {i.latitude!r}"))
    if not (_finite(i.longitude) and -180 <= i.longitude <= 180):
        violations.append(Violation(LON_RANGE, f"longitude must be within [-180, 180], got {i.longitude!r}"))
    foi = i.feature_of_interest
    if not _SCHEME_RE.match(foi or "") and not slugify(foi or ""):
        violations.append(Violation(BAD_SLUG, f"feature of interest is neither an IRI nor sluggable: {foi!r}"))
    seen_fields: set[str] = set()
    bound: set[str] = set()
    for b in i.bindings:
        if not FIELD_NAME_RE.match(b.xgsn_field or ""):
            violations.append(
                Violation(BAD_FIELD_NAME, f"field must match [a-zA-Z][a-zA-Z0-9_]*, got {b.xgsn_field!r}")
            )
        elif b.xgsn_field in seen_fields:
            violations.append(Violation(DUP_FIELD, f"field bound twice: {b.xgsn_field!r}"))
        seen_fields.add(b.xgsn_field)
        if b.property.value in bound:
            violations.append(Violation(BINDING_MISMATCH, f"property bound twice: {b.property.value}"))
        bound.add(b.property.value)
    observed = {p.iri.value for p in t.observes}
    if bound != observed:
        missing = sorted(observed - bound)
        extra = sorted(bound - observed)
        detail = "; ".join(
            part
            for part in (
                f"unbound type properties: {', '.join(missing)}" if missing else "",
                f"bindings for unobserved properties: {', '.join(extra)}" if extra else "",
            )
            if part
        )
        violations.append(Violation(BINDING_MISMATCH, detail or "binding set mismatch"))
    return violations


def resolve_feature_of_interest(raw: str, ns: Namespaces) -> Iri:
    """Accept an absolute IRI verbatim; anything else is slugged under foi/."""
    if _SCHEME_RE.match(raw):
        return Iri(raw)
    slug = slugify(raw)
    if not slug:
        raise BadSlug(f"feature of interest is neither an IRI nor sluggable: {raw!r}")
    return mint_iri("foi", [slug], ns)


def _double(value: float) -> Literal:
    # repr() of a float is the shortest round-tripping form, stable across runs
    return Literal(repr(float(value)), Iri(XSD_NS + "double"))


class _Vocab:
    """Vocabulary terms resolved against one Namespaces value."""

    def __init__(self, ns: Namespaces):
        self.rdf_type = Iri(ns.rdf.value + "type")
        self.rdfs_sub_class_of = Iri(ns.rdfs.value + "subClassOf")
        self.rdfs_label = Iri(ns.rdfs.value + "label")
        self.rdfs_comment = Iri(ns.rdfs.value + "comment")
        self.ssn_sensor = Iri(ns.ssn.value + "Sensor")
        self.ssn_observes = Iri(ns.ssn.value + "observes")
        self.ssn_has_capability = Iri(ns.ssn.value + "hasMeasurementCapability")
        self.ssn_capability_class = Iri(ns.ssn.value + "MeasurementCapability")
        self.ssn_for_property = Iri(ns.ssn.value + "forProperty")
        self.ssn_has_measurement_property = Iri(ns.ssn.value + "hasMeasurementProperty")
        self.ssn_accuracy_class = Iri(ns.ssn.value + "Accuracy")
        self.ssn_frequency_class = Iri(ns.ssn.value + "Frequency")
        self.ssn_feature_class = Iri(ns.ssn.value + "FeatureOfInterest")
        self.geo_lat = Iri(ns.geo.value + "lat")
        self.geo_long = Iri(ns.geo.value + "long")
        self.oiot_sensor_type_class = Iri(ns.oiot.value + "SensorType")
        self.oiot_has_value = Iri(ns.oiot.value + "hasValue")
        self.oiot_has_unit = Iri(ns.oiot.value + "hasUnit")
        self.oiot_has_owner = Iri(ns.oiot.value + "hasOwner")
        self.oiot_has_feature = Iri(ns.oiot.value + "hasFeatureOfInterest")
        self.oiot_has_binding = Iri(ns.oiot.value + "hasBinding")
        self.oiot_for_property = Iri(ns.oiot.value + "forProperty")
        self.oiot_xgsn_field = Iri(ns.oiot.value + "xgsnField")


def type_iri(t: SensorType, ns: Namespaces) -> Iri:
    return mint_iri("type", [t.id], ns)


def instance_iri(i: SensorInstance, ns: Namespaces) -> Iri:
    return mint_iri("instance", [i.id], ns)


def type_to_graph(t: SensorType, ns: Namespaces) -> Graph:
    """Publish a sensor type as a graph.

    Emits: the type node as a sensor subclass with its label; one observes
    edge per property; per capability a capability node tied to its
    property; per present measurement (accuracy first, then frequency) a
    measurement node with class, value, and unit. Triple count is
    3 + sum over properties of [1 + (capability ? 3 : 0) + 4 * measurements].
    """
    violations = validate_type(t)
    if violations:
        raise InvalidType(violations)
    v = _Vocab(ns)
    tnode = type_iri(t, ns)
    triples = [
        Triple(tnode, v.rdf_type, v.oiot_sensor_type_class),
        Triple(tnode, v.rdfs_sub_class_of, v.ssn_sensor),
        Triple(tnode, v.rdfs_label, Literal(t.name)),
    ]
    caps = {c.property.value: c for c in t.capabilities}
    for prop in t.observes:
        triples.append(Triple(tnode, v.ssn_observes, prop.iri))
        cap = caps.get(prop.iri.value)
        if cap is None:
            continue
        prop_slug = slugify(local_name(prop.iri))
        cnode = mint_iri("capability", [t.id, prop_slug], ns)
        triples.extend(
            [
                Triple(tnode, v.ssn_has_capability, cnode),
                Triple(cnode, v.rdf_type, v.ssn_capability_class),
                Triple(cnode, v.ssn_for_property, prop.iri),
            ]
        )
        for measure_kind, measure, cls in (
            ("accuracy", cap.accuracy, v.ssn_accuracy_class),
            ("frequency", cap.frequency, v.ssn_frequency_class),
        ):
            if measure is None:
                continue
            mnode = mint_iri("measurement", [t.id, prop_slug, measure_kind], ns)
            triples.extend(
                [
                    Triple(cnode, v.ssn_has_measurement_property, mnode),
                    Triple(mnode, v.rdf_type, cls),
                    Triple(mnode, v.oiot_has_value, _double(measure.value)),
                    Triple(mnode, v.oiot_has_unit, measure.unit),
                ]
            )
    return Graph(triples, ns.prefixes())


def instance_to_graph(i: SensorInstance, t: SensorType, ns: Namespaces) -> Graph:
    """Publish a deployed sensor as a graph.

    Emits: the instance node typed by its sensor-type class with label,
    optional comment and owner, WGS84 coordinates, the feature-of-interest
    link plus the feature's class assertion; per binding an observes edge
    and a binding node carrying property, unit, and stream field. Triple
    count is 6 + (description ? 1) + (owner ? 1) + 5 * bindings.
    """
    if i.type_id != t.id:
        raise TypeMismatch(f"instance {i.id!r} names type {i.type_id!r}, got type {t.id!r}")
    violations = validate_instance(i, t)
    if violations:
        raise InvalidInstance(violations)
    v = _Vocab(ns)
    inode = instance_iri(i, ns)
    tnode = type_iri(t, ns)
    feature = resolve_feature_of_interest(i.feature_of_interest, ns)
    triples = [
        Triple(inode, v.rdf_type, tnode),
        Triple(inode, v.rdfs_label, Literal(i.name)),
        Triple(inode, v.geo_lat, _double(i.latitude)),
        Triple(inode, v.geo_long, _double(i.longitude)),
        Triple(inode, v.oiot_has_feature, feature),
        Triple(feature, v.rdf_type, v.ssn_feature_class),
    ]
    if i.description is not None:
        triples.append(Triple(inode, v.rdfs_comment, Literal(i.description)))
    if i.owner is not None:
        triples.append(Triple(inode, v.oiot_has_owner, Literal(i.owner)))
    for binding in i.bindings:
        bnode = mint_iri("binding", [i.id, slugify(local_name(binding.property))], ns)
        triples.extend(
            [
                Triple(inode, v.ssn_observes, binding.property),
                Triple(inode, v.oiot_has_binding, bnode),
                Triple(bnode, v.oiot_for_property, binding.property),
                Triple(bnode, v.oiot_has_unit, binding.unit),
                Triple(bnode, v.oiot_xgsn_field, Literal(binding.xgsn_field)),
            ]
        )
    return Graph(triples, ns.prefixes())


# ---------------------------------------------------------------------------
# JSON shapes (the definition-file and API wire format)


def _require(data: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in data:
        raise ShapeError(f"{where}: missing required field {key!r}")
    return data[key]


def _string(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise ShapeError(f"{where}: expected a string")
    return value


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ShapeError(f"{where}: expected a number")
    return float(value)


def _iri(value: Any, where: str) -> Iri:
    try:
        return Iri(_string(value, where))
    except ValueError as exc:
        raise ShapeError(f"{where}: {exc}") from None


def _optional_string(data: Mapping[str, Any], key: str, where: str) -> Optional[str]:
    value = data.get(key)
    if value is None:
        return None
    return _string(value, f"{where}.{key}")


def _object(value: Any, where: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise ShapeError(f"{where}: expected an object")
    return value


def _array(value: Any, where: str) -> Sequence[Any]:
    if not isinstance(value, Sequence) or isinstance(value, (str, bytes)):
        raise ShapeError(f"{where}: expected an array")
    return value


def _measurement_from_json(data: Any, where: str) -> Measurement:
    obj = _object(data, where)
    return Measurement(
        value=_number(_require(obj, "value", where), f"{where}.value"),
        unit=_iri(_require(obj, "unit", where), f"{where}.unit"),
    )


def type_from_json(data: Any) -> SensorType:
    obj = _object(data, "type")
    observes = []
    for idx, entry in enumerate(_array(_require(obj, "observes", "type"), "type.observes")):
        where = f"type.observes[{idx}]"
        entry = _object(entry, where)
        observes.append(
            ObservedProperty(
                iri=_iri(_require(entry, "iri", where), f"{where}.iri"),
                label=_optional_string(entry, "label", where),
            )
        )
    capabilities = []
    for idx, entry in enumerate(_array(obj.get("capabilities", []), "type.capabilities")):
        where = f"type.capabilities[{idx}]"
        entry = _object(entry, where)
        capabilities.append(
            MeasurementCapability(
                property=_iri(_require(entry, "property", where), f"{where}.property"),
                accuracy=(
                    _measurement_from_json(entry["accuracy"], f"{where}.accuracy")
                    if entry.get("accuracy") is not None
                    else None
                ),
                frequency=(
                    _measurement_from_json(entry["frequency"], f"{where}.frequency")
                    if entry.get("frequency") is not None
                    else None
                ),
            )
        )
    return SensorType(
        id=_string(_require(obj, "id", "type"), "type.id"),
        name=_string(_require(obj, "name", "type"), "type.name"),
        observes=tuple(observes),
        capabilities=tuple(capabilities),
    )


def type_to_json(t: SensorType) -> dict[str, Any]:
    observes = []
    for prop in t.observes:
        entry: dict[str, Any] = {"iri": prop.iri.value}
        if prop.label is not None:
            entry["label"] = prop.label
        observes.append(entry)
    capabilities = []
    for cap in t.capabilities:
        entry = {"property": cap.property.value}
        if cap.accuracy is not None:
            entry["accuracy"] = {"value": cap.accuracy.value, "unit": cap.accuracy.unit.value}
        if cap.frequency is not None:
            entry["frequency"] = {"value": cap.frequency.value, "unit": cap.frequency.unit.value}
        capabilities.append(entry)
    return {"id": t.id, "name": t.name, "observes": observes, "capabilities": capabilities}


def instance_from_json(data: Any) -> SensorInstance:
    obj = _object(data, "instance")
    bindings = []
    for idx, entry in enumerate(_array(_require(obj, "bindings", "instance"), "instance.bindings")):
        where = f"instance.bindings[{idx}]"
        entry = _object(entry, where)
        bindings.append(
            PropertyBinding(
                property=_iri(_require(entry, "property", where), f"{where}.property"),
                unit=_iri(_require(entry, "unit", where), f"{where}.unit"),
                xgsn_field=_string(_require(entry, "xgsnField", where), f"{where}.xgsnField"),
            )
        )
    return SensorInstance(
        id=_string(_require(obj, "id", "instance"), "instance.id"),
        name=_string(_require(obj, "name", "instance"), "instance.name"),
        type_id=_string(_require(obj, "typeId", "instance"), "instance.typeId"),
        owner=_optional_string(obj, "owner", "instance"),
        description=_optional_string(obj, "description", "instance"),
        latitude=_number(_require(obj, "latitude", "instance"), "instance.latitude"),
        longitude=_number(_require(obj, "longitude", "instance"), "instance.longitude"),
        feature_of_interest=_string(_require(obj, "featureOfInterest", "instance"), "instance.featureOfInterest"),
        bindings=tuple(bindings),
    )


def instance_to_json(i: SensorInstance) -> dict[str, Any]:
    out: dict[str, Any] = {"id": i.id, "name": i.name, "typeId": i.type_id}
    if i.owner is not None:
        out["owner"] = i.owner
    if i.description is not None:
        out["description"] = i.description
    out.update(
        latitude=i.latitude,
        longitude=i.longitude,
        featureOfInterest=i.feature_of_interest,
        bindings=[
            {"property": b.property.value, "unit": b.unit.value, "xgsnField": b.xgsn_field} for b in i.bindings
        ],
    )
    return out
