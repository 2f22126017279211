"""Stream-annotator metadata configuration files.

One file per registered sensor instance, properties-style `key=value` lines.
Fixed keys come first (sensorName, sensorType, sensorIri, author,
description, latitude, longitude, featureOfInterest; author/description are
omitted when the instance has no owner/description), then two keys per
binding in binding order: `<field>.propertyName` and `<field>.unit`.
Values escape backslash, '=', ':', and newline; generation is deterministic,
so repeated runs emit byte-identical files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ontology import (
    InvalidInstance,
    Namespaces,
    SensorInstance,
    SensorType,
    TypeMismatch,
    instance_iri,
    resolve_feature_of_interest,
    validate_instance,
)
from .rdf import ParseError

SENSOR_IRI_KEY = "sensorIri"

_KEY_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_.]*$")
_ESCAPES = {"\\": "\\\\", "=": "\\=", ":": "\\:", "\n": "\\n"}
_UNESCAPES = {"\\": "\\", "=": "=", ":": ":", "n": "\n"}


class DuplicateKey(ValueError):
    def __init__(self, key: str, line: int):
        super().__init__(f"line {line}: duplicate key {key!r}")
        self.key = key
        self.line = line


@dataclass(frozen=True)
class MetadataConfig:
    """An ordered list of unique key/value pairs."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        seen: set[str] = set()
        for key, _ in self.pairs:
            if not _KEY_RE.match(key):
                raise ValueError(f"malformed key: {key!r}")
            if key in seen:
                raise ValueError(f"duplicate key: {key!r}")
            seen.add(key)

    def get(self, key: str) -> str | None:
        for k, v in self.pairs:
            if k == key:
                return v
        return None

    def keys(self) -> list[str]:
        return [k for k, _ in self.pairs]


def escape_value(value: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in value)


def unescape_value(raw: str, line: int) -> str:
    out: list[str] = []
    i = 0
    while i < len(raw):
        c = raw[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(raw):
            raise ParseError("escape character at end of value", line, len(raw) + 1)
        nxt = raw[i + 1]
        if nxt not in _UNESCAPES:
            raise ParseError(f"unknown escape '\\{nxt}'", line, i + 2)
        out.append(_UNESCAPES[nxt])
        i += 2
    return "".join(out)


def generate_metadata(i: SensorInstance, t: SensorType, ns: Namespaces) -> MetadataConfig:
    """Build the annotator configuration for a valid instance of `t`."""
    if i.type_id != t.id:
        raise TypeMismatch(f"instance {i.id!r} names type {i.type_id!r}, got type {t.id!r}")
    violations = validate_instance(i, t)
    if violations:
        raise InvalidInstance(violations)
    pairs: list[tuple[str, str]] = [
        ("sensorName", i.id),
        ("sensorType", t.id),
        (SENSOR_IRI_KEY, instance_iri(i, ns).value),
    ]
    if i.owner is not None:
        pairs.append(("author", i.owner))
    if i.description is not None:
        pairs.append(("description", i.description))
    pairs.extend(
        [
            ("latitude", repr(float(i.latitude))),
            ("longitude", repr(float(i.longitude))),
            ("featureOfInterest", resolve_feature_of_interest(i.feature_of_interest, ns).value),
        ]
    )
    for binding in i.bindings:
        pairs.append((f"{binding.xgsn_field}.propertyName", binding.property.value))
        pairs.append((f"{binding.xgsn_field}.unit", binding.unit.value))
    return MetadataConfig(tuple(pairs))


def render(config: MetadataConfig) -> str:
    """Emit `key=value` lines with a comment header, LF line endings."""
    sensor_iri = config.get(SENSOR_IRI_KEY)
    header = f"# X-GSN metadata for {sensor_iri}" if sensor_iri is not None else "# X-GSN metadata"
    lines = [header]
    lines.extend(f"{key}={escape_value(value)}" for key, value in config.pairs)
    return "\n".join(lines) + "\n"


def parse_metadata(text: str) -> MetadataConfig:
    """Invert render: comments and blank lines are skipped, the first '='
    splits each remaining line, values are unescaped."""
    pairs: list[tuple[str, str]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        idx = line.find("=")
        if idx < 0:
            raise ParseError("'key=value' line", lineno, len(line) + 1)
        key, raw_value = line[:idx], line[idx + 1:]
        if not _KEY_RE.match(key):
            raise ParseError("key matching [A-Za-z][A-Za-z0-9_.]*", lineno, 1)
        if key in seen:
            raise DuplicateKey(key, lineno)
        seen.add(key)
        pairs.append((key, unescape_value(raw_value, lineno)))
    return MetadataConfig(tuple(pairs))
