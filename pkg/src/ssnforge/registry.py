"""Publication registry: one named graph per registered type or instance.

A local stand-in for the cloud publication service. Definitions are stored
with their generated graphs; every mutation validates first, persists to
disk, and only then swaps the in-memory state, so a failed call leaves both
unchanged. Persistence is a full snapshot: canonical N-Quads of the dataset
(`store.nq`) plus a JSON index of entries (`index.json`), each written to a
temp file and atomically renamed. Loading re-validates the stored state and
rejects anything inconsistent.

Single-writer / multi-reader: mutations serialize on a lock and readers
always see a complete immutable snapshot.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping, Optional, Union

from .ontology import (
    InvalidInstance,
    InvalidType,
    Namespaces,
    SensorInstance,
    SensorType,
    instance_from_json,
    instance_to_graph,
    instance_to_json,
    mint_iri,
    type_from_json,
    type_to_graph,
    type_to_json,
    validate_instance,
    validate_type,
)
from .rdf import Dataset, Graph, Iri, ParseError, parse_nquads, serialize_nquads

STORE_FILE = "store.nq"
INDEX_FILE = "index.json"

KIND_TYPE = "type"
KIND_INSTANCE = "instance"
_KINDS = (KIND_TYPE, KIND_INSTANCE)


class RegistryError(Exception):
    """Base class for registry failures."""


class AlreadyExists(RegistryError):
    def __init__(self, kind: str, entry_id: str):
        super().__init__(f"{kind} {entry_id!r} is already registered")
        self.kind = kind
        self.id = entry_id


class NotFound(RegistryError):
    def __init__(self, kind: str, entry_id: str):
        super().__init__(f"no {kind} registered under {entry_id!r}")
        self.kind = kind
        self.id = entry_id


class UnknownType(RegistryError):
    def __init__(self, type_id: str):
        super().__init__(f"instance references unregistered type {type_id!r}")
        self.type_id = type_id


class ConflictInUse(RegistryError):
    def __init__(self, message: str, dependents: list[str]):
        super().__init__(message)
        self.dependents = dependents


class CorruptStore(RegistryError):
    def __init__(self, file: str, message: str, line: Optional[int] = None):
        where = f"{file}, line {line}" if line is not None else file
        super().__init__(f"{where}: {message}")
        self.file = file
        self.line = line


@dataclass(frozen=True)
class RegistryEntry:
    kind: str
    id: str
    iri: Iri
    graph_iri: Iri
    definition: Union[SensorType, SensorInstance]
    graph: Graph
    registered_at: str  # RFC 3339 UTC

    def definition_json(self) -> dict:
        if self.kind == KIND_TYPE:
            return type_to_json(self.definition)
        return instance_to_json(self.definition)

    def index_json(self) -> dict:
        return {
            "kind": self.kind,
            "id": self.id,
            "iri": self.iri.value,
            "graphIri": self.graph_iri.value,
            "registeredAt": self.registered_at,
            "definition": self.definition_json(),
        }


@dataclass(frozen=True)
class RegistryState:
    """Immutable snapshot: entries and the dataset derived from them, 1-1."""

    entries: Mapping[tuple[str, str], RegistryEntry]
    dataset: Dataset

    @classmethod
    def from_entries(cls, entries: Mapping[tuple[str, str], RegistryEntry]) -> RegistryState:
        dataset = Dataset({entry.graph_iri: entry.graph for entry in entries.values()})
        return cls(entries=dict(entries), dataset=dataset)

    def of_kind(self, kind: str) -> list[RegistryEntry]:
        return sorted((e for e in self.entries.values() if e.kind == kind), key=lambda e: e.id)


def _entry_iris(kind: str, entry_id: str, ns: Namespaces) -> tuple[Iri, Iri]:
    iri = mint_iri(kind, [entry_id], ns)
    return iri, Iri(iri.value + "/graph")


def persist_state(state: RegistryState, data_dir: Path) -> None:
    """Write the snapshot files, temp-then-rename for each."""
    data_dir.mkdir(parents=True, exist_ok=True)
    entries = sorted(state.entries.values(), key=lambda e: (e.kind != KIND_TYPE, e.id))
    index_text = json.dumps([e.index_json() for e in entries], indent=2) + "\n"
    store_text = serialize_nquads(state.dataset)

    for name, text in ((STORE_FILE, store_text), (INDEX_FILE, index_text)):
        tmp = data_dir / (name + ".tmp")
        tmp.write_text(text, encoding="utf-8", newline="\n")
        os.replace(tmp, data_dir / name)


def load_state(data_dir: Path, ns: Namespaces) -> RegistryState:
    """Rebuild the snapshot from disk, re-validating every invariant."""
    index_path = data_dir / INDEX_FILE
    store_path = data_dir / STORE_FILE
    if not index_path.exists() and not store_path.exists():
        return RegistryState.from_entries({})
    if not index_path.exists():
        raise CorruptStore(INDEX_FILE, "missing while store.nq exists")
    if not store_path.exists():
        raise CorruptStore(STORE_FILE, "missing while index.json exists")

    try:
        raw = json.loads(index_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorruptStore(INDEX_FILE, exc.msg, exc.lineno) from None
    if not isinstance(raw, list):
        raise CorruptStore(INDEX_FILE, "top-level value must be an array")

    entries: dict[tuple[str, str], RegistryEntry] = {}
    types: dict[str, SensorType] = {}
    for pos, item in enumerate(raw):
        if not isinstance(item, dict):
            raise CorruptStore(INDEX_FILE, f"entry {pos} is not an object")
        try:
            kind = item["kind"]
            entry_id = item["id"]
            registered_at = item["registeredAt"]
            definition_json = item["definition"]
            stored_iri = item["iri"]
            stored_graph_iri = item["graphIri"]
        except KeyError as exc:
            raise CorruptStore(INDEX_FILE, f"entry {pos} is missing {exc.args[0]!r}") from None
        if kind not in _KINDS:
            raise CorruptStore(INDEX_FILE, f"entry {pos} has unknown kind {kind!r}")
        try:
            if kind == KIND_TYPE:
                definition = type_from_json(definition_json)
                violations = validate_type(definition)
                if violations:
                    raise CorruptStore(INDEX_FILE, f"type {entry_id!r} is invalid: {violations[0].message}")
                graph = type_to_graph(definition, ns)
                types[definition.id] = definition
            else:
                definition = instance_from_json(definition_json)
                if definition.type_id not in types:
                    raise CorruptStore(INDEX_FILE, f"instance {entry_id!r} references missing type {definition.type_id!r}")
                graph = instance_to_graph(definition, types[definition.type_id], ns)
        except (ValueError, InvalidType, InvalidInstance) as exc:
            raise CorruptStore(INDEX_FILE, f"entry {pos}: {exc}") from None
        if definition.id != entry_id:
            raise CorruptStore(INDEX_FILE, f"entry {pos}: id {entry_id!r} does not match definition")
        iri, graph_iri = _entry_iris(kind, entry_id, ns)
        if stored_iri != iri.value or stored_graph_iri != graph_iri.value:
            raise CorruptStore(INDEX_FILE, f"entry {pos}: stored IRIs do not match minting rules")
        key = (kind, entry_id)
        if key in entries:
            raise CorruptStore(INDEX_FILE, f"duplicate entry for {kind} {entry_id!r}")
        entries[key] = RegistryEntry(
            kind=kind,
            id=entry_id,
            iri=iri,
            graph_iri=graph_iri,
            definition=definition,
            graph=graph,
            registered_at=str(registered_at),
        )

    state = RegistryState.from_entries(entries)

    try:
        stored_dataset = parse_nquads(store_path.read_text(encoding="utf-8"))
    except ParseError as exc:
        raise CorruptStore(STORE_FILE, exc.message, exc.line) from None
    expected = {giri.value: graph.triples for giri, graph in state.dataset.graphs.items()}
    found = {giri.value: graph.triples for giri, graph in stored_dataset.graphs.items()}
    if expected != found:
        raise CorruptStore(STORE_FILE, "stored quads do not match the graphs derived from index.json")
    return state


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class Registry:
    """Thread-safe facade over a RegistryState snapshot persisted in data_dir."""

    def __init__(self, data_dir: Union[str, Path], ns: Namespaces = Namespaces()):
        self._data_dir = Path(data_dir)
        self._ns = ns
        self._lock = threading.Lock()
        self._state = load_state(self._data_dir, ns)

    @property
    def namespaces(self) -> Namespaces:
        return self._ns

    @property
    def state(self) -> RegistryState:
        return self._state

    @property
    def dataset(self) -> Dataset:
        return self._state.dataset

    def counts(self) -> tuple[int, int]:
        state = self._state
        return len(state.of_kind(KIND_TYPE)), len(state.of_kind(KIND_INSTANCE))

    # -- reads

    def get(self, kind: str, entry_id: str) -> RegistryEntry:
        self._check_kind(kind)
        entry = self._state.entries.get((kind, entry_id))
        if entry is None:
            raise NotFound(kind, entry_id)
        return entry

    def list(self, kind: str) -> list[RegistryEntry]:
        self._check_kind(kind)
        return self._state.of_kind(kind)

    # -- mutations

    def register_type(self, t: SensorType) -> RegistryEntry:
        with self._lock:
            violations = validate_type(t)
            if violations:
                raise InvalidType(violations)
            key = (KIND_TYPE, t.id)
            if key in self._state.entries:
                raise AlreadyExists(KIND_TYPE, t.id)
            entry = self._make_entry(KIND_TYPE, t, type_to_graph(t, self._ns))
            return self._commit({**self._state.entries, key: entry}, entry)

    def update_type(self, t: SensorType) -> RegistryEntry:
        with self._lock:
            key = (KIND_TYPE, t.id)
            existing = self._state.entries.get(key)
            if existing is None:
                raise NotFound(KIND_TYPE, t.id)
            violations = validate_type(t)
            if violations:
                raise InvalidType(violations)
            removed = {p.iri.value for p in existing.definition.observes} - {p.iri.value for p in t.observes}
            if removed:
                broken = [
                    e.id
                    for e in self._state.of_kind(KIND_INSTANCE)
                    if e.definition.type_id == t.id
                    and any(b.property.value in removed for b in e.definition.bindings)
                ]
                if broken:
                    raise ConflictInUse(
                        f"update removes properties bound by instances: {', '.join(broken)}", broken
                    )
            entry = RegistryEntry(
                kind=KIND_TYPE,
                id=t.id,
                iri=existing.iri,
                graph_iri=existing.graph_iri,
                definition=t,
                graph=type_to_graph(t, self._ns),
                registered_at=existing.registered_at,
            )
            return self._commit({**self._state.entries, key: entry}, entry)

    def register_instance(self, i: SensorInstance) -> RegistryEntry:
        with self._lock:
            type_entry = self._state.entries.get((KIND_TYPE, i.type_id))
            if type_entry is None:
                raise UnknownType(i.type_id)
            violations = validate_instance(i, type_entry.definition)
            if violations:
                raise InvalidInstance(violations)
            key = (KIND_INSTANCE, i.id)
            if key in self._state.entries:
                raise AlreadyExists(KIND_INSTANCE, i.id)
            entry = self._make_entry(KIND_INSTANCE, i, instance_to_graph(i, type_entry.definition, self._ns))
            return self._commit({**self._state.entries, key: entry}, entry)

    def remove(self, kind: str, entry_id: str) -> None:
        self._check_kind(kind)
        with self._lock:
            key = (kind, entry_id)
            if key not in self._state.entries:
                raise NotFound(kind, entry_id)
            if kind == KIND_TYPE:
                dependents = [
                    e.id for e in self._state.of_kind(KIND_INSTANCE) if e.definition.type_id == entry_id
                ]
                if dependents:
                    raise ConflictInUse(
                        f"type {entry_id!r} has registered instances: {', '.join(dependents)}", dependents
                    )
            entries = dict(self._state.entries)
            del entries[key]
            self._commit(entries, None)

    # -- helpers

    def _check_kind(self, kind: str) -> None:
        if kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")

    def _make_entry(self, kind: str, definition, graph: Graph) -> RegistryEntry:
        iri, graph_iri = _entry_iris(kind, definition.id, self._ns)
        return RegistryEntry(
            kind=kind,
            id=definition.id,
            iri=iri,
            graph_iri=graph_iri,
            definition=definition,
            graph=graph,
            registered_at=_utc_now(),
        )

    def _commit(self, entries: dict, entry: Optional[RegistryEntry]):
        """Persist the new snapshot, then swap it in; on failure nothing changes."""
        state = RegistryState.from_entries(entries)
        persist_state(state, self._data_dir)
        self._state = state
        return entry
