"""RDF value types: terms, triples, graphs, and named-graph datasets.

All values are immutable after construction and safe to share across
threads. Building a graph from an iterable that contains duplicate triples
collapses them (set semantics).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Union

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_LANG_TAG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")
# Prefix short names: empty (the default prefix) or a letter/underscore head.
_PREFIX_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_\-]*)?$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI. Must carry a scheme and no whitespace or angle brackets."""

    value: str

    def __post_init__(self):
        v = self.value
        if not v:
            raise ValueError("IRI must be non-empty")
        if "<" in v or ">" in v:
            raise ValueError(f"IRI must not contain '<' or '>': {v!r}")
        if any(c.isspace() for c in v):
            raise ValueError(f"IRI must not contain whitespace: {v!r}")
        if not _SCHEME_RE.match(v):
            raise ValueError(f"IRI must start with a scheme: {v!r}")

    def __str__(self) -> str:
        return self.value


_XSD_STRING_IRI = Iri(XSD_STRING)
_RDF_LANG_STRING_IRI = Iri(RDF_LANG_STRING)


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal. The lexical form is kept exactly as supplied.

    A language tag forces the datatype to rdf:langString; passing a tag with
    the default datatype coerces it, any other datatype is rejected.
    """

    lexical: str
    datatype: Iri = _XSD_STRING_IRI
    lang: Optional[str] = None

    def __post_init__(self):
        if self.lang is not None:
            if not _LANG_TAG_RE.match(self.lang):
                raise ValueError(f"malformed language tag: {self.lang!r}")
            if self.datatype == _XSD_STRING_IRI:
                object.__setattr__(self, "datatype", _RDF_LANG_STRING_IRI)
            elif self.datatype != _RDF_LANG_STRING_IRI:
                raise ValueError("language-tagged literal must use the language-string datatype")
        elif self.datatype == _RDF_LANG_STRING_IRI:
            raise ValueError("language-string literal requires a language tag")


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node with a restricted label alphabet ([A-Za-z0-9_]+)."""

    label: str

    def __post_init__(self):
        if not _BLANK_LABEL_RE.match(self.label):
            raise ValueError(f"malformed blank node label: {self.label!r}")


Term = Union[Iri, Literal, BlankNode]
SubjectTerm = Union[Iri, BlankNode]


@dataclass(frozen=True, slots=True)
class Triple:
    """A single statement. Subjects are never literals, predicates always IRIs."""

    subject: SubjectTerm
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"triple subject must be an IRI or blank node, got {type(self.subject).__name__}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"triple predicate must be an IRI, got {type(self.predicate).__name__}")
        if not isinstance(self.object, (Iri, Literal, BlankNode)):
            raise TypeError(f"triple object must be an RDF term, got {type(self.object).__name__}")


class Graph:
    """An immutable set of triples plus a prefix map for compact serialization."""

    __slots__ = ("_triples", "_prefixes")

    def __init__(self, triples: Iterable[Triple] = (), prefixes: Mapping[str, Iri] | None = None):
        tset = frozenset(triples)
        for t in tset:
            if not isinstance(t, Triple):
                raise TypeError(f"expected Triple, got {type(t).__name__}")
        pmap = {}
        for name, ns in (prefixes or {}).items():
            if not _PREFIX_NAME_RE.match(name):
                raise ValueError(f"malformed prefix short name: {name!r}")
            if not isinstance(ns, Iri):
                raise TypeError("prefix namespace must be an Iri")
            pmap[name] = ns
        self._triples = tset
        self._prefixes = MappingProxyType(pmap)

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    @property
    def prefixes(self) -> Mapping[str, Iri]:
        return self._prefixes

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        """Strict value equality: same triple set, label for label, same prefixes.

        Use :func:`graph_equal` for blank-node-isomorphism comparison.
        """
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples and dict(self._prefixes) == dict(other._prefixes)

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples, {len(self._prefixes)} prefixes)"

    def match(
        self,
        subject: SubjectTerm | None = None,
        predicate: Iri | None = None,
        object: Term | None = None,
    ) -> Iterator[Triple]:
        """Yield triples matching the given terms; None is a wildcard."""
        for t in self._triples:
            if subject is not None and t.subject != subject:
                continue
            if predicate is not None and t.predicate != predicate:
                continue
            if object is not None and t.object != object:
                continue
            yield t

    def with_prefixes(self, prefixes: Mapping[str, Iri]) -> Graph:
        """A copy of this graph with extra prefixes merged in (new names win)."""
        merged = dict(self._prefixes)
        merged.update(prefixes)
        return Graph(self._triples, merged)

    def union(self, other: Graph) -> Graph:
        """Set union of the triples; this graph's prefixes win on collisions."""
        merged = dict(other._prefixes)
        merged.update(self._prefixes)
        return Graph(self._triples | other._triples, merged)


class Dataset:
    """An immutable collection of named graphs keyed by graph IRI.

    There is no default graph: every statement lives in a named graph.
    """

    __slots__ = ("_graphs",)

    def __init__(self, graphs: Mapping[Iri, Graph] | None = None):
        gmap = {}
        for giri, graph in (graphs or {}).items():
            if not isinstance(giri, Iri):
                raise TypeError("graph name must be an Iri")
            if not isinstance(graph, Graph):
                raise TypeError("named graph must be a Graph")
            gmap[giri] = graph
        self._graphs = MappingProxyType(gmap)

    @property
    def graphs(self) -> Mapping[Iri, Graph]:
        return self._graphs

    def graph(self, name: Iri) -> Graph | None:
        return self._graphs.get(name)

    def __len__(self) -> int:
        return len(self._graphs)

    def __contains__(self, name: Iri) -> bool:
        return name in self._graphs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return dict(self._graphs) == dict(other._graphs)

    def __repr__(self) -> str:
        return f"Dataset({len(self._graphs)} graphs)"

    def items(self) -> list[tuple[Iri, Graph]]:
        """Named graphs sorted by graph IRI (deterministic iteration order)."""
        return sorted(self._graphs.items(), key=lambda kv: kv[0].value)

    def union(self) -> Graph:
        """All triples of all named graphs as one graph.

        Prefixes are merged in graph-IRI order; the first definition of a
        short name wins, so the result is deterministic.
        """
        triples: set[Triple] = set()
        prefixes: dict[str, Iri] = {}
        for _, graph in self.items():
            triples.update(graph.triples)
            for name, ns in graph.prefixes.items():
                prefixes.setdefault(name, ns)
        return Graph(triples, prefixes)
