"""RDF data model with deterministic Turtle, N-Triples, and N-Quads round-tripping."""

from .compare import graph_equal
from .errors import ParseError, UndefinedPrefixError
from .model import (
    RDF_LANG_STRING,
    RDF_TYPE,
    XSD_STRING,
    BlankNode,
    Dataset,
    Graph,
    Iri,
    Literal,
    SubjectTerm,
    Term,
    Triple,
)
from .nt import parse_nquads, parse_ntriples, serialize_nquads, serialize_ntriples, term_to_ntriples
from .turtle import parse_turtle, serialize_turtle

__all__ = [
    "BlankNode",
    "Dataset",
    "Graph",
    "Iri",
    "Literal",
    "ParseError",
    "RDF_LANG_STRING",
    "RDF_TYPE",
    "SubjectTerm",
    "Term",
    "Triple",
    "UndefinedPrefixError",
    "XSD_STRING",
    "graph_equal",
    "parse_nquads",
    "parse_ntriples",
    "parse_turtle",
    "serialize_nquads",
    "serialize_ntriples",
    "serialize_turtle",
    "term_to_ntriples",
]
