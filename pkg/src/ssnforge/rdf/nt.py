"""N-Triples and N-Quads: the canonical line-based syntaxes.

Serialization is canonical: one statement per line, full IRIs, literal
escapes limited to \\ \" \\n \\r \\t, lines sorted lexicographically, LF
endings. The parsers accept any statement order and '#' comments.
"""

from __future__ import annotations

from .errors import ParseError
from ._scan import Scanner
from .model import XSD_STRING, BlankNode, Dataset, Graph, Iri, Literal, Term, Triple

_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape_lexical(text: str) -> str:
    return "".join(_LITERAL_ESCAPES.get(c, c) for c in text)


def term_to_ntriples(term: Term) -> str:
    """Render one term in N-Triples syntax (also the canonical sort key form)."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        quoted = f'"{_escape_lexical(term.lexical)}"'
        if term.lang is not None:
            return f"{quoted}@{term.lang}"
        if term.datatype.value == XSD_STRING:
            return quoted
        return f"{quoted}^^<{term.datatype.value}>"
    raise TypeError(f"not an RDF term: {type(term).__name__}")


def _triple_line(t: Triple) -> str:
    return f"{term_to_ntriples(t.subject)} {term_to_ntriples(t.predicate)} {term_to_ntriples(t.object)} ."


def serialize_ntriples(g: Graph) -> str:
    lines = sorted(_triple_line(t) for t in g)
    return "\n".join(lines) + "\n" if lines else ""


def serialize_nquads(d: Dataset) -> str:
    lines = []
    for graph_iri, graph in d.items():
        tag = f"<{graph_iri.value}>"
        for t in graph:
            lines.append(f"{_triple_line(t)[:-2]} {tag} .")
    lines.sort()
    return "\n".join(lines) + "\n" if lines else ""


def _parse_subject(sc: Scanner) -> Iri | BlankNode:
    c = sc.peek()
    if c == "<":
        return _parse_iri(sc)
    if c == "_":
        return _parse_blank(sc)
    sc.error("IRI or blank node")


def _parse_iri(sc: Scanner) -> Iri:
    line, col = sc.line, sc.column
    body = sc.read_iriref_body()
    try:
        return Iri(body)
    except ValueError:
        sc.error_at("absolute IRI", line, col)


def _parse_blank(sc: Scanner) -> BlankNode:
    sc.expect("_:", "blank node label")
    line, col = sc.line, sc.column
    label = sc.read_while("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_")
    if not label:
        sc.error_at("blank node label", line, col)
    return BlankNode(label)


def _parse_object(sc: Scanner) -> Term:
    c = sc.peek()
    if c == "<":
        return _parse_iri(sc)
    if c == "_":
        return _parse_blank(sc)
    if c == '"':
        lexical = sc.read_quoted_string()
        if sc.peek() == "@":
            sc.advance()
            return Literal(lexical, lang=sc.read_lang_tag())
        if sc.try_consume("^^"):
            if sc.peek() != "<":
                sc.error("datatype IRI")
            dt = _parse_iri(sc)
            line, col = sc.line, sc.column
            try:
                return Literal(lexical, dt)
            except ValueError:
                sc.error_at("well-formed literal", line, col)
        return Literal(lexical)
    sc.error("IRI, blank node, or literal")


def _parse_statements(doc: str, *, quads: bool):
    """Yield (subject, predicate, object[, graph]) tuples from an N-Triples/N-Quads doc."""
    sc = Scanner(doc)
    while True:
        sc.skip_ws()
        if sc.at_end():
            return
        subject = _parse_subject(sc)
        sc.skip_ws(comments=False)
        if sc.peek() != "<":
            sc.error("predicate IRI")
        predicate = _parse_iri(sc)
        sc.skip_ws(comments=False)
        obj = _parse_object(sc)
        sc.skip_ws(comments=False)
        if quads:
            if sc.peek() != "<":
                sc.error("graph IRI (every statement must name its graph)")
            graph_iri = _parse_iri(sc)
            sc.skip_ws(comments=False)
            sc.expect(".", "'.' terminating the statement")
            yield subject, predicate, obj, graph_iri
        else:
            sc.expect(".", "'.' terminating the statement")
            yield subject, predicate, obj


def parse_ntriples(doc: str) -> Graph:
    """Parse an N-Triples document. Raises ParseError with the failing line."""
    return Graph(Triple(s, p, o) for s, p, o in _parse_statements(doc, quads=False))


def parse_nquads(doc: str) -> Dataset:
    """Parse an N-Quads document into named graphs. Raises ParseError with the failing line."""
    grouped: dict[Iri, set[Triple]] = {}
    for s, p, o, g in _parse_statements(doc, quads=True):
        grouped.setdefault(g, set()).add(Triple(s, p, o))
    return Dataset({giri: Graph(triples) for giri, triples in grouped.items()})
