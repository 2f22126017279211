"""Turtle subset: deterministic serializer and parser.

Serializer output is canonical: prefix directives sorted by short name,
subject blocks sorted by rendered subject (blank nodes after IRIs),
predicates sorted within a subject and objects within a predicate, ';'/','
grouping, rdf:type written as 'a', IRIs compacted to prefixed names when a
registered namespace prefixes them and the remainder is a valid local name.
Literals always use the quoted form (the parser additionally accepts
integer/decimal/double/boolean shorthand on input).
"""

from __future__ import annotations

import re

from .errors import UndefinedPrefixError
from ._scan import Scanner
from .model import RDF_TYPE, XSD_STRING, BlankNode, Graph, Iri, Literal, Term, Triple
from .nt import _escape_lexical

_XSD = "http://www.w3.org/2001/XMLSchema#"
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_LOCAL_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_\-]*)?$")

_PNAME_HEAD = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_"
_PNAME_REST = _PNAME_HEAD + "0123456789-"
_BLANK_CHARS = _PNAME_HEAD + "0123456789"

_DOUBLE_RE = re.compile(r"[+-]?(?:\d+\.\d*|\.\d+|\d+)[eE][+-]?\d+")
_DECIMAL_RE = re.compile(r"[+-]?\d*\.\d+")
_INTEGER_RE = re.compile(r"[+-]?\d+")


# ---------------------------------------------------------------------------
# serializer


def _compactor(prefixes: dict[str, Iri]):
    """Build iri -> rendered-name function preferring the longest namespace,
    breaking ties on the smallest short name."""

    table = sorted(((ns.value, name) for name, ns in prefixes.items()), key=lambda e: (-len(e[0]), e[1]))

    def compact(iri: Iri) -> str:
        for ns_value, name in table:
            if iri.value.startswith(ns_value):
                local = iri.value[len(ns_value):]
                if _LOCAL_NAME_RE.match(local):
                    return f"{name}:{local}"
        return f"<{iri.value}>"

    return compact


def serialize_turtle(g: Graph) -> str:
    prefixes = dict(g.prefixes)
    compact = _compactor(prefixes)

    def render(term: Term) -> str:
        if isinstance(term, Iri):
            return compact(term)
        if isinstance(term, BlankNode):
            return f"_:{term.label}"
        quoted = f'"{_escape_lexical(term.lexical)}"'
        if term.lang is not None:
            return f"{quoted}@{term.lang}"
        if term.datatype.value == XSD_STRING:
            return quoted
        return f"{quoted}^^{compact(term.datatype)}"

    def render_predicate(p: Iri) -> str:
        return "a" if p.value == RDF_TYPE else compact(p)

    by_subject: dict[Triple, dict] = {}
    grouped: dict[str, tuple[bool, dict[str, list[str]]]] = {}
    for t in g:
        skey = render(t.subject)
        _, preds = grouped.setdefault(skey, (isinstance(t.subject, BlankNode), {}))
        preds.setdefault(render_predicate(t.predicate), []).append(render(t.object))

    blocks = []
    for skey in sorted(grouped, key=lambda k: (grouped[k][0], k)):
        _, preds = grouped[skey]
        pred_parts = []
        for pkey in sorted(preds):
            objects = ", ".join(sorted(preds[pkey]))
            pred_parts.append(f"{pkey} {objects}")
        blocks.append(f"{skey} " + " ;\n    ".join(pred_parts) + " .")

    parts = []
    if prefixes:
        parts.append("\n".join(f"@prefix {name}: <{ns.value}> ." for name, ns in sorted(prefixes.items())))
    parts.extend(blocks)
    return "\n\n".join(parts) + "\n" if parts else ""


# ---------------------------------------------------------------------------
# parser


class _TurtleParser:
    def __init__(self, doc: str):
        self.sc = Scanner(doc)
        self.prefixes: dict[str, Iri] = {}
        self.base: str | None = None
        self.triples: set[Triple] = set()

    def parse(self) -> Graph:
        sc = self.sc
        while True:
            sc.skip_ws()
            if sc.at_end():
                break
            if sc.peek() == "@":
                self._directive()
            else:
                self._triples_block()
        return Graph(self.triples, self.prefixes)

    def _directive(self) -> None:
        sc = self.sc
        if sc.try_consume("@prefix"):
            sc.skip_ws()
            line, col = sc.line, sc.column
            name = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
            if sc.peek() != ":":
                sc.error_at("prefix declaration ('name:')", line, col)
            sc.advance()
            sc.skip_ws()
            ns = self._iriref()
            sc.skip_ws()
            sc.expect(".", "'.' terminating the @prefix directive")
            self.prefixes[name] = ns
        elif sc.try_consume("@base"):
            sc.skip_ws()
            base = self._iriref()
            sc.skip_ws()
            sc.expect(".", "'.' terminating the @base directive")
            self.base = base.value
        else:
            sc.error("'@prefix' or '@base' directive")

    def _iriref(self) -> Iri:
        """An IRIREF, resolved against @base by plain concatenation when relative."""
        sc = self.sc
        line, col = sc.line, sc.column
        body = sc.read_iriref_body()
        if not _SCHEME_RE.match(body):
            if self.base is None:
                sc.error_at("absolute IRI (no @base in effect)", line, col)
            body = self.base + body
        try:
            return Iri(body)
        except ValueError:
            sc.error_at("well-formed absolute IRI", line, col)

    def _prefixed_name(self, keywords: tuple[str, ...] = ()) -> Iri | str:
        """A prefixed name, or one of `keywords` when the bare word matches."""
        sc = self.sc
        line, col = sc.line, sc.column
        word = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
        if sc.peek() == ":":
            sc.advance()
            if word not in self.prefixes:
                raise UndefinedPrefixError(word, line, col)
            local = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
            return Iri(self.prefixes[word].value + local)
        if word in keywords:
            return word
        sc.error_at("prefixed name", line, col)

    def _blank(self) -> BlankNode:
        sc = self.sc
        sc.expect("_:", "blank node label")
        line, col = sc.line, sc.column
        label = sc.read_while(_BLANK_CHARS)
        if not label:
            sc.error_at("blank node label", line, col)
        return BlankNode(label)

    def _subject(self) -> Iri | BlankNode:
        c = self.sc.peek()
        if c == "<":
            return self._iriref()
        if c == "_":
            return self._blank()
        if c in _PNAME_HEAD or c == ":":
            return self._prefixed_name()
        self.sc.error("subject (IRI, prefixed name, or blank node)")

    def _predicate(self) -> Iri:
        c = self.sc.peek()
        if c == "<":
            return self._iriref()
        if c in _PNAME_HEAD or c == ":":
            got = self._prefixed_name(keywords=("a",))
            return Iri(RDF_TYPE) if got == "a" else got
        self.sc.error("predicate (IRI, prefixed name, or 'a')")

    def _object(self) -> Term:
        sc = self.sc
        c = sc.peek()
        if c == "<":
            return self._iriref()
        if c == "_":
            return self._blank()
        if c == '"':
            return self._literal()
        if (
            c.isdigit()
            or (c in "+-" and (sc.peek(1).isdigit() or sc.peek(1) == "."))
            or (c == "." and sc.peek(1).isdigit())
        ):
            return self._numeric()
        if c in _PNAME_HEAD or c == ":":
            got = self._prefixed_name(keywords=("true", "false"))
            if isinstance(got, str):
                return Literal(got, Iri(_XSD + "boolean"))
            return got
        sc.error("object (IRI, prefixed name, blank node, or literal)")

    def _literal(self) -> Literal:
        sc = self.sc
        lexical = sc.read_quoted_string()
        if sc.peek() == "@":
            sc.advance()
            return Literal(lexical, lang=sc.read_lang_tag())
        if sc.try_consume("^^"):
            line, col = sc.line, sc.column
            if sc.peek() == "<":
                dt = self._iriref()
            elif sc.peek() in _PNAME_HEAD or sc.peek() == ":":
                dt = self._prefixed_name()
            else:
                sc.error("datatype (IRI or prefixed name)")
            try:
                return Literal(lexical, dt)
            except ValueError:
                sc.error_at("well-formed literal", line, col)
        return Literal(lexical)

    def _numeric(self) -> Literal:
        sc = self.sc
        text, pos = sc.text, sc.pos
        for regex, xsd_type in ((_DOUBLE_RE, "double"), (_DECIMAL_RE, "decimal"), (_INTEGER_RE, "integer")):
            m = regex.match(text, pos)
            if m:
                for _ in range(m.end() - pos):
                    sc.advance()
                return Literal(m.group(), Iri(_XSD + xsd_type))
        sc.error("numeric literal")

    def _triples_block(self) -> None:
        sc = self.sc
        subject = self._subject()
        while True:
            sc.skip_ws()
            predicate = self._predicate()
            while True:
                sc.skip_ws()
                self.triples.add(Triple(subject, predicate, self._object()))
                sc.skip_ws()
                if sc.peek() == ",":
                    sc.advance()
                    continue
                break
            saw_semicolon = False
            while sc.peek() == ";":
                sc.advance()
                sc.skip_ws()
                saw_semicolon = True
            if saw_semicolon and sc.peek() != ".":
                continue
            break
        sc.expect(".", "'.' terminating the subject block")


def parse_turtle(doc: str) -> Graph:
    """Parse the Turtle subset. Raises ParseError / UndefinedPrefixError with positions."""
    return _TurtleParser(doc).parse()
