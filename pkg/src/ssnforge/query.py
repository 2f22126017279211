"""SPARQL-subset query language: SELECT over basic graph patterns.

Grammar (keywords case-insensitive)::

    query   := prefix* 'SELECT' ('*' | var+) 'WHERE' '{' patterns filter* '}'
    prefix  := 'PREFIX' name ':' '<' iri '>'
    patterns:= pattern ('.' pattern)* '.'?
    pattern := term term term
    filter  := 'FILTER' '(' var ('=' | '!=') constant ')'

Terms are variables (?name), IRIs, prefixed names, 'a' (predicate position),
or literals (quoted, numeric, boolean). Evaluation is a nested-loop join
with binding propagation; filters run after the joins; results are
deduplicated and sorted by the canonical serialization of their terms, so
output order is deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Optional, Union

from .rdf import RDF_TYPE, XSD_STRING, BlankNode, Dataset, Graph, Iri, Literal, ParseError, Term, UndefinedPrefixError
from .rdf._scan import Scanner
from .rdf.nt import term_to_ntriples

MAX_PATTERNS = 8

_XSD = "http://www.w3.org/2001/XMLSchema#"
_PNAME_HEAD = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_"
_PNAME_REST = _PNAME_HEAD + "0123456789-"
_VAR_CHARS = _PNAME_HEAD + "0123456789"

_NUMERIC_FORMS = (
    (re.compile(r"[+-]?(?:\d+\.\d*|\.\d+|\d+)[eE][+-]?\d+"), "double"),
    (re.compile(r"[+-]?\d*\.\d+"), "decimal"),
    (re.compile(r"[+-]?\d+"), "integer"),
)


@dataclass(frozen=True, slots=True)
class Variable:
    name: str


PatternTerm = Union[Variable, Iri, Literal]


@dataclass(frozen=True, slots=True)
class TriplePattern:
    s: PatternTerm
    p: Union[Variable, Iri]
    o: PatternTerm


@dataclass(frozen=True, slots=True)
class Filter:
    var: str
    op: str  # "=" or "!="
    term: Term


@dataclass(frozen=True, slots=True)
class Query:
    prefixes: tuple[tuple[str, Iri], ...]
    select: Optional[tuple[str, ...]]  # None means SELECT *
    patterns: tuple[TriplePattern, ...]
    filters: tuple[Filter, ...] = ()


@dataclass(frozen=True, slots=True)
class BindingSet:
    """Solution rows; every row binds exactly `vars`, sorted canonically."""

    vars: tuple[str, ...]
    rows: tuple[dict[str, Term], ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "vars": list(self.vars),
            "rows": [{name: _term_json(row[name]) for name in self.vars} for row in self.rows],
        }


def _term_json(term: Term) -> dict[str, Any]:
    if isinstance(term, Iri):
        return {"type": "iri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    out: dict[str, Any] = {"type": "literal", "value": term.lexical}
    if term.lang is not None:
        out["lang"] = term.lang
    elif term.datatype.value != XSD_STRING:
        out["datatype"] = term.datatype.value
    return out


class _QueryParser:
    def __init__(self, text: str):
        self.sc = Scanner(text)
        self.prefixes: dict[str, Iri] = {}

    def parse(self) -> Query:
        sc = self.sc
        while True:
            sc.skip_ws()
            if not self._keyword_ahead("PREFIX"):
                break
            self._parse_prefix()
        sc.skip_ws()
        self._expect_keyword("SELECT")
        select, select_positions = self._parse_select()
        sc.skip_ws()
        self._expect_keyword("WHERE")
        sc.skip_ws()
        sc.expect("{", "'{' opening the pattern group")
        patterns, filters, filter_positions = self._parse_group()
        sc.skip_ws()
        if not sc.at_end():
            sc.error("end of query")

        pattern_vars = {
            part.name
            for pat in patterns
            for part in (pat.s, pat.p, pat.o)
            if isinstance(part, Variable)
        }
        if select is not None:
            for name, (line, col) in zip(select, select_positions):
                if name not in pattern_vars:
                    raise ParseError(f"selected variable ?{name} is not bound by any pattern", line, col)
        for f, (line, col) in zip(filters, filter_positions):
            if f.var not in pattern_vars:
                raise ParseError(f"filter variable ?{f.var} is not bound by any pattern", line, col)
        return Query(
            prefixes=tuple(sorted(self.prefixes.items())),
            select=select,
            patterns=tuple(patterns),
            filters=tuple(filters),
        )

    # -- lexical helpers

    def _keyword_ahead(self, word: str) -> bool:
        sc = self.sc
        end = sc.pos + len(word)
        if sc.text[sc.pos:end].upper() != word:
            return False
        return end >= len(sc.text) or sc.text[end] not in _VAR_CHARS

    def _expect_keyword(self, word: str) -> None:
        if not self._keyword_ahead(word):
            self.sc.error(f"'{word}'")
        for _ in word:
            self.sc.advance()

    def _parse_prefix(self) -> None:
        sc = self.sc
        self._expect_keyword("PREFIX")
        sc.skip_ws()
        line, col = sc.line, sc.column
        name = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
        if sc.peek() != ":":
            sc.error_at("prefix declaration ('name:')", line, col)
        sc.advance()
        sc.skip_ws()
        body = sc.read_iriref_body()
        try:
            self.prefixes[name] = Iri(body)
        except ValueError:
            sc.error_at("absolute namespace IRI", line, col)

    def _parse_select(self) -> tuple[Optional[tuple[str, ...]], list[tuple[int, int]]]:
        sc = self.sc
        sc.skip_ws()
        if sc.try_consume("*"):
            return None, []
        names: list[str] = []
        positions: list[tuple[int, int]] = []
        while True:
            sc.skip_ws()
            if sc.peek() != "?":
                break
            positions.append((sc.line, sc.column))
            names.append(self._variable().name)
        if not names:
            sc.error("'*' or at least one ?variable")
        return tuple(names), positions

    def _variable(self) -> Variable:
        sc = self.sc
        sc.expect("?", "?variable")
        line, col = sc.line, sc.column
        name = sc.read_while(_VAR_CHARS)
        if not name:
            sc.error_at("variable name", line, col)
        return Variable(name)

    def _prefixed_name(self) -> Iri:
        sc = self.sc
        line, col = sc.line, sc.column
        word = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
        if sc.peek() != ":":
            sc.error_at("prefixed name", line, col)
        sc.advance()
        if word not in self.prefixes:
            raise UndefinedPrefixError(word, line, col)
        local = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
        return Iri(self.prefixes[word].value + local)

    def _iri(self) -> Iri:
        sc = self.sc
        line, col = sc.line, sc.column
        body = sc.read_iriref_body()
        try:
            return Iri(body)
        except ValueError:
            sc.error_at("absolute IRI", line, col)

    def _literal(self) -> Literal:
        sc = self.sc
        lexical = sc.read_quoted_string()
        if sc.peek() == "@":
            sc.advance()
            return Literal(lexical, lang=sc.read_lang_tag())
        if sc.try_consume("^^"):
            if sc.peek() == "<":
                return Literal(lexical, self._iri())
            return Literal(lexical, self._prefixed_name())
        return Literal(lexical)

    def _constant(self) -> Term:
        """An IRI, prefixed name, or literal (no variables)."""
        sc = self.sc
        c = sc.peek()
        if c == "<":
            return self._iri()
        if c == '"':
            return self._literal()
        if c.isdigit() or (c in "+-" and (sc.peek(1).isdigit() or sc.peek(1) == ".")) or (c == "." and sc.peek(1).isdigit()):
            return self._numeric()
        if c in _PNAME_HEAD or c == ":":
            return self._word_term()
        sc.error("IRI, prefixed name, or literal")

    def _word_term(self) -> Term:
        sc = self.sc
        line, col = sc.line, sc.column
        word = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
        if sc.peek() == ":":
            sc.advance()
            if word not in self.prefixes:
                raise UndefinedPrefixError(word, line, col)
            local = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
            return Iri(self.prefixes[word].value + local)
        if word in ("true", "false"):
            return Literal(word, Iri(_XSD + "boolean"))
        sc.error_at("prefixed name", line, col)

    def _numeric(self) -> Literal:
        sc = self.sc
        for regex, xsd_type in _NUMERIC_FORMS:
            m = regex.match(sc.text, sc.pos)
            if m:
                for _ in range(m.end() - sc.pos):
                    sc.advance()
                return Literal(m.group(), Iri(_XSD + xsd_type))
        sc.error("numeric literal")

    # -- grammar productions

    def _pattern_term(self, *, predicate: bool) -> PatternTerm:
        sc = self.sc
        c = sc.peek()
        if c == "?":
            return self._variable()
        if c == "<":
            return self._iri()
        if not predicate and c == '"':
            return self._literal()
        if not predicate and (
            c.isdigit() or (c in "+-" and (sc.peek(1).isdigit() or sc.peek(1) == ".")) or (c == "." and sc.peek(1).isdigit())
        ):
            return self._numeric()
        if c in _PNAME_HEAD or c == ":":
            if predicate:
                line, col = sc.line, sc.column
                word = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
                if sc.peek() == ":":
                    sc.advance()
                    if word not in self.prefixes:
                        raise UndefinedPrefixError(word, line, col)
                    local = sc.read_while(_PNAME_REST) if sc.peek() in _PNAME_HEAD else ""
                    return Iri(self.prefixes[word].value + local)
                if word == "a":
                    return Iri(RDF_TYPE)
                sc.error_at("predicate (?variable, IRI, prefixed name, or 'a')", line, col)
            term = self._word_term()
            return term
        kind = "predicate (?variable, IRI, prefixed name, or 'a')" if predicate else "term (?variable, IRI, prefixed name, or literal)"
        sc.error(kind)

    def _parse_group(self) -> tuple[list[TriplePattern], list[Filter], list[tuple[int, int]]]:
        sc = self.sc
        patterns: list[TriplePattern] = []
        filters: list[Filter] = []
        filter_positions: list[tuple[int, int]] = []
        while True:
            sc.skip_ws()
            if not patterns or (not self._keyword_ahead("FILTER") and sc.peek() != "}"):
                start_line, start_col = sc.line, sc.column
                s = self._pattern_term(predicate=False)
                sc.skip_ws()
                p = self._pattern_term(predicate=True)
                sc.skip_ws()
                o = self._pattern_term(predicate=False)
                patterns.append(TriplePattern(s, p, o))
                if len(patterns) > MAX_PATTERNS:
                    raise ParseError(f"at most {MAX_PATTERNS} triple patterns are supported", start_line, start_col)
                sc.skip_ws()
                if sc.try_consume("."):
                    continue
            sc.skip_ws()
            while self._keyword_ahead("FILTER"):
                line, col = sc.line, sc.column
                filters.append(self._parse_filter())
                filter_positions.append((line, col))
                sc.skip_ws()
            sc.expect("}", "'}' closing the pattern group")
            return patterns, filters, filter_positions

    def _parse_filter(self) -> Filter:
        sc = self.sc
        self._expect_keyword("FILTER")
        sc.skip_ws()
        sc.expect("(", "'(' after FILTER")
        sc.skip_ws()
        var = self._variable()
        sc.skip_ws()
        if sc.try_consume("!="):
            op = "!="
        elif sc.try_consume("="):
            op = "="
        else:
            sc.error("'=' or '!='")
        sc.skip_ws()
        term = self._constant()
        sc.skip_ws()
        sc.expect(")", "')' closing the FILTER")
        return Filter(var.name, op, term)


def parse_query(text: str) -> Query:
    """Parse a query. Raises ParseError / UndefinedPrefixError with positions."""
    return _QueryParser(text).parse()


def _match_pattern(graph: Graph, pattern: TriplePattern, binding: dict[str, Term]):
    """Extend `binding` over every graph triple matching the pattern."""

    def resolve(part: PatternTerm) -> Optional[Term]:
        if isinstance(part, Variable):
            return binding.get(part.name)
        return part

    want_s, want_p, want_o = resolve(pattern.s), resolve(pattern.p), resolve(pattern.o)
    if isinstance(want_s, Literal) or isinstance(want_p, (Literal, BlankNode)):
        return  # positions a literal (or blank predicate) can never occupy
    for t in graph.match(subject=want_s, predicate=want_p, object=want_o):
        extended = dict(binding)
        consistent = True
        for part, term in ((pattern.s, t.subject), (pattern.p, t.predicate), (pattern.o, t.object)):
            if isinstance(part, Variable):
                bound = extended.get(part.name)
                if bound is None:
                    extended[part.name] = term
                elif bound != term:
                    consistent = False
                    break
        if consistent:
            yield extended


def evaluate(q: Query, scope: Union[Graph, Dataset]) -> BindingSet:
    """Left-to-right nested-loop join over the graph (or union of named graphs)."""
    graph = scope.union() if isinstance(scope, Dataset) else scope

    rows: list[dict[str, Term]] = [{}]
    for pattern in q.patterns:
        rows = [extended for binding in rows for extended in _match_pattern(graph, pattern, binding)]
        if not rows:
            break

    for f in q.filters:
        rows = [row for row in rows if (row[f.var] == f.term) == (f.op == "=")]

    if q.select is None:
        select: list[str] = []
        for pat in q.patterns:
            for part in (pat.s, pat.p, pat.o):
                if isinstance(part, Variable) and part.name not in select:
                    select.append(part.name)
    else:
        select = list(q.select)

    projected: dict[tuple[str, ...], dict[str, Term]] = {}
    for row in rows:
        slim = {name: row[name] for name in select}
        projected[tuple(term_to_ntriples(slim[name]) for name in select)] = slim
    ordered = [projected[key] for key in sorted(projected)]
    return BindingSet(vars=tuple(select), rows=tuple(ordered))
