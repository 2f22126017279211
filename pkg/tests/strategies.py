"""Hypothesis strategies for RDF values within the supported subset."""

from __future__ import annotations

import string

import hypothesis.strategies as st

from ssnforge.rdf import BlankNode, Graph, Iri, Literal, Triple

NAMESPACE_POOL = (
    "http://ex.test/a#",
    "http://ex.test/b/",
    "http://vocab.test/core#",
    "urn:x-demo:",
)

_LOCAL_HEAD = string.ascii_letters + "_"
_LOCAL_REST = _LOCAL_HEAD + string.digits + "-"

# Compactable locals match the serializer's prefixed-name shape; awkward ones
# (dots, leading digits, percent signs) force the angle-bracket form.
compactable_locals = st.builds(
    lambda head, rest: head + rest,
    st.sampled_from(_LOCAL_HEAD),
    st.text(alphabet=_LOCAL_REST, max_size=8),
)
awkward_locals = st.builds(
    lambda head, rest: head + rest,
    st.sampled_from(string.digits + "."),
    st.text(alphabet=_LOCAL_REST + ".~%", max_size=6),
)

iris = st.builds(
    lambda ns, local: Iri(ns + local),
    st.sampled_from(NAMESPACE_POOL),
    st.one_of(compactable_locals, awkward_locals),
)

lang_tags = st.from_regex(r"[A-Za-z]{1,5}(-[A-Za-z0-9]{1,4}){0,2}", fullmatch=True)
lexicals = st.text(max_size=40)

plain_literals = st.builds(Literal, lexicals)
typed_literals = st.builds(Literal, lexicals, iris)
tagged_literals = st.builds(lambda lex, tag: Literal(lex, lang=tag), lexicals, lang_tags)
literals = st.one_of(plain_literals, typed_literals, tagged_literals)

blank_nodes = st.builds(BlankNode, st.from_regex(r"[A-Za-z0-9_]{1,8}", fullmatch=True))

subjects = st.one_of(iris, blank_nodes)
objects = st.one_of(iris, blank_nodes, literals)
triples = st.builds(Triple, subjects, iris, objects)

prefix_names = st.one_of(st.just(""), st.from_regex(r"[A-Za-z][A-Za-z0-9_\-]{0,5}", fullmatch=True))


@st.composite
def graphs(draw, max_triples: int = 25) -> Graph:
    ts = draw(st.lists(triples, max_size=max_triples))
    names = draw(st.lists(prefix_names, max_size=4, unique=True))
    spaces = draw(st.lists(st.sampled_from(NAMESPACE_POOL), min_size=len(names), max_size=len(names)))
    return Graph(ts, {name: Iri(ns) for name, ns in zip(names, spaces)})
