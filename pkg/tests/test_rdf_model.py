import pytest

from ssnforge.rdf import (
    RDF_LANG_STRING,
    XSD_STRING,
    BlankNode,
    Dataset,
    Graph,
    Iri,
    Literal,
    Triple,
)


class TestIri:
    @pytest.mark.parametrize(
        "value",
        [
            "http://example.org/oi/types/weatherstation",
            "urn:x-demo:thing",
            "tag:a",
            "http://ex.test/a#x-y_z.w",
        ],
    )
    def test_accepts_absolute_iris(self, value):
        assert Iri(value).value == value

    @pytest.mark.parametrize(
        "value",
        ["", "no-scheme", "http://a b/c", "http://a/<x>", "http://a/\tx", "1http://a/", ":rest"],
    )
    def test_rejects_malformed(self, value):
        with pytest.raises(ValueError):
            Iri(value)


class TestLiteral:
    def test_default_datatype_is_xsd_string(self):
        assert Literal("x").datatype.value == XSD_STRING
        assert Literal("x").lang is None

    def test_lang_tag_coerces_datatype(self):
        lit = Literal("hello", lang="en-GB")
        assert lit.datatype.value == RDF_LANG_STRING

    def test_lang_tag_with_other_datatype_rejected(self):
        with pytest.raises(ValueError):
            Literal("x", Iri("http://ex.test/a#dt"), lang="en")

    def test_lang_string_datatype_requires_tag(self):
        with pytest.raises(ValueError):
            Literal("x", Iri(RDF_LANG_STRING))

    @pytest.mark.parametrize("tag", ["", "en_US", "-en", "en-", "42"])
    def test_malformed_lang_tags(self, tag):
        with pytest.raises(ValueError):
            Literal("x", lang=tag)

    def test_lexical_form_is_kept_verbatim(self):
        assert Literal("01", Iri("http://www.w3.org/2001/XMLSchema#integer")).lexical == "01"


class TestBlankNode:
    def test_valid_labels(self):
        assert BlankNode("b0").label == "b0"
        assert BlankNode("_9_Z").label == "_9_Z"

    @pytest.mark.parametrize("label", ["", "a-b", "a.b", "a b", "é"])
    def test_invalid_labels(self, label):
        with pytest.raises(ValueError):
            BlankNode(label)


class TestTriple:
    def test_literal_subject_rejected(self):
        with pytest.raises(TypeError):
            Triple(Literal("x"), Iri("http://a/p"), Iri("http://a/o"))

    def test_non_iri_predicate_rejected(self):
        with pytest.raises(TypeError):
            Triple(Iri("http://a/s"), BlankNode("b"), Iri("http://a/o"))
        with pytest.raises(TypeError):
            Triple(Iri("http://a/s"), Literal("p"), Iri("http://a/o"))


class TestGraph:
    def test_duplicate_insertion_is_noop(self):
        t = Triple(Iri("http://a/s"), Iri("http://a/p"), Literal("x"))
        g = Graph([t, t, Triple(Iri("http://a/s"), Iri("http://a/p"), Literal("x"))])
        assert len(g) == 1

    def test_match_wildcards(self):
        s, p = Iri("http://a/s"), Iri("http://a/p")
        g = Graph([Triple(s, p, Literal("1")), Triple(s, p, Literal("2")), Triple(s, Iri("http://a/q"), Literal("1"))])
        assert len(list(g.match(subject=s))) == 3
        assert len(list(g.match(predicate=p))) == 2
        assert len(list(g.match(object=Literal("1")))) == 2
        assert len(list(g.match(predicate=p, object=Literal("2")))) == 1

    def test_prefix_names_validated(self):
        with pytest.raises(ValueError):
            Graph(prefixes={"bad name": Iri("http://a/")})
        g = Graph(prefixes={"": Iri("http://a/"), "ex-1": Iri("http://b/")})
        assert g.prefixes[""].value == "http://a/"

    def test_prefix_map_is_read_only(self):
        g = Graph(prefixes={"ex": Iri("http://a/")})
        with pytest.raises(TypeError):
            g.prefixes["ex"] = Iri("http://b/")

    def test_union_prefers_own_prefixes(self):
        a = Graph([Triple(Iri("http://a/s"), Iri("http://a/p"), Literal("1"))], {"ex": Iri("http://a/")})
        b = Graph([Triple(Iri("http://b/s"), Iri("http://b/p"), Literal("2"))], {"ex": Iri("http://b/")})
        u = a.union(b)
        assert len(u) == 2
        assert u.prefixes["ex"].value == "http://a/"


class TestDataset:
    def test_items_sorted_by_graph_iri(self):
        g = Graph([Triple(Iri("http://a/s"), Iri("http://a/p"), Literal("x"))])
        d = Dataset({Iri("http://z/g"): g, Iri("http://a/g"): g})
        assert [giri.value for giri, _ in d.items()] == ["http://a/g", "http://z/g"]

    def test_union_merges_triples_and_prefixes_deterministically(self):
        g1 = Graph([Triple(Iri("http://a/s"), Iri("http://a/p"), Literal("1"))], {"ex": Iri("http://first/")})
        g2 = Graph([Triple(Iri("http://b/s"), Iri("http://b/p"), Literal("2"))], {"ex": Iri("http://second/")})
        d = Dataset({Iri("http://a/g"): g1, Iri("http://b/g"): g2})
        u = d.union()
        assert len(u) == 2
        # first graph in IRI order wins the short name
        assert u.prefixes["ex"].value == "http://first/"
