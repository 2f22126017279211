import json
import random

import pytest

from ssnforge.ontology import (
    BAD_FIELD_NAME,
    BAD_SLUG,
    BINDING_MISMATCH,
    CAP_UNKNOWN_PROPERTY,
    DUP_FIELD,
    DUP_PROPERTY,
    EMPTY_OBSERVES,
    LAT_RANGE,
    LON_RANGE,
    NEG_ACCURACY,
    NONPOS_FREQUENCY,
    BadSlug,
    InvalidInstance,
    InvalidType,
    Measurement,
    MeasurementCapability,
    Namespaces,
    ObservedProperty,
    PropertyBinding,
    SensorInstance,
    SensorType,
    ShapeError,
    TypeMismatch,
    UNIT_PERCENT,
    instance_from_json,
    instance_to_graph,
    instance_to_json,
    mint_iri,
    resolve_feature_of_interest,
    slugify,
    type_from_json,
    type_to_graph,
    type_to_json,
    validate_instance,
    validate_type,
)
from ssnforge.rdf import Iri, Literal, Triple, graph_equal, parse_turtle, serialize_ntriples, serialize_turtle

from .fixtures import (
    AIR_TEMPERATURE,
    HUMIDITY,
    demo_instance,
    demo_instance_json,
    weather_station,
    weather_station_json,
)
from .oracles import enumerate_instance_rules, enumerate_type_rules
from .randgen import random_instance, random_type

NS = Namespaces()


def codes(violations):
    return [v.code for v in violations]


class TestSlugsAndMinting:
    def test_slugify(self):
        assert slugify("AirTemperature") == "airtemperature"
        assert slugify("Crop Growth!") == "crop-growth"
        assert slugify("--x--") == "x"
        assert slugify("***") == ""

    def test_mint_iri_examples(self):
        assert mint_iri("type", ["weatherstation"], NS).value == "http://example.org/oi/types/weatherstation"
        assert mint_iri("instance", ["demo-weatherstation"], NS).value == "http://example.org/oi/sensors/demo-weatherstation"
        assert mint_iri("foi", ["crop-growth"], NS).value == "http://example.org/oi/foi/crop-growth"

    def test_mint_lowercases_parts(self):
        assert mint_iri("type", ["WeatherStation"], NS).value.endswith("types/weatherstation")

    def test_mint_rejects_bad_slugs(self):
        with pytest.raises(BadSlug):
            mint_iri("type", ["weather station"], NS)
        with pytest.raises(BadSlug):
            mint_iri("capability", [], NS)

    def test_mint_is_deterministic(self):
        assert mint_iri("binding", ["a", "b"], NS) == mint_iri("binding", ["a", "b"], NS)

    def test_feature_of_interest_resolution(self):
        assert resolve_feature_of_interest("crop-growth", NS).value == "http://example.org/oi/foi/crop-growth"
        assert resolve_feature_of_interest("http://dom.test/Field", NS).value == "http://dom.test/Field"

    def test_namespaces_base_must_be_hash_or_slash_terminated(self):
        with pytest.raises(ValueError):
            Namespaces(base_iri=Iri("http://example.org/oi"))


class TestValidateType:
    def test_weather_station_is_valid(self):
        assert validate_type(weather_station()) == []

    def test_empty_observes(self):
        t = SensorType(id="x", name="X", observes=())
        assert EMPTY_OBSERVES in codes(validate_type(t))

    def test_bad_slug(self):
        t = SensorType(id="Not A Slug", name="X", observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),))
        assert codes(validate_type(t)) == [BAD_SLUG]

    def test_duplicate_property_iri(self):
        p = ObservedProperty(Iri(AIR_TEMPERATURE))
        t = SensorType(id="x", name="X", observes=(p, p))
        assert DUP_PROPERTY in codes(validate_type(t))

    def test_slug_collision_between_distinct_iris(self):
        t = SensorType(
            id="x",
            name="X",
            observes=(
                ObservedProperty(Iri("http://a.test/v1#Temp")),
                ObservedProperty(Iri("http://a.test/v2#Temp")),
            ),
        )
        assert DUP_PROPERTY in codes(validate_type(t))

    def test_capability_for_unknown_property(self):
        t = SensorType(
            id="x",
            name="X",
            observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),),
            capabilities=(MeasurementCapability(property=Iri(HUMIDITY)),),
        )
        assert codes(validate_type(t)) == [CAP_UNKNOWN_PROPERTY]

    def test_duplicate_capability(self):
        cap = MeasurementCapability(property=Iri(AIR_TEMPERATURE))
        t = SensorType(id="x", name="X", observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),), capabilities=(cap, cap))
        assert DUP_PROPERTY in codes(validate_type(t))

    def test_negative_accuracy(self):
        t = SensorType(
            id="x",
            name="X",
            observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),),
            capabilities=(
                MeasurementCapability(property=Iri(AIR_TEMPERATURE), accuracy=Measurement(-0.1, UNIT_PERCENT)),
            ),
        )
        assert codes(validate_type(t)) == [NEG_ACCURACY]

    @pytest.mark.parametrize("value", [0.0, -1.0, float("nan"), float("inf")])
    def test_nonpositive_frequency(self, value):
        t = SensorType(
            id="x",
            name="X",
            observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),),
            capabilities=(
                MeasurementCapability(property=Iri(AIR_TEMPERATURE), frequency=Measurement(value, UNIT_PERCENT)),
            ),
        )
        assert codes(validate_type(t)) == [NONPOS_FREQUENCY]

    def test_zero_accuracy_is_allowed(self):
        t = SensorType(
            id="x",
            name="X",
            observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),),
            capabilities=(
                MeasurementCapability(property=Iri(AIR_TEMPERATURE), accuracy=Measurement(0.0, UNIT_PERCENT)),
            ),
        )
        assert validate_type(t) == []


class TestValidateInstance:
    def test_demo_instance_is_valid(self):
        assert validate_instance(demo_instance(), weather_station()) == []

    def test_latitude_out_of_range(self):
        i = demo_instance()
        bad = SensorInstance(**{**_as_kwargs(i), "latitude": 91.0})
        assert codes(validate_instance(bad, weather_station())) == [LAT_RANGE]

    def test_longitude_out_of_range(self):
        i = demo_instance()
        bad = SensorInstance(**{**_as_kwargs(i), "longitude": -180.5})
        assert codes(validate_instance(bad, weather_station())) == [LON_RANGE]

    def test_partial_bindings_mismatch(self):
        i = demo_instance()
        bad = SensorInstance(**{**_as_kwargs(i), "bindings": i.bindings[:1]})
        assert codes(validate_instance(bad, weather_station())) == [BINDING_MISMATCH]

    def test_duplicate_field(self):
        i = demo_instance()
        b0, b1 = i.bindings
        dup = PropertyBinding(property=b1.property, unit=b1.unit, xgsn_field=b0.xgsn_field)
        bad = SensorInstance(**{**_as_kwargs(i), "bindings": (b0, dup)})
        assert codes(validate_instance(bad, weather_station())) == [DUP_FIELD]

    def test_bad_field_name(self):
        i = demo_instance()
        b0, b1 = i.bindings
        bad_binding = PropertyBinding(property=b1.property, unit=b1.unit, xgsn_field="9bad-name")
        bad = SensorInstance(**{**_as_kwargs(i), "bindings": (b0, bad_binding)})
        assert codes(validate_instance(bad, weather_station())) == [BAD_FIELD_NAME]

    def test_bad_id_slug(self):
        bad = SensorInstance(**{**_as_kwargs(demo_instance()), "id": "Demo Station"})
        assert codes(validate_instance(bad, weather_station())) == [BAD_SLUG]

    def test_unsluggable_feature_of_interest(self):
        bad = SensorInstance(**{**_as_kwargs(demo_instance()), "feature_of_interest": "***"})
        assert codes(validate_instance(bad, weather_station())) == [BAD_SLUG]


def _as_kwargs(i: SensorInstance) -> dict:
    return {
        "id": i.id,
        "name": i.name,
        "type_id": i.type_id,
        "owner": i.owner,
        "description": i.description,
        "latitude": i.latitude,
        "longitude": i.longitude,
        "feature_of_interest": i.feature_of_interest,
        "bindings": i.bindings,
    }


class TestTypeMapping:
    def test_weather_station_has_27_triples(self):
        graph = type_to_graph(weather_station(), NS)
        assert len(graph) == len(enumerate_type_rules(weather_station())) == 27

    def test_single_property_no_capability_has_4_triples(self):
        t = SensorType(id="simple", name="Simple", observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),))
        assert len(type_to_graph(t, NS)) == len(enumerate_type_rules(t)) == 4

    def test_mapping_is_deterministic(self):
        g1 = type_to_graph(weather_station(), NS)
        g2 = type_to_graph(weather_station(), NS)
        assert graph_equal(g1, g2)
        assert serialize_ntriples(g1) == serialize_ntriples(g2)

    def test_weather_station_turtle_round_trip_is_byte_stable(self):
        graph = type_to_graph(weather_station(), NS)
        doc = serialize_turtle(graph)
        reparsed = parse_turtle(doc)
        assert graph_equal(reparsed, graph)
        assert serialize_turtle(reparsed) == doc

    def test_core_triples_present(self):
        graph = type_to_graph(weather_station(), NS)
        tnode = Iri("http://example.org/oi/types/weatherstation")
        assert Triple(tnode, Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), Iri("http://openiot.eu/ontology/ns/SensorType")) in graph
        assert Triple(tnode, Iri("http://www.w3.org/2000/01/rdf-schema#subClassOf"), Iri("http://purl.oclc.org/NET/ssnx/ssn#Sensor")) in graph
        assert Triple(tnode, Iri("http://www.w3.org/2000/01/rdf-schema#label"), Literal("WeatherStation")) in graph
        assert Triple(tnode, Iri("http://purl.oclc.org/NET/ssnx/ssn#observes"), Iri(AIR_TEMPERATURE)) in graph

    def test_capability_and_measurement_nodes(self):
        graph = type_to_graph(weather_station(), NS)
        cap = Iri("http://example.org/oi/cap/weatherstation/airtemperature")
        measurement = Iri("http://example.org/oi/m/weatherstation/airtemperature/accuracy")
        assert Triple(cap, Iri("http://purl.oclc.org/NET/ssnx/ssn#forProperty"), Iri(AIR_TEMPERATURE)) in graph
        assert Triple(
            measurement,
            Iri("http://openiot.eu/ontology/ns/hasValue"),
            Literal("0.5", Iri("http://www.w3.org/2001/XMLSchema#double")),
        ) in graph

    def test_invalid_type_raises(self):
        with pytest.raises(InvalidType) as err:
            type_to_graph(SensorType(id="x", name="X", observes=()), NS)
        assert EMPTY_OBSERVES in codes(err.value.violations)

    def test_triple_count_formula_on_random_types(self):
        rng = random.Random(4021)
        for _ in range(50):
            t = random_type(rng)
            assert len(type_to_graph(t, NS)) == len(enumerate_type_rules(t))


class TestInstanceMapping:
    def test_demo_instance_has_18_triples(self):
        graph = instance_to_graph(demo_instance(), weather_station(), NS)
        assert len(graph) == len(enumerate_instance_rules(demo_instance())) == 18

    def test_minimal_instance_has_11_triples(self):
        t = SensorType(id="simple", name="Simple", observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),))
        i = SensorInstance(
            id="probe",
            name="Probe",
            type_id="simple",
            latitude=0.0,
            longitude=0.0,
            feature_of_interest="field",
            bindings=(PropertyBinding(Iri(AIR_TEMPERATURE), UNIT_PERCENT, "t0"),),
        )
        assert len(instance_to_graph(i, t, NS)) == len(enumerate_instance_rules(i)) == 11

    def test_feature_of_interest_triple(self):
        graph = instance_to_graph(demo_instance(), weather_station(), NS)
        assert Triple(
            Iri("http://example.org/oi/sensors/demo-weatherstation"),
            Iri("http://openiot.eu/ontology/ns/hasFeatureOfInterest"),
            Iri("http://example.org/oi/foi/crop-growth"),
        ) in graph

    def test_one_observes_triple_per_type_property(self):
        graph = instance_to_graph(demo_instance(), weather_station(), NS)
        inode = Iri("http://example.org/oi/sensors/demo-weatherstation")
        observes = list(graph.match(subject=inode, predicate=Iri("http://purl.oclc.org/NET/ssnx/ssn#observes")))
        assert {t.object.value for t in observes} == {AIR_TEMPERATURE, HUMIDITY}

    def test_type_mismatch(self):
        other = SensorType(id="other", name="Other", observes=(ObservedProperty(Iri(AIR_TEMPERATURE)),))
        with pytest.raises(TypeMismatch):
            instance_to_graph(demo_instance(), other, NS)

    def test_invalid_instance_raises(self):
        bad = SensorInstance(**{**_as_kwargs(demo_instance()), "latitude": 91.0})
        with pytest.raises(InvalidInstance):
            instance_to_graph(bad, weather_station(), NS)

    def test_triple_count_formula_on_random_instances(self):
        rng = random.Random(977)
        for _ in range(50):
            t = random_type(rng)
            i = random_instance(rng, t)
            assert len(instance_to_graph(i, t, NS)) == len(enumerate_instance_rules(i))

    def test_every_iri_is_minted_vocab_or_user_supplied(self):
        rng = random.Random(551)
        vocab_spaces = (NS.rdf.value, NS.rdfs.value, NS.xsd.value, NS.ssn.value, NS.geo.value, NS.oiot.value, NS.unit.value)
        for _ in range(25):
            t = random_type(rng)
            i = random_instance(rng, t)
            supplied = {p.iri.value for p in t.observes}
            supplied.update(c.accuracy.unit.value for c in t.capabilities if c.accuracy)
            supplied.update(c.frequency.unit.value for c in t.capabilities if c.frequency)
            supplied.update(b.unit.value for b in i.bindings)
            if i.feature_of_interest.startswith("http"):
                supplied.add(i.feature_of_interest)
            for graph in (type_to_graph(t, NS), instance_to_graph(i, t, NS)):
                for triple in graph:
                    for term in (triple.subject, triple.predicate, triple.object):
                        if not isinstance(term, Iri):
                            continue
                        assert (
                            term.value.startswith(NS.base_iri.value)
                            or term.value.startswith(vocab_spaces)
                            or term.value in supplied
                        ), term.value


class TestJsonShapes:
    def test_type_round_trip(self):
        t = weather_station()
        assert type_from_json(type_to_json(t)) == t

    def test_instance_round_trip(self):
        i = demo_instance()
        assert instance_from_json(instance_to_json(i)) == i

    def test_optional_fields_omitted(self):
        data = demo_instance_json()
        del data["owner"]
        del data["description"]
        i = instance_from_json(data)
        assert i.owner is None and i.description is None
        assert "owner" not in instance_to_json(i)

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.pop("id"),
            lambda d: d.pop("observes"),
            lambda d: d.__setitem__("observes", "not-a-list"),
            lambda d: d["observes"][0].__setitem__("iri", "not an iri"),
            lambda d: d["capabilities"][0]["accuracy"].__setitem__("value", "high"),
        ],
    )
    def test_malformed_type_shapes(self, mutate):
        data = json.loads(json.dumps(weather_station_json()))
        mutate(data)
        with pytest.raises(ShapeError):
            type_from_json(data)

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.pop("typeId"),
            lambda d: d.__setitem__("latitude", True),
            lambda d: d["bindings"][0].pop("xgsnField"),
        ],
    )
    def test_malformed_instance_shapes(self, mutate):
        data = json.loads(json.dumps(demo_instance_json()))
        mutate(data)
        with pytest.raises(ShapeError):
            instance_from_json(data)
