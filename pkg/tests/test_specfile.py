import json
import string

import pytest
from hypothesis import given, strategies as st

from invcat import (
    build_category,
    check_inverse_category,
    dumps_spec,
    load_monoid_table,
    load_spec,
    loads_spec,
    parse_spec,
    serialize_spec,
)
from invcat.specfile import (
    CategorySpec,
    GeneratorSpec,
    MorphismSpec,
    ObjectSpec,
    SpecFormatError,
    monoid_from_generator,
    spec_from_category_fixture,
)

FIXTURE_DOC = {
    "format-version": 1,
    "objects": [
        {"name": "A", "elements": ["1", "2", "3"]},
        {"name": "B", "elements": ["a", "b", "c"]},
    ],
    "morphisms": [
        {"name": "f", "dom": "A", "cod": "B", "pairs": [["1", "a"], ["2", "b"]]}
    ],
}


def test_parse_fixture_doc():
    spec = parse_spec(FIXTURE_DOC)
    assert [o.name for o in spec.objects] == ["A", "B"]
    assert spec.morphisms[0] == MorphismSpec("f", "A", "B", (("1", "a"), ("2", "b")))
    assert spec.generators is None


def test_pairs_are_normalized_sorted():
    doc = dict(FIXTURE_DOC)
    doc["morphisms"] = [
        {"name": "f", "dom": "A", "cod": "B", "pairs": [["2", "b"], ["1", "a"]]}
    ]
    assert parse_spec(doc) == parse_spec(FIXTURE_DOC)


@pytest.mark.parametrize(
    "mutate,why",
    [
        (lambda d: d.update({"format-version": 2}), "wrong version"),
        (lambda d: d.pop("format-version"), "missing version"),
        (lambda d: d.update({"surprise": 1}), "unknown field"),
        (lambda d: d.update({"generators": {"kind": "all-pbij", "sizes": [1]}}),
         "morphisms and generators together"),
        (lambda d: d.pop("morphisms"), "neither morphisms nor generators"),
        (lambda d: d["objects"].append({"name": "A", "elements": ["9"]}),
         "duplicate object"),
        (lambda d: d["objects"].append({"name": "0", "elements": ["x"]}),
         "reserved empty-object name"),
        (lambda d: d["objects"].append({"name": "E", "elements": []}),
         "empty object with a non-reserved name"),
        (lambda d: d["objects"][0]["elements"].append("1"), "duplicate element"),
        (lambda d: d["morphisms"].append(
            {"name": "g", "dom": "Q", "cod": "B", "pairs": []}), "unknown dom"),
        (lambda d: d["morphisms"].append(
            {"name": "f", "dom": "A", "cod": "B", "pairs": []}), "duplicate name"),
        (lambda d: d["morphisms"][0]["pairs"].append(["3", "b"]),
         "pair reuses a codomain element"),
        (lambda d: d["morphisms"][0]["pairs"].append(["9", "c"]),
         "pair uses unknown label"),
    ],
)
def test_invalid_docs_rejected(mutate, why):
    doc = json.loads(json.dumps(FIXTURE_DOC))
    mutate(doc)
    with pytest.raises(SpecFormatError):
        parse_spec(doc)


def test_generator_docs():
    spec = parse_spec({"format-version": 1,
                       "generators": {"kind": "all-pbij", "sizes": [0, 2]}})
    assert spec.generators == GeneratorSpec("all-pbij", sizes=(0, 2))
    with pytest.raises(SpecFormatError):
        parse_spec({"format-version": 1, "generators": {"kind": "all-pbij", "sizes": []}})
    with pytest.raises(SpecFormatError):
        parse_spec({"format-version": 1, "generators": {"kind": "wat"}})
    mono = parse_spec({
        "format-version": 1,
        "generators": {"kind": "inverse-monoid", "elements": ["1"], "identity": "1",
                        "table": [["1"]]},
    })
    assert monoid_from_generator(mono.generators).identity == "1"
    with pytest.raises(SpecFormatError):  # ragged table
        parse_spec({
            "format-version": 1,
            "generators": {"kind": "inverse-monoid", "elements": ["1", "a"],
                            "identity": "1", "table": [["1", "a"]]},
        })


labels = st.text(alphabet=string.ascii_lowercase + string.digits, min_size=1, max_size=4)


@st.composite
def explicit_specs(draw):
    n_objects = draw(st.integers(min_value=1, max_value=3))
    names = draw(st.lists(labels, min_size=n_objects, max_size=n_objects, unique=True))
    objects = []
    for name in names:
        els = draw(st.lists(labels, min_size=1, max_size=3, unique=True))
        objects.append(ObjectSpec(name if name != "0" else "o0", tuple(els)))
    morphisms = []
    n_morphisms = draw(st.integers(min_value=0, max_value=2))
    for i in range(n_morphisms):
        dom = draw(st.sampled_from(objects))
        cod = draw(st.sampled_from(objects))
        k = draw(st.integers(min_value=0,
                             max_value=min(len(dom.elements), len(cod.elements))))
        xs = draw(st.permutations(list(dom.elements)))[:k]
        ys = draw(st.permutations(list(cod.elements)))[:k]
        morphisms.append(
            MorphismSpec(f"m{i}", dom.name, cod.name, tuple(sorted(zip(xs, ys))))
        )
    return CategorySpec(tuple(objects), tuple(morphisms), None)


@given(explicit_specs())
def test_round_trip_parse_serialize(spec):
    assert parse_spec(serialize_spec(spec)) == spec
    assert loads_spec(dumps_spec(spec)) == spec
    assert dumps_spec(spec) == dumps_spec(spec)


def test_round_trip_generator_specs():
    for doc in (
        {"format-version": 1, "generators": {"kind": "all-pbij", "sizes": [1, 2]}},
        {"format-version": 1,
         "generators": {"kind": "inverse-monoid", "elements": ["1", "a"],
                         "identity": "1", "table": [["1", "a"], ["a", "1"]]}},
    ):
        spec = parse_spec(doc)
        assert parse_spec(serialize_spec(spec)) == spec


def test_build_category_explicit_saturates(budget):
    cat, named = build_category(parse_spec(FIXTURE_DOC))
    assert sorted(named) == ["f"]
    f = named["f"]
    assert f.payload == frozenset({("1", "a"), ("2", "b")})
    homs = cat.hom(f.dom, f.cod)
    assert f in homs
    assert cat.involve(f).payload == frozenset({("a", "1"), ("b", "2")})
    # closure keeps the axioms intact even though hom-sets are small
    assert check_inverse_category(cat, budget).passed
    assert len(homs) < 34  # decidedly not the full partial-bijection hom-set


def test_build_category_generators(budget):
    cat, named = build_category(
        parse_spec({"format-version": 1,
                    "generators": {"kind": "all-pbij", "sizes": [2]}})
    )
    assert named == {}
    sizes = sorted(len(o.elements) for o in cat.objects)
    assert sizes == [0, 2]

    cat2, named2 = build_category(
        parse_spec({"format-version": 1,
                    "generators": {"kind": "inverse-monoid", "elements": ["1", "a"],
                                    "identity": "1",
                                    "table": [["1", "a"], ["a", "1"]]}})
    )
    assert sorted(named2) == ["1", "a"]
    assert check_inverse_category(cat2, budget).passed


def test_file_loading(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(FIXTURE_DOC), encoding="utf-8")
    assert load_spec(path) == parse_spec(FIXTURE_DOC)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SpecFormatError):
        load_spec(bad)

    table = tmp_path / "monoid.json"
    table.write_text(json.dumps({
        "elements": ["1"], "identity": "1", "table": [["1"]],
    }), encoding="utf-8")
    elements, flat, identity = load_monoid_table(table)
    assert elements == ("1",) and identity == "1"
    assert flat[("1", "1")] == "1"
    with pytest.raises(SpecFormatError):
        load_monoid_table(bad)


def test_spec_from_category_fixture(A, B, f):
    spec = spec_from_category_fixture((A, B), {"f": f})
    assert parse_spec(serialize_spec(spec)) == spec
    cat, named = build_category(spec)
    assert named["f"].payload == f.payload
