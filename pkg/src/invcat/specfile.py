"""Category spec files: a small JSON format describing either an explicit
finite collection of partial bijections (saturated into a category), or a
generator directive ("all-pbij" over given sizes, or "inverse-monoid" from a
Cayley table)."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import FiniteCategory, InvcatError, Morphism, TableCategory
from .monoid import InverseMonoid, two_object_category, validate_inverse_monoid
from .pbij import (
    ZERO_FINSET,
    FinSet,
    PBijValidationError,
    canonical_pbij_category,
    compose_pbij,
    identity_pbij,
    invert_pbij,
    make_pbij,
    pbij_pairs,
    zero_pbij,
)

SPEC_FORMAT_VERSION = 1

GENERATOR_KINDS = ("all-pbij", "inverse-monoid")


class SpecFormatError(InvcatError):
    pass


@dataclass(frozen=True)
class ObjectSpec:
    name: str
    elements: tuple[str, ...]


@dataclass(frozen=True)
class MorphismSpec:
    name: str
    dom: str
    cod: str
    pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    sizes: tuple[int, ...] = ()
    elements: tuple[str, ...] = ()
    identity: str = ""
    table: tuple[tuple[str, ...], ...] = ()


@dataclass(frozen=True)
class CategorySpec:
    objects: tuple[ObjectSpec, ...] = ()
    morphisms: tuple[MorphismSpec, ...] | None = None
    generators: GeneratorSpec | None = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SpecFormatError(message)


def _string_list(value, where: str) -> tuple[str, ...]:
    _require(isinstance(value, list), f"{where} must be a list")
    for entry in value:
        _require(isinstance(entry, str) and entry, f"{where} entries must be non-empty strings")
    return tuple(value)


def parse_spec(data) -> CategorySpec:
    _require(isinstance(data, dict), "spec must be a mapping")
    version = data.get("format-version")
    _require(
        version == SPEC_FORMAT_VERSION,
        f"unsupported format-version {version!r}, expected {SPEC_FORMAT_VERSION}",
    )
    known = {"format-version", "objects", "morphisms", "generators"}
    extra = set(data) - known
    _require(not extra, f"unknown spec fields: {sorted(extra)}")

    objects: list[ObjectSpec] = []
    seen_objects: dict[str, ObjectSpec] = {}
    for raw in data.get("objects", []) or []:
        _require(isinstance(raw, dict), "each object must be a mapping")
        name = raw.get("name")
        _require(isinstance(name, str) and name, "object name must be a non-empty string")
        _require(name not in seen_objects, f"duplicate object name {name!r}")
        elements = _string_list(raw.get("elements", []), f"elements of object {name!r}")
        _require(len(set(elements)) == len(elements), f"duplicate elements in object {name!r}")
        _require(
            name != "0" or not elements,
            'the object name "0" is reserved for the empty object',
        )
        _require(
            name == "0" or bool(elements),
            f"object {name!r} needs elements; only \"0\" may be empty",
        )
        spec = ObjectSpec(name, elements)
        seen_objects[name] = spec
        objects.append(spec)

    has_morphisms = "morphisms" in data
    has_generators = "generators" in data
    _require(
        has_morphisms != has_generators,
        "spec needs exactly one of 'morphisms' and 'generators'",
    )

    if has_generators:
        raw = data["generators"]
        _require(isinstance(raw, dict), "generators must be a mapping")
        kind = raw.get("kind")
        _require(kind in GENERATOR_KINDS, f"generator kind must be one of {GENERATOR_KINDS}")
        if kind == "all-pbij":
            extra = set(raw) - {"kind", "sizes"}
            _require(not extra, f"unknown all-pbij fields: {sorted(extra)}")
            sizes = raw.get("sizes")
            _require(
                isinstance(sizes, list) and sizes, "all-pbij needs a non-empty list of sizes"
            )
            for n in sizes:
                _require(isinstance(n, int) and 0 <= n, f"bad size {n!r}")
            gen = GeneratorSpec("all-pbij", sizes=tuple(sizes))
        else:
            extra = set(raw) - {"kind", "elements", "identity", "table"}
            _require(not extra, f"unknown inverse-monoid fields: {sorted(extra)}")
            elements = _string_list(raw.get("elements", []), "monoid elements")
            _require(bool(elements), "inverse-monoid needs elements")
            _require(len(set(elements)) == len(elements), "duplicate monoid elements")
            identity = raw.get("identity")
            _require(isinstance(identity, str) and identity, "inverse-monoid needs an identity")
            table = raw.get("table")
            _require(isinstance(table, list) and len(table) == len(elements),
                     "table must be a square row list, one row per element")
            rows = []
            for row in table:
                rows.append(_string_list(row, "table row"))
                _require(len(rows[-1]) == len(elements), "table rows must match element count")
            gen = GeneratorSpec(
                "inverse-monoid", elements=elements, identity=identity, table=tuple(rows)
            )
        return CategorySpec(tuple(objects), None, gen)

    _require(bool(objects), "explicit specs need at least one object")
    morphisms: list[MorphismSpec] = []
    seen_names: set[str] = set()
    for raw in data["morphisms"] or []:
        _require(isinstance(raw, dict), "each morphism must be a mapping")
        name = raw.get("name")
        _require(isinstance(name, str) and name, "morphism name must be a non-empty string")
        _require(name not in seen_names, f"duplicate morphism name {name!r}")
        seen_names.add(name)
        dom, cod = raw.get("dom"), raw.get("cod")
        for side, label in (("dom", dom), ("cod", cod)):
            _require(
                isinstance(label, str) and label in seen_objects,
                f"morphism {name!r} has unknown {side} {label!r}",
            )
        raw_pairs = raw.get("pairs", [])
        _require(isinstance(raw_pairs, list), f"pairs of morphism {name!r} must be a list")
        pairs = []
        for entry in raw_pairs:
            _require(
                isinstance(entry, list) and len(entry) == 2
                and all(isinstance(x, str) for x in entry),
                f"each pair of morphism {name!r} must be a [from, to] label pair",
            )
            pairs.append((entry[0], entry[1]))
        try:
            make_pbij(
                FinSet(dom, seen_objects[dom].elements) if seen_objects[dom].elements else ZERO_FINSET,
                FinSet(cod, seen_objects[cod].elements) if seen_objects[cod].elements else ZERO_FINSET,
                pairs,
            )
        except PBijValidationError as err:
            raise SpecFormatError(f"morphism {name!r} is invalid: {err}") from err
        morphisms.append(MorphismSpec(name, dom, cod, tuple(sorted(pairs))))
    return CategorySpec(tuple(objects), tuple(morphisms), None)


def serialize_spec(spec: CategorySpec) -> dict:
    out: dict = {"format-version": SPEC_FORMAT_VERSION}
    if spec.objects:
        out["objects"] = [
            {"name": o.name, "elements": list(o.elements)} for o in spec.objects
        ]
    if spec.generators is not None:
        gen = spec.generators
        if gen.kind == "all-pbij":
            out["generators"] = {"kind": "all-pbij", "sizes": list(gen.sizes)}
        else:
            out["generators"] = {
                "kind": "inverse-monoid",
                "elements": list(gen.elements),
                "identity": gen.identity,
                "table": [list(row) for row in gen.table],
            }
    else:
        out["morphisms"] = [
            {
                "name": m.name,
                "dom": m.dom,
                "cod": m.cod,
                "pairs": [list(p) for p in sorted(m.pairs)],
            }
            for m in (spec.morphisms or ())
        ]
    return out


def dumps_spec(spec: CategorySpec) -> str:
    return json.dumps(serialize_spec(spec), indent=2, ensure_ascii=False)


def loads_spec(text: str) -> CategorySpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecFormatError(f"not valid JSON: {err}") from err
    return parse_spec(data)


def load_spec(path) -> CategorySpec:
    with open(path, encoding="utf-8") as handle:
        return loads_spec(handle.read())


# ---- turning specs into categories ----------------------------------------


def monoid_from_generator(gen: GeneratorSpec) -> InverseMonoid:
    table = {
        (x, y): gen.table[i][j]
        for i, x in enumerate(gen.elements)
        for j, y in enumerate(gen.elements)
    }
    return validate_inverse_monoid(gen.elements, table, gen.identity)


def parse_monoid_table(data) -> tuple[tuple[str, ...], dict, str]:
    """Shape-check a Cayley-table document {elements, identity, table} and
    return the pieces for validate_inverse_monoid (which does the algebra)."""
    _require(isinstance(data, dict), "monoid table must be a mapping")
    extra = set(data) - {"elements", "identity", "table"}
    _require(not extra, f"unknown monoid fields: {sorted(extra)}")
    elements = _string_list(data.get("elements", []), "elements")
    _require(bool(elements), "monoid needs elements")
    _require(len(set(elements)) == len(elements), "duplicate monoid elements")
    identity = data.get("identity")
    _require(isinstance(identity, str) and identity, "monoid needs an identity label")
    table = data.get("table")
    _require(
        isinstance(table, list) and len(table) == len(elements),
        "table must have one row per element",
    )
    flat = {}
    for i, row in enumerate(table):
        row = _string_list(row, "table row")
        _require(len(row) == len(elements), "table rows must match element count")
        for j, value in enumerate(row):
            flat[(elements[i], elements[j])] = value
    return elements, flat, identity


def load_monoid_table(path) -> tuple[tuple[str, ...], dict, str]:
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as err:
            raise SpecFormatError(f"not valid JSON: {err}") from err
    return parse_monoid_table(data)


def _saturate(objects: tuple[FinSet, ...], seeds: list[Morphism]) -> TableCategory:
    """Close the given partial bijections under identities, zero morphisms,
    involution and composition, and present the result as an explicit table."""
    objs = list(objects)
    if ZERO_FINSET not in objs:
        objs.append(ZERO_FINSET)
    pool: set[Morphism] = set()
    for a in objs:
        pool.add(identity_pbij(a))
        for b in objs:
            pool.add(zero_pbij(a, b))
    pool.update(seeds)

    frontier = list(pool)
    while frontier:
        m = frontier.pop()
        grown = [invert_pbij(m)]
        for n in list(pool):
            if n.dom == m.cod:
                grown.append(compose_pbij(n, m))
            if m.dom == n.cod:
                grown.append(compose_pbij(m, n))
        for candidate in grown:
            if candidate not in pool:
                pool.add(candidate)
                frontier.append(candidate)

    homs: dict = {(a, b): [] for a in objs for b in objs}
    for m in pool:
        homs[(m.dom, m.cod)].append(m)
    compose_table = {
        (f, g): compose_pbij(f, g)
        for f in pool
        for g in pool
        if g.cod == f.dom
    }
    return TableCategory(
        objects=tuple(objs),
        homs=homs,
        compose_table=compose_table,
        identities={a: identity_pbij(a) for a in objs},
        involution_table={m: invert_pbij(m) for m in pool},
        zero_object=ZERO_FINSET,
    )


def build_category(spec: CategorySpec) -> tuple[FiniteCategory, dict[str, Morphism]]:
    """Instantiate a spec.  Returns the category and the declared morphisms
    by name (empty for generator specs)."""
    if spec.generators is not None:
        if spec.generators.kind == "all-pbij":
            return canonical_pbij_category(spec.generators.sizes), {}
        cat = two_object_category(monoid_from_generator(spec.generators))
        named = {s: Morphism("X", "X", s) for s in spec.generators.elements}
        return cat, named

    finsets = {
        o.name: FinSet(o.name, o.elements) if o.elements else ZERO_FINSET
        for o in spec.objects
    }
    named: dict[str, Morphism] = {}
    seeds: list[Morphism] = []
    for m in spec.morphisms or ():
        built = make_pbij(finsets[m.dom], finsets[m.cod], m.pairs)
        named[m.name] = built
        seeds.append(built)
    cat = _saturate(tuple(finsets.values()), seeds)
    return cat, named


def spec_from_category_fixture(objects: tuple[FinSet, ...], named: dict[str, Morphism]) -> CategorySpec:
    """Convenience for tests and docs: an explicit spec from concrete pieces."""
    return CategorySpec(
        objects=tuple(ObjectSpec(o.name, o.elements) for o in objects),
        morphisms=tuple(
            MorphismSpec(name, m.dom.name, m.cod.name, tuple(sorted(pbij_pairs(m))))
            for name, m in sorted(named.items())
        ),
        generators=None,
    )
