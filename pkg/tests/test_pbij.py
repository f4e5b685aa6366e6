"""The enumeration oracle here is deliberately independent of the library:
partial bijections are re-derived by filtering every subset of A x B for
functionality and injectivity, and counts are re-derived by summation."""

import itertools
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from invcat import (
    FinSet,
    PBijValidationError,
    canonical_pbij_category,
    compose_pbij,
    enumerate_pbij,
    hom_count,
    identity_pbij,
    inclusion,
    invert_pbij,
    make_pbij,
    partial_identity,
    size_finset,
    subset_projection,
)
from invcat.pbij import (
    ZERO_FINSET,
    DuplicateCodomainElementError,
    DuplicateDomainElementError,
    UnknownElementError,
    corestriction,
    defined_labels,
    image_labels,
    image_subset,
    inverse_image_subset,
    pbij_pairs,
    preimage_subset,
    projection_labels,
    subset_finset,
    undefined_labels,
    unhit_labels,
    zero_pbij,
)


def brute_force_pbijs(a: FinSet, b: FinSet) -> set[frozenset]:
    """Filter every relation on a.elements x b.elements down to the partial
    bijections.  Exponential, fine at size 3."""
    grid = list(itertools.product(a.elements, b.elements))
    out = set()
    for bits in itertools.product((0, 1), repeat=len(grid)):
        rel = [p for p, keep in zip(grid, bits) if keep]
        xs = [x for x, _ in rel]
        ys = [y for _, y in rel]
        if len(set(xs)) == len(xs) and len(set(ys)) == len(ys):
            out.add(frozenset(rel))
    return out


@pytest.mark.parametrize("m,n", [(0, 0), (0, 2), (1, 1), (2, 2), (2, 3), (3, 3)])
def test_enumeration_matches_brute_force(m, n):
    a, b = size_finset(m), size_finset(n)
    enumerated = {f.payload for f in enumerate_pbij(a, b)}
    assert enumerated == brute_force_pbijs(a, b)


def brute_count(m: int, n: int) -> int:
    return sum(comb(m, k) * comb(n, k) * factorial(k) for k in range(min(m, n) + 1))


@pytest.mark.parametrize("m,n", list(itertools.product(range(5), repeat=2)))
def test_hom_count_formula(m, n):
    assert hom_count(m, n) == brute_count(m, n)


def test_hom_count_landmarks():
    assert hom_count(2, 2) == 7
    assert hom_count(3, 3) == 34
    assert hom_count(4, 4) == 209
    assert hom_count(2, 3) == 13
    assert hom_count(3, 0) == 1


def test_enumeration_is_deterministic():
    a, b = size_finset(2), size_finset(3)
    assert enumerate_pbij(a, b) == enumerate_pbij(a, b)
    assert len(enumerate_pbij(a, b)) == 13


def test_make_pbij_validation(A, B):
    with pytest.raises(UnknownElementError):
        make_pbij(A, B, (("9", "a"),))
    with pytest.raises(UnknownElementError):
        make_pbij(A, B, (("1", "z"),))
    with pytest.raises(DuplicateDomainElementError):
        make_pbij(A, B, (("1", "a"), ("1", "b")))
    with pytest.raises(DuplicateCodomainElementError):
        make_pbij(A, B, (("1", "a"), ("2", "a")))
    assert issubclass(UnknownElementError, PBijValidationError)


def test_label_views(f):
    assert defined_labels(f) == ("1", "2")
    assert image_labels(f) == ("a", "b")
    assert undefined_labels(f) == ("3",)
    assert unhit_labels(f) == ("c",)
    assert pbij_pairs(f) == (("1", "a"), ("2", "b"))


def test_compose_and_invert_oracle(A, B, f):
    g = make_pbij(B, A, (("a", "2"), ("c", "3")))
    gf = compose_pbij(g, f)
    assert gf.payload == frozenset({("1", "2")})
    assert invert_pbij(f).payload == frozenset({("a", "1"), ("b", "2")})
    assert compose_pbij(invert_pbij(f), f).payload == frozenset(
        {("1", "1"), ("2", "2")}
    )
    assert identity_pbij(A).payload == frozenset({("1", "1"), ("2", "2"), ("3", "3")})
    assert zero_pbij(A, B).payload == frozenset()


def test_partial_identities_and_projections(A):
    i = partial_identity(A, ("1", "3"))
    assert i.payload == frozenset({("1", "1"), ("3", "3")})
    p = subset_projection(A, ("3", "1"))
    assert p.obj == A and p.morphism == i
    assert projection_labels(p) == ("1", "3")
    with pytest.raises(UnknownElementError):
        partial_identity(A, ("9",))


def test_inclusion_and_corestriction(A):
    u = inclusion(A, ("1", "3"))
    assert u.dom == subset_finset(("1", "3"))
    assert u.dom.elements == ("1", "3")
    assert u.cod == A
    assert u.payload == frozenset({("1", "1"), ("3", "3")})
    q = corestriction(A, ("2",))
    assert q.dom == A and q.cod.elements == ("2",)
    assert q.payload == frozenset({("2", "2")})
    assert subset_finset(()) == ZERO_FINSET


def test_subset_transfer_closed_forms(f):
    assert image_subset(f, ("1", "3")) == ("a",)
    assert inverse_image_subset(f, ("a", "c")) == ("1", "3")
    assert preimage_subset(f, ("a", "c")) == ("1",)
    assert image_subset(f, ()) == ()
    assert inverse_image_subset(f, ()) == ("3",)
    assert preimage_subset(f, ()) == ()


@st.composite
def pbij_payloads(draw, xs=("1", "2", "3"), ys=("a", "b", "c")):
    k = draw(st.integers(min_value=0, max_value=min(len(xs), len(ys))))
    dom = draw(st.permutations(list(xs)))[:k]
    img = draw(st.permutations(list(ys)))[:k]
    return frozenset(zip(dom, img))


@given(pbij_payloads(), pbij_payloads(xs=("a", "b", "c"), ys=("1", "2", "3")))
def test_composition_against_relation_composition(p1, p2):
    A = FinSet("A", ("1", "2", "3"))
    B = FinSet("B", ("a", "b", "c"))
    f = make_pbij(A, B, p1)
    g = make_pbij(B, A, p2)
    gf = compose_pbij(g, f)
    relational = {(x, z) for (x, y) in p1 for (y2, z) in p2 if y == y2}
    assert gf.payload == frozenset(relational)
    # involution is an antihomomorphism on the nose for pair sets
    assert invert_pbij(gf) == compose_pbij(invert_pbij(f), invert_pbij(g))


@given(pbij_payloads(), st.sets(st.sampled_from(["1", "2", "3"])))
def test_subset_routes_agree_with_composition_route(payload, subset):
    A = FinSet("A", ("1", "2", "3"))
    B = FinSet("B", ("a", "b", "c"))
    f = make_pbij(A, B, payload)
    i = partial_identity(A, tuple(subset))
    via_comp = compose_pbij(compose_pbij(f, i), invert_pbij(f))
    assert set(image_subset(f, subset)) == {x for x, _ in via_comp.payload}


def test_category_homs_match_closed_count(pbij3, budget):
    for a in pbij3.objects:
        for b in pbij3.objects:
            assert len(pbij3.hom(a, b)) == hom_count(len(a.elements), len(b.elements))


def test_category_zero_object_and_accessors(pbij2):
    assert pbij2.zero_object == ZERO_FINSET
    assert pbij2.finset("S1").elements == ("e1",)
    with pytest.raises(Exception):
        pbij2.finset("nope")


def test_size_finset_shapes():
    assert size_finset(0) == ZERO_FINSET
    assert size_finset(3).elements == ("e1", "e2", "e3")
    cat = canonical_pbij_category((2, 2, 3))
    names = [o.name for o in cat.objects]
    assert names.count("S2") == 1  # duplicate sizes collapse
