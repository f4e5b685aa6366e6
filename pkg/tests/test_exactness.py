import pytest

from invcat import (
    CommutingSquare,
    Enumeration,
    NoFactorizationError,
    NoKernelError,
    NonCommutingSquareError,
    check_coherence,
    check_exactness,
    check_normal_conormal,
    cokernel,
    inclusion,
    is_epi,
    is_iso,
    is_mono,
    is_pullback,
    kernel,
    make_pbij,
    mono_epi_factorize,
    pullback_witness,
    subset_projection,
)
from invcat.exactness import (
    Factorization,
    is_epi_by_cancellation,
    is_mono_by_cancellation,
    kernel_witness,
    quotient_iso,
    subobject_iso,
)
from invcat.monoid import chain_semilattice, symmetric_inverse_monoid, two_object_category
from invcat.pbij import ZERO_FINSET, image_labels
from invcat.report import FAIL, PASS


def test_mono_epi_iso_closed_forms(fixture_cat, A, B, f):
    assert not is_mono(fixture_cat, f)
    assert not is_epi(fixture_cat, f)
    u = inclusion(A, ("1", "3"))
    assert is_mono(fixture_cat, u) and not is_epi(fixture_cat, u)
    assert is_iso(fixture_cat, fixture_cat.identity(A))
    total = make_pbij(A, B, (("1", "a"), ("2", "b"), ("3", "c")))
    assert is_mono(fixture_cat, total) and is_epi(fixture_cat, total)


def test_cancellation_route_agrees(pbij2, budget):
    enum = Enumeration(pbij2, budget)
    for m in list(enum.morphisms()):
        assert is_mono(pbij2, m) == is_mono_by_cancellation(pbij2, m, enum)
        assert is_epi(pbij2, m) == is_epi_by_cancellation(pbij2, m, enum)


def test_kernel_fixture(fixture_cat, A, f):
    k = kernel(fixture_cat, f)
    assert k.cod == A
    assert k.dom.elements == ("3",)
    assert k.payload == frozenset({("3", "3")})
    k_id = kernel(fixture_cat, fixture_cat.identity(A))
    assert k_id.dom == ZERO_FINSET and k_id.payload == frozenset()


def test_kernel_universal_property_witness(fixture_cat, A, f):
    good = inclusion(A, ("3",))
    assert kernel_witness(fixture_cat, f, good) is None
    too_big = inclusion(A, ("2", "3"))
    assert kernel_witness(fixture_cat, f, too_big) is not None
    too_small = inclusion(A, ())
    assert kernel_witness(fixture_cat, f, too_small) is not None


def test_cokernel_fixture(fixture_cat, B, f):
    q = cokernel(fixture_cat, f)
    assert q.dom == B
    assert q.cod.elements == ("c",)
    assert q.payload == frozenset({("c", "c")})
    q_id = cokernel(fixture_cat, fixture_cat.identity(B))
    assert q_id.cod == ZERO_FINSET


def test_factorization_fixture(fixture_cat, A, B, f):
    fac = mono_epi_factorize(fixture_cat, f)
    assert isinstance(fac, Factorization)
    assert fixture_cat.compose(fac.p, fac.q) == f
    assert is_mono(fixture_cat, fac.p) and is_epi(fixture_cat, fac.q)
    assert image_labels(fac.p) == ("a", "b")
    assert fac.through.elements == ("a", "b")
    zfac = mono_epi_factorize(fixture_cat, fixture_cat.zero(A, B))
    assert zfac.through == ZERO_FINSET


def test_subobject_and_quotient_isos(fixture_cat, A):
    u = inclusion(A, ("1", "3"))
    # another presentation of the same subobject, through a renamed midpoint
    mid = u.dom
    flip = make_pbij(mid, A, (("1", "3"), ("3", "1")))
    j = subobject_iso(fixture_cat, flip, u)
    assert j is not None and fixture_cat.compose(u, j) == flip
    other = inclusion(A, ("2",))
    assert subobject_iso(fixture_cat, other, u) is None

    q1 = fixture_cat.involve(u)
    q2 = fixture_cat.involve(flip)
    assert quotient_iso(fixture_cat, q1, q2) is not None
    assert quotient_iso(fixture_cat, q1, fixture_cat.involve(other)) is None


def test_exactness_suite_green_on_pbij3(pbij3, budget):
    report = check_exactness(pbij3, budget)
    assert report.passed, [c.clause_id for c in report.failures()]
    assert report.details["exact"] is True
    assert report.details["baer-star-with-closed-projections"] is True
    assert report.clause("theorem.exact-iff-baer").status == PASS


def test_semilattice_category_fails_factorization(budget):
    cat = two_object_category(chain_semilattice(2))
    report = check_exactness(cat, budget)
    by_id = {c.clause_id: c for c in report.clauses}
    assert by_id["exact.kernels"].status == PASS
    assert by_id["exact.cokernels"].status == PASS
    assert by_id["exact.factorization"].status == FAIL
    assert by_id["baer.projections-closed"].status == FAIL
    assert by_id["baer.projection-factorization"].status == FAIL
    # both checklist verdicts are negative, so the biconditional holds
    assert by_id["theorem.exact-iff-baer"].status == PASS
    assert report.details["exact"] is False
    assert report.details["baer-star-with-closed-projections"] is False


def test_symmetric_monoid_category_lacks_kernels(budget):
    cat = two_object_category(symmetric_inverse_monoid(2))
    i_a = None
    for m in cat.hom("X", "X"):
        if m.payload == "e1>e1":
            i_a = m
    assert i_a is not None
    with pytest.raises(NoKernelError):
        kernel(cat, i_a)
    report = check_exactness(cat, budget)
    by_id = {c.clause_id: c for c in report.clauses}
    assert by_id["exact.kernels"].status == FAIL
    assert by_id["baer.projections-closed"].status == PASS
    assert by_id["theorem.exact-iff-baer"].status == PASS


def test_no_factorization_is_loud(budget):
    cat = two_object_category(chain_semilattice(2))
    e = None
    for m in cat.hom("X", "X"):
        if m.payload == "e1":
            e = m
    assert e is not None
    with pytest.raises(NoFactorizationError):
        mono_epi_factorize(cat, e)


def test_pullback_fixture(fixture_cat, A, B, f):
    v = inclusion(B, ("a", "c"))
    u = inclusion(A, ("1", "3"))
    top = fixture_cat.compose(fixture_cat.involve(v), fixture_cat.compose(f, u))
    square = CommutingSquare(top=top, left=u, right=v, bottom=f)
    assert pullback_witness(fixture_cat, square) is None
    assert is_pullback(fixture_cat, square)


def test_perturbed_pullback_leg_detected(fixture_cat, A, B, f):
    v = inclusion(B, ("a", "c"))
    u = inclusion(A, ("1", "3"))
    top = fixture_cat.compose(fixture_cat.involve(v), fixture_cat.compose(f, u))
    bad_left = make_pbij(u.dom, A, (("1", "1"),))
    square = CommutingSquare(top=top, left=bad_left, right=v, bottom=f)
    witness = pullback_witness(fixture_cat, square)
    assert witness is not None and witness != ""
    assert not is_pullback(fixture_cat, square)


def test_square_shape_and_commutation_errors(fixture_cat, A, B, f):
    u = inclusion(A, ("1", "3"))
    v = inclusion(B, ("a", "c"))
    with pytest.raises(NonCommutingSquareError):
        CommutingSquare(top=f, left=u, right=v, bottom=f)
    # shape-correct but non-commuting: top sends 1 to c instead of a
    bad_top = make_pbij(u.dom, v.dom, (("1", "c"),))
    square = CommutingSquare(top=bad_top, left=u, right=v, bottom=f)
    with pytest.raises(NonCommutingSquareError):
        pullback_witness(fixture_cat, square)


def test_coherence_and_normal_conormal_green(pbij2, budget):
    assert check_coherence(pbij2, budget).passed
    assert check_normal_conormal(pbij2, budget).passed


def test_coherence_spot_values(fixture_cat, A, f):
    # ker f composed with its involution is exactly the annihilator projection
    k = kernel(fixture_cat, f, certify=False)
    kk = fixture_cat.compose(k, fixture_cat.involve(k))
    assert kk == subset_projection(A, ("3",)).morphism
