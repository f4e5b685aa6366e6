import pytest

from invcat import (
    Budget,
    BudgetExceededError,
    CompositionError,
    Enumeration,
    FinSet,
    Morphism,
    NotInverseCategoryError,
    PBijCategory,
    check_inverse_category,
    involution,
    is_generalized_inverse,
    is_projection,
    make_pbij,
    quasi_inverses,
    render_morphism,
)
from invcat.core import ShapeMismatchError, morphism_sort_key
from invcat.report import FAIL, PASS, SKIPPED


def test_morphism_name_does_not_affect_identity(A, B):
    named = make_pbij(A, B, (("1", "a"),), name="g")
    anon = make_pbij(A, B, (("1", "a"),))
    assert named == anon
    assert hash(named) == hash(anon)
    assert "g" in render_morphism(named)


def test_compose_applies_right_factor_first(fixture_cat, A, B, f):
    # compose(g, f) means g after f
    g = make_pbij(B, A, (("a", "3"),))
    gf = fixture_cat.compose(g, f)
    assert gf.dom == A and gf.cod == A
    assert gf.payload == frozenset({("1", "3")})
    with pytest.raises(CompositionError):
        fixture_cat.compose(f, f)


def test_identity_and_involution(fixture_cat, A, B, f):
    id_a = fixture_cat.identity(A)
    assert fixture_cat.compose(f, id_a) == f
    assert fixture_cat.compose(fixture_cat.identity(B), f) == f
    fs = fixture_cat.involve(f)
    assert fs.payload == frozenset({("a", "1"), ("b", "2")})
    assert fixture_cat.involve(fs) == f


def test_quasi_inverse_unique_in_pbij(fixture_cat, f):
    qi = fixture_cat.quasi_inverses_of(f)
    assert qi == (fixture_cat.involve(f),)
    assert fixture_cat.unique_quasi_inverse(f) == fixture_cat.involve(f)
    assert is_generalized_inverse(fixture_cat, f, fixture_cat.involve(f))
    assert not is_generalized_inverse(fixture_cat, f, fixture_cat.zero(f.cod, f.dom))


def test_module_level_helpers(fixture_cat, f):
    assert quasi_inverses(fixture_cat, f) == (fixture_cat.involve(f),)
    assert involution(fixture_cat, f) == fixture_cat.involve(f)
    assert is_projection(fixture_cat, fixture_cat.compose(fixture_cat.involve(f), f))
    assert not is_projection(fixture_cat, f)


def test_zero_routing(fixture_cat, A, B):
    z = fixture_cat.zero(A, B)
    assert z.payload == frozenset()
    assert fixture_cat.is_zero(z)
    assert not fixture_cat.is_zero(fixture_cat.identity(A))


def test_axiom_suite_green_on_pbij2(pbij2, budget):
    report = check_inverse_category(pbij2, budget)
    assert report.passed, [c.clause_id for c in report.failures()]
    assert report.clause("involution.model-agreement").status == PASS
    assert report.morphisms_enumerated > 0


def test_axiom_suite_honest_on_total_functions(fn2_cat, budget):
    report = check_inverse_category(fn2_cat, budget)
    unique = report.clause("inverse.unique")
    assert unique.status == FAIL
    assert "ka" in unique.counterexample or "kb" in unique.counterexample
    assert report.clause("inverse.exists").status == PASS
    # no involution table was declared, so there is no model rule to compare
    assert report.clause("involution.model-agreement").status == SKIPPED
    assert report.exit_code() == 1


def test_involve_raises_outside_inverse_categories(fn2_cat):
    ka = Morphism("X", "X", "ka")
    with pytest.raises(NotInverseCategoryError):
        fn2_cat.involve(ka)


def test_corrupted_clones_leave_original_alone(pbij2, budget):
    s2 = pbij2.finset("S2")
    g = make_pbij(s2, s2, (("e1", "e2"),))
    bad = make_pbij(s2, s2, (("e1", "e1"),))
    twin = pbij2.with_corrupted_involution(g, bad)
    assert twin.involve(g) == bad
    assert pbij2.involve(g) != bad
    assert not check_inverse_category(twin, budget).passed
    assert check_inverse_category(pbij2, budget).passed

    h = pbij2.compose(g, pbij2.involve(g))
    twin2 = pbij2.with_corrupted_composition(g, pbij2.involve(g), bad)
    assert twin2.compose(g, pbij2.involve(g)) == bad
    assert pbij2.compose(g, pbij2.involve(g)) == h


def test_corruption_rejects_wrong_shapes(pbij2):
    s1, s2 = pbij2.finset("S1"), pbij2.finset("S2")
    g = make_pbij(s2, s2, (("e1", "e2"),))
    wrong = make_pbij(s1, s1, ())
    with pytest.raises(ShapeMismatchError):
        pbij2.with_corrupted_involution(g, wrong)
    with pytest.raises(ShapeMismatchError):
        pbij2.with_corrupted_composition(g, g, wrong)


def test_budget_limits_and_sampling():
    tight = Budget(max_size=2, sample=10, seed=1)
    assert tight.homset_limit == 7
    big = PBijCategory([FinSet("S3", ("e1", "e2", "e3"))])
    s3 = big.finset("S3")
    pool, sampled = big.morphism_pool(s3, s3, tight)
    assert sampled and len(pool) == 10
    again, _ = big.morphism_pool(s3, s3, tight)
    assert pool == again  # seeded, deterministic
    other, _ = big.morphism_pool(s3, s3, Budget(max_size=2, sample=10, seed=2))
    assert pool != other

    with pytest.raises(BudgetExceededError):
        big.morphism_pool(s3, s3, Budget(max_size=2, sample=None))


def test_enumeration_reflects_sampling():
    big = PBijCategory([FinSet("S3", ("e1", "e2", "e3"))])
    enum = Enumeration(big, Budget(max_size=2, sample=5, seed=0))
    assert len(list(enum.morphisms())) > 0
    assert enum.sampled
    full = Enumeration(big, Budget(max_size=4))
    seen = len(list(full.morphisms()))
    assert not full.sampled
    assert full.total_enumerated() == seen


def test_morphism_sort_key_is_total_on_mixed_payloads(A, B):
    ms = [
        make_pbij(A, B, (("1", "a"),)),
        make_pbij(A, B, ()),
        Morphism("X", "X", "label"),
    ]
    assert sorted(ms, key=morphism_sort_key)
