import pytest

from invcat import (
    Budget,
    FinSet,
    Morphism,
    PBijCategory,
    TableCategory,
    canonical_pbij_category,
    make_pbij,
)


@pytest.fixture(scope="session")
def budget():
    return Budget(max_size=4)


@pytest.fixture(scope="session")
def A():
    return FinSet("A", ("1", "2", "3"))


@pytest.fixture(scope="session")
def B():
    return FinSet("B", ("a", "b", "c"))


@pytest.fixture(scope="session")
def f(A, B):
    # the running example everywhere: total on {1,2}, misses c
    return make_pbij(A, B, (("1", "a"), ("2", "b")), name="f")


@pytest.fixture(scope="session")
def fixture_cat(A, B):
    return PBijCategory([A, B])


@pytest.fixture(scope="session")
def pbij2():
    return canonical_pbij_category((1, 2))


@pytest.fixture(scope="session")
def pbij3():
    return canonical_pbij_category((0, 1, 2, 3))


def _fn2_table():
    # all four total functions on {1,2}; composition is not an inverse monoid
    # because the two constants are quasi-inverses of each other
    fn = {
        "1": {"1": "1", "2": "2"},
        "s": {"1": "2", "2": "1"},
        "ka": {"1": "1", "2": "1"},
        "kb": {"1": "2", "2": "2"},
    }

    def label_of(mapping):
        for k, v in fn.items():
            if v == mapping:
                return k
        raise AssertionError(mapping)

    mk = {e: Morphism("X", "X", e) for e in fn}
    table = {}
    for a in fn:
        for b in fn:
            table[(mk[a], mk[b])] = mk[label_of({x: fn[a][fn[b][x]] for x in ("1", "2")})]
    return mk, table


@pytest.fixture(scope="session")
def fn2_cat():
    mk, table = _fn2_table()
    return TableCategory(["X"], {("X", "X"): list(mk.values())}, table, {"X": mk["1"]})
