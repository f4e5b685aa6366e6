"""Finite inverse monoids from Cayley tables, the two-object category they
seed, and the classification suite checking that the category is exact
precisely when the monoid is a group."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, count

from .core import (
    Budget,
    InvcatError,
    Morphism,
    TableCategory,
    check_inverse_category,
)
from .exactness import check_exactness
from .pbij import enumerate_pbij, pbij_pairs, size_finset
from .report import FAIL, PASS, Clause, VerificationReport, merge_reports


class TableShapeError(InvcatError):
    """The table is not even a binary operation on the element list."""


class MonoidAxiomError(InvcatError):
    """One of the inverse-monoid axioms fails; `violation` names which."""

    def __init__(self, violation: str, witness: str):
        self.violation = violation
        self.witness = witness
        super().__init__(f"{violation}: {witness}")


@dataclass(frozen=True)
class InverseMonoid:
    """A validated finite inverse monoid.

    `table` maps (x, y) to the product xy; `inverses` carries each element's
    unique generalized inverse; `zero` is the absorbing element when the
    table has one.  Construct through validate_inverse_monoid.
    """

    elements: tuple[str, ...]
    identity: str
    table: dict
    inverses: dict
    idempotents: tuple[str, ...]
    zero: str | None

    def __len__(self) -> int:
        return len(self.elements)

    def product(self, x: str, y: str) -> str:
        return self.table[(x, y)]

    def inverse(self, x: str) -> str:
        return self.inverses[x]


def validate_inverse_monoid(elements, table, identity: str) -> InverseMonoid:
    """Check the inverse-monoid axioms, returning the validated structure or
    raising MonoidAxiomError naming the broken axiom with a witness."""
    elements = tuple(elements)
    universe = set(elements)
    if not elements:
        raise TableShapeError("empty element list")
    if len(universe) != len(elements):
        raise TableShapeError("duplicate element labels")
    tbl = dict(table)
    for x in elements:
        for y in elements:
            z = tbl.get((x, y))
            if z is None:
                raise TableShapeError(f"table is missing the product {x}·{y}")
            if z not in universe:
                raise TableShapeError(f"product {x}·{y} = {z} is not an element")

    if identity not in universe:
        raise MonoidAxiomError("no-identity", f"{identity!r} is not an element")
    for x in elements:
        if tbl[(identity, x)] != x or tbl[(x, identity)] != x:
            raise MonoidAxiomError(
                "no-identity",
                f"{identity}·{x} = {tbl[(identity, x)]} and {x}·{identity} = {tbl[(x, identity)]}",
            )
    for x in elements:
        for y in elements:
            xy = tbl[(x, y)]
            for z in elements:
                if tbl[(xy, z)] != tbl[(x, tbl[(y, z)])]:
                    raise MonoidAxiomError(
                        "non-associative",
                        f"({x}·{y})·{z} = {tbl[(xy, z)]} but {x}·({y}·{z}) = {tbl[(x, tbl[(y, z)])]}",
                    )

    inverses: dict = {}
    for x in elements:
        found = [
            y
            for y in elements
            if tbl[(tbl[(x, y)], x)] == x and tbl[(tbl[(y, x)], y)] == y
        ]
        if len(found) != 1:
            detail = (
                f"{x} has no generalized inverse"
                if not found
                else f"{x} has {len(found)} generalized inverses, e.g. {found[0]} and {found[1]}"
            )
            raise MonoidAxiomError("non-unique-inverse", detail)
        inverses[x] = found[0]

    idempotents = tuple(x for x in elements if tbl[(x, x)] == x)
    for e, f in combinations(idempotents, 2):
        if tbl[(e, f)] != tbl[(f, e)]:
            raise MonoidAxiomError(
                "non-commuting-idempotents",
                f"{e}·{f} = {tbl[(e, f)]} but {f}·{e} = {tbl[(f, e)]}",
            )

    zero = next(
        (z for z in elements if all(tbl[(z, x)] == z and tbl[(x, z)] == z for x in elements)),
        None,
    )
    return InverseMonoid(elements, identity, tbl, inverses, idempotents, zero)


def is_group(monoid: InverseMonoid) -> bool:
    """True when the identity is the only idempotent."""
    return monoid.idempotents == (monoid.identity,)


# ---- the two-object category ----------------------------------------------


def _zero_is_reachable(monoid: InverseMonoid) -> bool:
    """True when the absorbing element is a product of two other elements.
    An unreachable zero is a freely adjoined one; reusing it as the
    categorical zero would collapse the very structure being classified
    (a group with a free zero would come out exact), so only woven-in
    zeros are reused.
    """
    z = monoid.zero
    if z is None:
        return False
    others = [x for x in monoid.elements if x != z]
    return any(monoid.table[(x, y)] == z for x in others for y in others)


def two_object_category(monoid: InverseMonoid) -> TableCategory:
    """Objects Z and X with End(X) the monoid and Z a zero object.

    The categorical zero of End(X) is the monoid's own absorbing element
    when that element is a product of nonzero elements, else a fresh label.
    """
    labels = list(monoid.elements)
    if _zero_is_reachable(monoid):
        zero_label = monoid.zero
    else:
        used = set(labels)
        zero_label = next(c for c in ("0" + "_" * k for k in count()) if c not in used)
        labels.append(zero_label)

    def endo(label: str) -> Morphism:
        return Morphism("X", "X", label)

    id_z = Morphism("Z", "Z", zero_label)
    z_in = Morphism("Z", "X", zero_label)
    z_out = Morphism("X", "Z", zero_label)
    zero_endo = endo(zero_label)

    homs = {
        ("X", "X"): tuple(endo(s) for s in labels),
        ("Z", "Z"): (id_z,),
        ("Z", "X"): (z_in,),
        ("X", "Z"): (z_out,),
    }

    def product(x: str, y: str) -> str:
        if x == zero_label or y == zero_label:
            return zero_label
        return monoid.table[(x, y)]

    compose_table: dict = {}
    zero_of = {
        ("X", "X"): zero_endo,
        ("Z", "Z"): id_z,
        ("Z", "X"): z_in,
        ("X", "Z"): z_out,
    }
    for (b, c), fs in homs.items():
        for (a, b2), gs in homs.items():
            if b2 != b:
                continue
            for f in fs:
                for g in gs:
                    if a == "X" and b == "X" and c == "X":
                        out = endo(product(f.payload, g.payload))
                    else:
                        out = zero_of[(a, c)]
                    compose_table[(f, g)] = out

    involution = {id_z: id_z, z_in: z_out, z_out: z_in, zero_endo: zero_endo}
    for s in monoid.elements:
        if s != zero_label:
            involution[endo(s)] = endo(monoid.inverses[s])

    return TableCategory(
        objects=("Z", "X"),
        homs=homs,
        compose_table=compose_table,
        identities={"X": endo(monoid.identity), "Z": id_z},
        involution_table=involution,
        zero_object="Z",
    )


# ---- classification --------------------------------------------------------


def classify_exactness(monoid: InverseMonoid, budget: Budget | None = None) -> VerificationReport:
    """Run the inverse-category axioms and exactness checklists on the
    two-object category and assert the exactness verdict matches is_group;
    a mismatch would be loud and interesting."""
    cat = two_object_category(monoid)
    axioms = check_inverse_category(cat, budget)
    exactness = check_exactness(cat, budget)
    group = is_group(monoid)
    exact = exactness.passed
    failing = [c.clause_id for c in exactness.failures()]
    broken = axioms.failures()

    inverse_clause = Clause(
        "classify.inverse-category",
        "1",
        PASS if not broken else FAIL,
        sum(c.checked for c in axioms.clauses),
        None if not broken else f"{broken[0].clause_id}: {broken[0].counterexample}",
    )
    agree = Clause(
        "classify.exact-iff-group",
        "1",
        PASS if exact == group else FAIL,
        1,
        None
        if exact == group
        else (
            f"category is {'exact' if exact else 'not exact'} but the monoid is "
            f"{'a group' if group else 'not a group'}; failing clauses: {failing or 'none'}"
        ),
    )
    # The verdict clauses are the contract here.  A non-group is SUPPOSED to
    # fail some exactness clause, so those raw failures stay out of the clause
    # list (they would poison the exit code) and land in details instead.
    report = merge_reports("classify", axioms, exactness)
    report.clauses = [inverse_clause, agree]
    report.details = {
        "monoid-size": len(monoid),
        "is-group": group,
        "is-exact": exact,
        "failing-clauses": failing,
        "inconsistency": exact != group,
    }
    return report


# ---- stock monoids ---------------------------------------------------------


def pbij_label(pairs) -> str:
    pairs = tuple(sorted(pairs))
    if not pairs:
        return "0"
    return "+".join(f"{x}>{y}" for x, y in pairs)


def symmetric_inverse_monoid(n: int) -> InverseMonoid:
    """All partial bijections of an n-element set under composition."""
    a = size_finset(n)
    morphisms = enumerate_pbij(a, a)
    labels = {f: pbij_label(pbij_pairs(f)) for f in morphisms}
    table = {}
    for f in morphisms:
        mf = dict(pbij_pairs(f))
        for g in morphisms:
            composite = frozenset(
                (x, mf[y]) for x, y in pbij_pairs(g) if y in mf
            )
            table[(labels[f], labels[g])] = pbij_label(composite)
    identity = pbij_label((e, e) for e in a.elements)
    return validate_inverse_monoid(sorted(labels.values()), table, identity)


def cyclic_group(n: int) -> InverseMonoid:
    if n < 1:
        raise InvcatError("cyclic group needs n >= 1")
    labels = ["1"] + [f"a{k}" if k > 1 else "a" for k in range(1, n)]
    table = {
        (labels[i], labels[j]): labels[(i + j) % n] for i in range(n) for j in range(n)
    }
    return validate_inverse_monoid(labels, table, "1")


def chain_semilattice(n: int) -> InverseMonoid:
    """The chain 1 > e1 > ... > e(n-1) under meet."""
    if n < 1:
        raise InvcatError("chain needs n >= 1")
    labels = ["1"] + [f"e{k}" for k in range(1, n)]
    table = {
        (labels[i], labels[j]): labels[max(i, j)] for i in range(n) for j in range(n)
    }
    return validate_inverse_monoid(labels, table, "1")
