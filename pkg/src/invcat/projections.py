"""Projection algebra on each object: the meet semilattice P(A), annihilators
f′ (the largest projection killed by f), and the closure operation f″ = (f′)′.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Budget,
    Enumeration,
    FiniteCategory,
    InvcatError,
    LatticeError,
    Morphism,
    NotInverseCategoryError,
    ObjectMismatchError,
    Projection,
    build_report,
    is_projection,
    morphism_sort_key,
    render_morphism,
    render_object,
)
from .report import Clause, VerificationReport, run_clause
from .pbij import PBijCategory, annihilator_pbij


class NotBaerStarError(InvcatError):
    pass


class AnnihilatorNotFoundError(NotBaerStarError):
    def __init__(self, f: Morphism):
        self.morphism = f
        super().__init__(f"no projection annihilates exactly what {render_morphism(f)} kills")


class AnnihilatorNotUniqueError(NotBaerStarError):
    def __init__(self, f: Morphism, candidates):
        self.morphism = f
        self.candidates = tuple(candidates)
        super().__init__(
            f"{len(self.candidates)} projections all act as the annihilator of {render_morphism(f)}"
        )


def projection(cat: FiniteCategory, morphism: Morphism) -> Projection:
    if not is_projection(cat, morphism):
        raise InvcatError(f"{render_morphism(morphism)} is not a projection")
    return Projection(morphism.dom, morphism)


def meet(cat: FiniteCategory, i: Projection, j: Projection) -> Projection:
    if i.obj != j.obj:
        raise ObjectMismatchError(
            f"projections live on different objects: {render_object(i.obj)} and {render_object(j.obj)}"
        )
    return Projection(i.obj, cat.compose(i.morphism, j.morphism))


def leq(cat: FiniteCategory, i: Projection, j: Projection) -> bool:
    return meet(cat, i, j) == i


def top(cat: FiniteCategory, a) -> Projection:
    return Projection(a, cat.identity(a))


def bottom(cat: FiniteCategory, a) -> Projection:
    return Projection(a, cat.zero(a, a))


def projections_on(cat: FiniteCategory, a, enum: Enumeration | None = None) -> tuple[Projection, ...]:
    """All projections on `a` found in the enumerated endomorphisms, closed
    under meet and always containing top and bottom."""
    pool = cat._projection_pool(a)
    if pool is not None:
        return tuple(sorted(pool, key=lambda p: morphism_sort_key(p.morphism)))
    enum = enum if enum is not None else Enumeration(cat)
    found = set()
    for m in enum.endos(a):
        try:
            if is_projection(cat, m):
                found.add(m)
        except NotInverseCategoryError:
            continue
    found.add(cat.identity(a))
    found.add(cat.zero(a, a))
    # close under meet so sampled pools still give a semilattice
    frontier = list(found)
    while frontier:
        m = frontier.pop()
        for other in list(found):
            composite = cat.compose(m, other)
            if composite not in found and is_projection(cat, composite):
                found.add(composite)
                frontier.append(composite)
    return tuple(Projection(a, m) for m in sorted(found, key=morphism_sort_key))


@dataclass(frozen=True)
class ProjectionLattice:
    obj: object
    elements: tuple[Projection, ...]
    top: Projection
    bottom: Projection

    def __len__(self) -> int:
        return len(self.elements)


def projection_lattice(cat: FiniteCategory, a, enum: Enumeration | None = None) -> ProjectionLattice:
    """Build P(a) and verify it is a meet semilattice with top and bottom."""
    elements = projections_on(cat, a, enum)
    pool = set(elements)
    one, zero = top(cat, a), bottom(cat, a)
    if one not in pool or zero not in pool:
        raise LatticeError(f"P({render_object(a)}) is missing top or bottom")
    for i in elements:
        if meet(cat, i, i) != i:
            raise LatticeError(f"meet is not idempotent at {render_morphism(i.morphism)}")
        if meet(cat, i, one) != i or meet(cat, one, i) != i:
            raise LatticeError(f"top is not neutral at {render_morphism(i.morphism)}")
        for j in elements:
            m = meet(cat, i, j)
            if m not in pool:
                raise LatticeError(
                    f"meet of {render_morphism(i.morphism)} and {render_morphism(j.morphism)} "
                    "leaves the projection set"
                )
            if m != meet(cat, j, i):
                raise LatticeError(
                    f"meet is not commutative at {render_morphism(i.morphism)}, "
                    f"{render_morphism(j.morphism)}"
                )
            for k in elements:
                if meet(cat, m, k) != meet(cat, i, meet(cat, j, k)):
                    raise LatticeError("meet is not associative")
    return ProjectionLattice(a, elements, one, zero)


# ---- annihilators -------------------------------------------------------


def annihilator_candidates(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> tuple[Projection, ...]:
    """All projections p on dom(f) with: f∘g = 0  ⇔  p∘g = g, for every
    enumerated g into dom(f).  In a Baer*-category there is exactly one."""
    enum = enum if enum is not None else Enumeration(cat)
    candidates = projections_on(cat, f.dom, enum)
    # the projections on dom(f) are themselves morphisms into dom(f) and are
    # exactly the g's that tell projections apart, so test against them even
    # when the sampled pool happens to miss them
    probes = list(enum.morphisms_into(f.dom))
    probes.extend(q.morphism for q in candidates)
    out = []
    for p in candidates:
        ok = True
        for g in probes:
            if cat.is_zero(cat.compose(f, g)) != (cat.compose(p.morphism, g) == g):
                ok = False
                break
        if ok:
            out.append(p)
    return tuple(out)


def annihilator_by_search(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> Projection:
    """The annihilator f′ found from its defining property, by enumeration."""
    enum = enum if enum is not None else Enumeration(cat)
    cache = enum.scratch.setdefault("annihilator", {})
    hit = cache.get(f)
    if hit is None:
        candidates = annihilator_candidates(cat, f, enum)
        if not candidates:
            raise AnnihilatorNotFoundError(f)
        if len(candidates) > 1:
            raise AnnihilatorNotUniqueError(f, candidates)
        hit = candidates[0]
        cache[f] = hit
    return hit


def annihilator(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> Projection:
    """f′: closed form for the full partial-bijection category, search otherwise."""
    if isinstance(cat, PBijCategory):
        return annihilator_pbij(f)
    return annihilator_by_search(cat, f, enum)


def double_annihilator(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> Projection:
    return annihilator(cat, annihilator(cat, f, enum).morphism, enum)


def is_closed(cat: FiniteCategory, i: Projection, enum: Enumeration | None = None) -> bool:
    """A projection is closed when it is its own double annihilator."""
    return double_annihilator(cat, i.morphism, enum) == i


# ---- the Baer* suite ----------------------------------------------------


def baer_star_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat
    if cat.zero_object is None:
        raise InvcatError("Baer* checks need a designated zero object")

    def zero_object_ok(a):
        into, outof = cat.hom(a, cat.zero_object), cat.hom(cat.zero_object, a)
        if len(into) != 1 or len(outof) != 1:
            return f"{render_object(cat.zero_object)} is not initial and terminal at {render_object(a)}"
        return None

    def _candidates(f: Morphism):
        cache = enum.scratch.setdefault("annihilator-candidates", {})
        hit = cache.get(f)
        if hit is None:
            hit = annihilator_candidates(cat, f, enum)
            cache[f] = hit
        return hit

    def annihilator_exists(f: Morphism):
        if not _candidates(f):
            return f"no annihilator for {render_morphism(f)}"
        return None

    def annihilator_unique(f: Morphism):
        candidates = _candidates(f)
        if len(candidates) > 1:
            return (
                f"{len(candidates)} annihilators for {render_morphism(f)}: "
                + ", ".join(render_morphism(p.morphism) for p in candidates[:2])
                + ", ..."
            )
        return None

    def projections_closed(case):
        a, i = case
        try:
            back = annihilator_by_search(cat, annihilator_by_search(cat, i.morphism, enum).morphism, enum)
        except NotBaerStarError as err:
            return str(err)
        if back != i:
            return (
                f"projection {render_morphism(i.morphism)} is not closed: "
                f"(i′)′ = {render_morphism(back.morphism)}"
            )
        return None

    def triple_annihilator(f: Morphism):
        try:
            first = annihilator_by_search(cat, f, enum)
            third = annihilator_by_search(
                cat, annihilator_by_search(cat, first.morphism, enum).morphism, enum
            )
        except NotBaerStarError as err:
            return str(err)
        if first != third:
            return f"f′ ≠ f‴ for {render_morphism(f)}"
        return None

    def semilattice_ok(a):
        try:
            projection_lattice(cat, a, enum)
        except LatticeError as err:
            return f"P({render_object(a)}): {err}"
        return None

    projection_cases = [
        (a, i) for a in cat.objects for i in projections_on(cat, a, enum)
    ]

    return [
        run_clause("baer.zero-object", "1", cat.objects, zero_object_ok),
        run_clause("baer.annihilator-exists", "1", enum.morphisms(), annihilator_exists),
        run_clause("baer.annihilator-unique", "1", enum.morphisms(), annihilator_unique),
        run_clause("baer.projections-closed", "1.1", projection_cases, projections_closed),
        run_clause("baer.triple-annihilator", "1.1", enum.morphisms(), triple_annihilator),
        run_clause("projections.meet-semilattice", "2", cat.objects, semilattice_ok),
    ]


def check_baer_star(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    """Verify annihilator existence and uniqueness, closure of projections,
    and the semilattice structure of P(A), all from the definitions."""
    return build_report("baer-star", cat, [baer_star_clauses], budget)
