"""Finite categories with involution and exhaustive checks of the
inverse-category axioms: every morphism f has a unique g with fgf = f and
gfg = g, and the induced involution satisfies the Moore-Penrose laws.
"""

from __future__ import annotations

import copy
import random
import time
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import comb, factorial
from typing import Any, Callable, Iterable, Iterator

from .report import SKIPPED, Clause, VerificationReport, run_clause


class InvcatError(Exception):
    """Base class for all library errors."""


class CompositionError(InvcatError):
    pass


class ObjectMismatchError(InvcatError):
    pass


class ShapeMismatchError(InvcatError):
    pass


class ZeroUnavailableError(InvcatError):
    pass


class LatticeError(InvcatError):
    pass


class NotInverseCategoryError(InvcatError):
    """A morphism with no, or more than one, quasi-inverse."""

    def __init__(self, morphism: "Morphism", candidates: tuple):
        self.morphism = morphism
        self.candidates = candidates
        what = "no quasi-inverse" if not candidates else f"{len(candidates)} quasi-inverses"
        super().__init__(f"{render_morphism(morphism)} has {what}")


class BudgetExceededError(InvcatError):
    """A hom-set larger than the enumeration budget allows."""

    def __init__(self, hom_size: int, dom: Any, cod: Any):
        self.hom_size = hom_size
        self.dom = dom
        self.cod = cod
        super().__init__(
            f"hom({render_object(dom)}, {render_object(cod)}) has {hom_size} morphisms, "
            "over the enumeration budget"
        )


def render_object(obj: Any) -> str:
    return getattr(obj, "name", str(obj))


@dataclass(frozen=True, slots=True, repr=False)
class Morphism:
    """A morphism between two objects, identified by its extensional payload.

    The payload is model data: a frozenset of (x, y) pairs for partial
    bijections, an element label for monoid-presented categories.  `name`
    is documentation only and is excluded from equality and hashing.
    """

    dom: Any
    cod: Any
    payload: Any
    name: str | None = field(default=None, compare=False)

    def __repr__(self) -> str:
        return f"<{render_morphism(self)}>"


def render_morphism(f: Morphism) -> str:
    if isinstance(f.payload, frozenset):
        inner = ", ".join(f"{x}↦{y}" for x, y in sorted(f.payload))
        body = "{" + inner + "}" if inner else "∅"
    else:
        body = f"[{f.payload}]"
    label = f"{f.name} = " if f.name else ""
    return f"{label}{render_object(f.dom)}→{render_object(f.cod)} {body}"


def payload_sort_key(payload: Any):
    if isinstance(payload, frozenset):
        return (1, tuple(sorted(payload)))
    return (0, str(payload))


def morphism_sort_key(f: Morphism):
    return (render_object(f.dom), render_object(f.cod), payload_sort_key(f.payload))


@dataclass(frozen=True, slots=True)
class Projection:
    """An idempotent, self-adjoint endomorphism, tagged with its object."""

    obj: Any
    morphism: Morphism


@dataclass(frozen=True)
class Budget:
    """Enumeration budget.  Hom-sets larger than hom(max_size, max_size)
    in the partial-bijection count are either sampled (`sample` morphisms,
    deterministically seeded) or rejected when `sample` is None.
    """

    max_size: int = 4
    sample: int | None = 64
    seed: int = 0

    @cached_property
    def homset_limit(self) -> int:
        n = self.max_size
        return sum(comb(n, k) * comb(n, k) * factorial(k) for k in range(n + 1))


class FiniteCategory:
    """A finite category presented by enumerable hom-sets.

    Subclasses supply the model rules `_hom`, `_compose`, `_involve` and
    `identity`.  Composition follows the right-factor-first convention:
    compose(f, g) is f∘g, defined when cod(g) = dom(f).
    """

    has_involution_rule = False

    def __init__(self, objects: Iterable, zero_object: Any = None):
        self._objects = tuple(objects)
        names = [render_object(a) for a in self._objects]
        if len(set(names)) != len(names):
            raise InvcatError("duplicate object names in category")
        self._zero_object = zero_object
        self._hom_cache: dict = {}
        self._compose_cache: dict = {}
        self._zero_cache: dict = {}
        self._quasi_inverse_cache: dict = {}
        self._compose_overrides: dict = {}
        self._involve_overrides: dict = {}

    # ---- model hooks -------------------------------------------------

    def _hom(self, a, b) -> tuple[Morphism, ...]:
        raise NotImplementedError

    def _compose(self, f: Morphism, g: Morphism) -> Morphism:
        raise NotImplementedError

    def _involve(self, f: Morphism) -> Morphism | None:
        return None

    def identity(self, a) -> Morphism:
        raise NotImplementedError

    def _hom_size(self, a, b) -> int:
        return len(self.hom(a, b))

    def _projection_pool(self, a) -> tuple | None:
        # models that can list every projection cheaply override this, so
        # projection searches stay complete even when hom-sets are sampled
        return None

    def _hom_sample(self, a, b, count: int, rng: random.Random) -> tuple[Morphism, ...]:
        pool = list(self.hom(a, b))
        picked = rng.sample(pool, min(count, len(pool)))
        return tuple(sorted(picked, key=morphism_sort_key))

    # ---- public surface ----------------------------------------------

    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def zero_object(self):
        return self._zero_object

    def hom(self, a, b) -> tuple[Morphism, ...]:
        key = (a, b)
        hit = self._hom_cache.get(key)
        if hit is None:
            hit = self._hom(a, b)
            self._hom_cache[key] = hit
        return hit

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if g.cod != f.dom:
            raise CompositionError(
                f"cannot compose {render_morphism(f)} after {render_morphism(g)}: "
                f"domain {render_object(f.dom)} does not match codomain {render_object(g.cod)}"
            )
        key = (f, g)
        if self._compose_overrides:
            hit = self._compose_overrides.get(key)
            if hit is not None:
                return hit
        hit = self._compose_cache.get(key)
        if hit is None:
            hit = self._compose(f, g)
            self._compose_cache[key] = hit
        return hit

    def involve(self, f: Morphism) -> Morphism:
        """The canonical involution f*.

        Uses the model rule when one exists, otherwise falls back to the
        unique quasi-inverse found by search (raising when it is not unique).
        """
        if self._involve_overrides:
            hit = self._involve_overrides.get(f)
            if hit is not None:
                return hit
        g = self._involve(f)
        if g is not None:
            return g
        return self.unique_quasi_inverse(f)

    def quasi_inverses_of(self, f: Morphism) -> tuple[Morphism, ...]:
        out = []
        for g in self.hom(f.cod, f.dom):
            if (
                self.compose(self.compose(f, g), f) == f
                and self.compose(self.compose(g, f), g) == g
            ):
                out.append(g)
        return tuple(out)

    def unique_quasi_inverse(self, f: Morphism) -> Morphism:
        hit = self._quasi_inverse_cache.get(f)
        if hit is None:
            candidates = self.quasi_inverses_of(f)
            if len(candidates) != 1:
                raise NotInverseCategoryError(f, candidates)
            hit = candidates[0]
            self._quasi_inverse_cache[f] = hit
        return hit

    def zero(self, a, b) -> Morphism:
        key = (a, b)
        hit = self._zero_cache.get(key)
        if hit is None:
            z = self._zero_object
            if z is None:
                raise ZeroUnavailableError("no zero object designated")
            into, outof = self.hom(a, z), self.hom(z, b)
            if len(into) != 1 or len(outof) != 1:
                raise ZeroUnavailableError(f"{render_object(z)} is not a zero object")
            hit = self.compose(outof[0], into[0])
            self._zero_cache[key] = hit
        return hit

    def is_zero(self, f: Morphism) -> bool:
        return f == self.zero(f.dom, f.cod)

    def morphism_pool(self, a, b, budget: Budget | None = None) -> tuple[tuple[Morphism, ...], bool]:
        """The hom-set, or a seeded sample of it when over budget.

        Returns (morphisms, sampled).  Raises BudgetExceededError when the
        hom-set is over budget and sampling is disabled.
        """
        budget = budget if budget is not None else Budget()
        size = self._hom_size(a, b)
        if size <= budget.homset_limit:
            return self.hom(a, b), False
        if budget.sample is None:
            raise BudgetExceededError(size, a, b)
        rng = random.Random(f"{budget.seed}|{render_object(a)}|{render_object(b)}")
        return self._hom_sample(a, b, budget.sample, rng), True

    # ---- seeded defects, for mutation testing -------------------------

    def with_corrupted_composition(self, f: Morphism, g: Morphism, result: Morphism) -> "FiniteCategory":
        if g.cod != f.dom or result.dom != g.dom or result.cod != f.cod:
            raise ShapeMismatchError("corrupted composite must be shape-correct")
        twin = self._clone()
        twin._compose_overrides[(f, g)] = result
        return twin

    def with_corrupted_involution(self, f: Morphism, result: Morphism) -> "FiniteCategory":
        if result.dom != f.cod or result.cod != f.dom:
            raise ShapeMismatchError("corrupted involution must be shape-correct")
        twin = self._clone()
        twin._involve_overrides[f] = result
        return twin

    def _clone(self) -> "FiniteCategory":
        twin = copy.copy(self)
        twin._hom_cache = dict(self._hom_cache)
        twin._compose_cache = {}
        twin._zero_cache = {}
        twin._quasi_inverse_cache = {}
        twin._compose_overrides = dict(self._compose_overrides)
        twin._involve_overrides = dict(self._involve_overrides)
        return twin


class TableCategory(FiniteCategory):
    """A category given by explicit hom-sets and a composition table."""

    def __init__(
        self,
        objects: Iterable,
        homs: dict,
        compose_table: dict,
        identities: dict,
        involution_table: dict | None = None,
        zero_object: Any = None,
    ):
        super().__init__(objects, zero_object)
        self._homs = {
            pair: tuple(sorted(morphisms, key=morphism_sort_key))
            for pair, morphisms in homs.items()
        }
        self._table = dict(compose_table)
        self._identities = dict(identities)
        self._involution_table = dict(involution_table) if involution_table is not None else None
        self.has_involution_rule = self._involution_table is not None
        for a in self._objects:
            if a not in self._identities:
                raise InvcatError(f"missing identity for object {render_object(a)}")
        for (a, b), morphisms in self._homs.items():
            for m in morphisms:
                if m.dom != a or m.cod != b:
                    raise InvcatError(f"{render_morphism(m)} filed under wrong hom-set")

    def _hom(self, a, b) -> tuple[Morphism, ...]:
        return self._homs.get((a, b), ())

    def _compose(self, f: Morphism, g: Morphism) -> Morphism:
        try:
            return self._table[(f, g)]
        except KeyError:
            raise InvcatError(
                f"composition table is missing {render_morphism(f)} after {render_morphism(g)}"
            ) from None

    def _involve(self, f: Morphism) -> Morphism | None:
        if self._involution_table is None:
            return None
        try:
            return self._involution_table[f]
        except KeyError:
            raise InvcatError(f"involution table is missing {render_morphism(f)}") from None

    def identity(self, a) -> Morphism:
        try:
            return self._identities[a]
        except KeyError:
            raise InvcatError(f"unknown object {render_object(a)}") from None


class Enumeration:
    """Deterministic morphism pools for one verification run, under a budget."""

    def __init__(self, cat: FiniteCategory, budget: Budget | None = None):
        self.cat = cat
        self.budget = budget if budget is not None else Budget()
        self._pools: dict = {}
        self.sampled = False
        self.scratch: dict = {}

    def pool(self, a, b) -> tuple[Morphism, ...]:
        key = (a, b)
        pool = self._pools.get(key)
        if pool is None:
            pool, sampled = self.cat.morphism_pool(a, b, self.budget)
            self._pools[key] = pool
            if sampled:
                self.sampled = True
        return pool

    def morphisms(self) -> Iterator[Morphism]:
        for a in self.cat.objects:
            for b in self.cat.objects:
                yield from self.pool(a, b)

    def morphisms_into(self, b) -> Iterator[Morphism]:
        for a in self.cat.objects:
            yield from self.pool(a, b)

    def morphisms_out_of(self, a) -> Iterator[Morphism]:
        for b in self.cat.objects:
            yield from self.pool(a, b)

    def endos(self, a) -> tuple[Morphism, ...]:
        return self.pool(a, a)

    def composable_pairs(self) -> Iterator[tuple[Morphism, Morphism]]:
        for a in self.cat.objects:
            for b in self.cat.objects:
                for c in self.cat.objects:
                    for f in self.pool(b, c):
                        for g in self.pool(a, b):
                            yield f, g

    def composable_triples(self) -> Iterator[tuple[Morphism, Morphism, Morphism]]:
        objs = self.cat.objects
        for a in objs:
            for b in objs:
                for c in objs:
                    for d in objs:
                        for f in self.pool(c, d):
                            for g in self.pool(b, c):
                                for h in self.pool(a, b):
                                    yield f, g, h

    def total_enumerated(self) -> int:
        return sum(len(p) for p in self._pools.values())


def build_report(
    suite: str,
    cat: FiniteCategory,
    groups: Iterable[Callable[[Enumeration], list[Clause]]],
    budget: Budget | None = None,
) -> VerificationReport:
    enum = Enumeration(cat, budget)
    start = time.perf_counter()
    clauses: list[Clause] = []
    for group in groups:
        clauses.extend(group(enum))
    elapsed = time.perf_counter() - start
    if enum.sampled:
        clauses = [replace(c, sampled=True) if c.status != SKIPPED else c for c in clauses]
    return VerificationReport(
        suite=suite,
        clauses=clauses,
        morphisms_enumerated=enum.total_enumerated(),
        wall_time=elapsed,
        seed=enum.budget.seed if enum.sampled else None,
    )


# ---- predicates -------------------------------------------------------


def is_generalized_inverse(cat: FiniteCategory, f: Morphism, g: Morphism) -> bool:
    """fgf = f, gfg = g, and both composites fg and gf are self-adjoint."""
    if g.dom != f.cod or g.cod != f.dom:
        raise ShapeMismatchError(
            f"{render_morphism(g)} cannot be a generalized inverse of {render_morphism(f)}"
        )
    fg = cat.compose(f, g)
    gf = cat.compose(g, f)
    return (
        cat.compose(fg, f) == f
        and cat.compose(gf, g) == g
        and cat.involve(fg) == fg
        and cat.involve(gf) == gf
    )


def is_projection(cat: FiniteCategory, f: Morphism) -> bool:
    return f.dom == f.cod and cat.compose(f, f) == f and cat.involve(f) == f


def involution(cat: FiniteCategory, f: Morphism) -> Morphism:
    return cat.involve(f)


def quasi_inverses(cat: FiniteCategory, f: Morphism) -> tuple[Morphism, ...]:
    return cat.quasi_inverses_of(f)


# ---- the inverse-category axiom suite ----------------------------------


def _involve_or_witness(cat: FiniteCategory, f: Morphism):
    try:
        return cat.involve(f), None
    except NotInverseCategoryError as err:
        return None, str(err)


def inverse_category_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def identity_laws(f: Morphism):
        if cat.compose(f, cat.identity(f.dom)) != f:
            return f"f∘id ≠ f for {render_morphism(f)}"
        if cat.compose(cat.identity(f.cod), f) != f:
            return f"id∘f ≠ f for {render_morphism(f)}"
        return None

    def associativity(triple):
        f, g, h = triple
        left = cat.compose(cat.compose(f, g), h)
        right = cat.compose(f, cat.compose(g, h))
        if left != right:
            return (
                f"(f∘g)∘h ≠ f∘(g∘h) for f={render_morphism(f)}, "
                f"g={render_morphism(g)}, h={render_morphism(h)}"
            )
        return None

    def inverse_exists(f: Morphism):
        if not cat.quasi_inverses_of(f):
            return f"{render_morphism(f)} has no quasi-inverse"
        return None

    def inverse_unique(f: Morphism):
        candidates = cat.quasi_inverses_of(f)
        if len(candidates) > 1:
            return (
                f"{render_morphism(f)} has {len(candidates)} quasi-inverses, e.g. "
                f"{render_morphism(candidates[0])} and {render_morphism(candidates[1])}"
            )
        return None

    def involutory(f: Morphism):
        g, witness = _involve_or_witness(cat, f)
        if witness:
            return witness
        gg, witness = _involve_or_witness(cat, g)
        if witness:
            return witness
        if gg != f:
            return f"(f*)* = {render_morphism(gg)} ≠ f = {render_morphism(f)}"
        return None

    def antihomomorphism(pair):
        f, g = pair
        try:
            left = cat.involve(cat.compose(f, g))
            right = cat.compose(cat.involve(g), cat.involve(f))
        except NotInverseCategoryError as err:
            return str(err)
        if left != right:
            return (
                f"(f∘g)* ≠ g*∘f* for f={render_morphism(f)}, g={render_morphism(g)}"
            )
        return None

    def moore_penrose(f: Morphism):
        g, witness = _involve_or_witness(cat, f)
        if witness:
            return witness
        try:
            if not is_generalized_inverse(cat, f, g):
                return f"f* fails the Moore-Penrose laws for {render_morphism(f)}"
        except NotInverseCategoryError as err:
            return str(err)
        return None

    def moore_penrose_unique(f: Morphism):
        hits = []
        for g in cat.hom(f.cod, f.dom):
            try:
                if is_generalized_inverse(cat, f, g):
                    hits.append(g)
            except NotInverseCategoryError:
                continue
        if len(hits) > 1:
            return (
                f"{render_morphism(f)} has {len(hits)} Moore-Penrose inverses, e.g. "
                f"{render_morphism(hits[0])} and {render_morphism(hits[1])}"
            )
        return None

    clauses = [
        run_clause("category.identity-laws", "cat", enum.morphisms(), identity_laws),
        run_clause("category.associativity", "cat", enum.composable_triples(), associativity),
        run_clause("inverse.exists", "1", enum.morphisms(), inverse_exists),
        run_clause("inverse.unique", "1", enum.morphisms(), inverse_unique),
        run_clause("involution.involutory", "1", enum.morphisms(), involutory),
        run_clause("involution.antihomomorphism", "1", enum.composable_pairs(), antihomomorphism),
        run_clause("involution.moore-penrose", "1", enum.morphisms(), moore_penrose),
        run_clause("involution.moore-penrose-unique", "1", enum.morphisms(), moore_penrose_unique),
    ]

    if cat.has_involution_rule:
        def model_agreement(f: Morphism):
            candidates = cat.quasi_inverses_of(f)
            if len(candidates) != 1:
                return f"{render_morphism(f)} has {len(candidates)} quasi-inverses"
            if cat.involve(f) != candidates[0]:
                return (
                    f"model involution {render_morphism(cat.involve(f))} disagrees with the "
                    f"unique quasi-inverse {render_morphism(candidates[0])} of {render_morphism(f)}"
                )
            return None

        clauses.append(
            run_clause("involution.model-agreement", "1", enum.morphisms(), model_agreement)
        )
    else:
        clauses.append(Clause("involution.model-agreement", "1", SKIPPED, 0))

    return clauses


def check_inverse_category(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    """Verify the inverse-category axioms over every enumerated morphism."""
    return build_report("inverse-category", cat, [inverse_category_clauses], budget)
