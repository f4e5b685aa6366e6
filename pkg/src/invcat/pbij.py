"""Finite sets and partial bijections: the concrete model and its closed forms.

A partial bijection A ⇀ B is a set of (x, y) pairs that is functional and
injective.  Composition is relational (right factor first), the involution
is pair reversal, and hom(A, B) has Σ_k C(|A|,k)·C(|B|,k)·k! elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable

from .core import FiniteCategory, InvcatError, Morphism, Projection


class PBijValidationError(InvcatError):
    def __init__(self, message: str, witness):
        self.witness = witness
        super().__init__(message)


class UnknownElementError(PBijValidationError):
    pass


class DuplicateDomainElementError(PBijValidationError):
    pass


class DuplicateCodomainElementError(PBijValidationError):
    pass


@dataclass(frozen=True, slots=True)
class FinSet:
    """A finite set of string labels with a name.  Labels are kept sorted."""

    name: str
    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise InvcatError("object name must be non-empty")
        if any(not e for e in self.elements):
            raise InvcatError(f"empty element label in {self.name}")
        if len(set(self.elements)) != len(self.elements):
            raise InvcatError(f"duplicate element labels in {self.name}")
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    def __contains__(self, label: str) -> bool:
        return label in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinSet({self.name})"


def subset_finset(labels: Iterable[str]) -> FinSet:
    """The canonical FinSet carrying a subset: named by its elements, "0" if empty."""
    labels = tuple(sorted(labels))
    name = "{" + ",".join(labels) + "}" if labels else "0"
    return FinSet(name, labels)


ZERO_FINSET = subset_finset(())


def make_pbij(dom: FinSet, cod: FinSet, pairs: Iterable[tuple[str, str]], name: str | None = None) -> Morphism:
    """Validate pairs as a partial bijection dom ⇀ cod and build the morphism."""
    seen_x: set[str] = set()
    seen_y: set[str] = set()
    for x, y in pairs:
        if x not in dom:
            raise UnknownElementError(f"{x!r} is not an element of {dom.name}", x)
        if y not in cod:
            raise UnknownElementError(f"{y!r} is not an element of {cod.name}", y)
        if x in seen_x:
            raise DuplicateDomainElementError(f"{x!r} is mapped twice", x)
        if y in seen_y:
            raise DuplicateCodomainElementError(f"{y!r} is hit twice", y)
        seen_x.add(x)
        seen_y.add(y)
    return Morphism(dom, cod, frozenset(pairs), name)


def pbij_pairs(f: Morphism) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(f.payload))


def mapping(f: Morphism) -> dict[str, str]:
    return dict(f.payload)


def defined_labels(f: Morphism) -> tuple[str, ...]:
    return tuple(sorted(x for x, _ in f.payload))


def image_labels(f: Morphism) -> tuple[str, ...]:
    return tuple(sorted(y for _, y in f.payload))


def undefined_labels(f: Morphism) -> tuple[str, ...]:
    taken = {x for x, _ in f.payload}
    return tuple(x for x in f.dom.elements if x not in taken)


def unhit_labels(f: Morphism) -> tuple[str, ...]:
    hit = {y for _, y in f.payload}
    return tuple(y for y in f.cod.elements if y not in hit)


def compose_pbij(f: Morphism, g: Morphism) -> Morphism:
    # g first, then f
    fm = dict(f.payload)
    pairs = frozenset((x, fm[y]) for x, y in g.payload if y in fm)
    return Morphism(g.dom, f.cod, pairs)


def invert_pbij(f: Morphism) -> Morphism:
    return Morphism(f.cod, f.dom, frozenset((y, x) for x, y in f.payload))


def identity_pbij(a: FinSet) -> Morphism:
    return Morphism(a, a, frozenset((x, x) for x in a.elements))


def zero_pbij(a: FinSet, b: FinSet) -> Morphism:
    return Morphism(a, b, frozenset())


def partial_identity(a: FinSet, labels: Iterable[str]) -> Morphism:
    labels = set(labels)
    missing = labels - set(a.elements)
    if missing:
        raise UnknownElementError(f"{sorted(missing)!r} not elements of {a.name}", sorted(missing))
    return Morphism(a, a, frozenset((x, x) for x in labels))


def subset_projection(a: FinSet, labels: Iterable[str]) -> Projection:
    return Projection(a, partial_identity(a, labels))


def projection_labels(p: Projection) -> tuple[str, ...]:
    return tuple(sorted(x for x, _ in p.morphism.payload))


def inclusion(a: FinSet, labels: Iterable[str]) -> Morphism:
    """The canonical mono S ↪ a on the subset S of a's labels."""
    sub = subset_finset(labels)
    missing = set(sub.elements) - set(a.elements)
    if missing:
        raise UnknownElementError(f"{sorted(missing)!r} not elements of {a.name}", sorted(missing))
    return Morphism(sub, a, frozenset((x, x) for x in sub.elements))


def corestriction(a: FinSet, labels: Iterable[str]) -> Morphism:
    """The canonical epi a ⇀ S, the partial identity onto the subset S."""
    sub = subset_finset(labels)
    missing = set(sub.elements) - set(a.elements)
    if missing:
        raise UnknownElementError(f"{sorted(missing)!r} not elements of {a.name}", sorted(missing))
    return Morphism(a, sub, frozenset((x, x) for x in sub.elements))


def hom_count(m: int, n: int) -> int:
    """Number of partial bijections from an m-set to an n-set."""
    return sum(comb(m, k) * comb(n, k) * factorial(k) for k in range(min(m, n) + 1))


def enumerate_pbij(a: FinSet, b: FinSet) -> tuple[Morphism, ...]:
    """All partial bijections a ⇀ b, sorted by their sorted pair list."""
    out = []
    for k in range(min(len(a), len(b)) + 1):
        for xs in itertools.combinations(a.elements, k):
            for ys in itertools.permutations(b.elements, k):
                out.append(Morphism(a, b, frozenset(zip(xs, ys))))
    out.sort(key=lambda f: tuple(sorted(f.payload)))
    return tuple(out)


# ---- closed forms ------------------------------------------------------


def image_subset(f: Morphism, labels: Iterable[str]) -> tuple[str, ...]:
    fm = mapping(f)
    return tuple(sorted(fm[x] for x in labels if x in fm))


def preimage_subset(f: Morphism, labels: Iterable[str]) -> tuple[str, ...]:
    wanted = set(labels)
    return tuple(sorted(x for x, y in f.payload if y in wanted))


def inverse_image_subset(f: Morphism, labels: Iterable[str]) -> tuple[str, ...]:
    """Preimage of the subset, together with everything where f is undefined."""
    return tuple(sorted(set(preimage_subset(f, labels)) | set(undefined_labels(f))))


def annihilator_pbij(f: Morphism) -> Projection:
    return subset_projection(f.dom, undefined_labels(f))


def domain_projection_pbij(f: Morphism) -> Projection:
    return subset_projection(f.dom, defined_labels(f))


def image_projection_pbij(f: Morphism) -> Projection:
    return subset_projection(f.cod, image_labels(f))


@dataclass(frozen=True)
class PBijStructure:
    inverse: Morphism
    annihilator: Projection
    domain_projection: Projection
    image_projection: Projection


def pbij_structure(f: Morphism) -> PBijStructure:
    """The four canonical companions of a partial bijection, in closed form."""
    return PBijStructure(
        inverse=invert_pbij(f),
        annihilator=annihilator_pbij(f),
        domain_projection=domain_projection_pbij(f),
        image_projection=image_projection_pbij(f),
    )


# ---- the category ------------------------------------------------------


class PBijCategory(FiniteCategory):
    """The category of the declared finite sets and all partial bijections.

    Hom-sets, composition and involution also work for undeclared FinSets
    (canonical subset carriers show up as kernel and image objects); the
    declared objects only bound quantification in the checking suites.
    """

    has_involution_rule = True

    def __init__(self, sets: Iterable[FinSet], include_zero: bool = True):
        sets = list(sets)
        zero = next((s for s in sets if len(s) == 0), None)
        if zero is None and include_zero:
            zero = ZERO_FINSET
            sets.insert(0, zero)
        super().__init__(sets, zero)

    def _hom(self, a: FinSet, b: FinSet) -> tuple[Morphism, ...]:
        return enumerate_pbij(a, b)

    def _hom_size(self, a: FinSet, b: FinSet) -> int:
        return hom_count(len(a), len(b))

    def _hom_sample(self, a: FinSet, b: FinSet, count: int, rng) -> tuple[Morphism, ...]:
        m, n = len(a), len(b)
        ks = list(range(min(m, n) + 1))
        weights = [comb(m, k) * comb(n, k) * factorial(k) for k in ks]
        seen = set()
        for _ in range(count):
            k = rng.choices(ks, weights)[0]
            xs = sorted(rng.sample(a.elements, k))
            ys = rng.sample(b.elements, k)
            seen.add(Morphism(a, b, frozenset(zip(xs, ys))))
        return tuple(sorted(seen, key=lambda f: tuple(sorted(f.payload))))

    def _compose(self, f: Morphism, g: Morphism) -> Morphism:
        return compose_pbij(f, g)

    def _involve(self, f: Morphism) -> Morphism:
        return invert_pbij(f)

    def identity(self, a: FinSet) -> Morphism:
        return identity_pbij(a)

    def _projection_pool(self, a: FinSet) -> tuple:
        # the projections on a finite set are exactly its partial identities
        subsets = itertools.chain.from_iterable(
            itertools.combinations(a.elements, k) for k in range(len(a.elements) + 1)
        )
        return tuple(subset_projection(a, labels) for labels in subsets)

    def zero(self, a: FinSet, b: FinSet) -> Morphism:
        return zero_pbij(a, b)

    def finset(self, name: str) -> FinSet:
        for s in self.objects:
            if s.name == name:
                return s
        raise InvcatError(f"no object named {name!r}")


def size_finset(k: int) -> FinSet:
    """Canonical k-element object: S<k> with elements e1..ek ("0" when empty)."""
    if k == 0:
        return ZERO_FINSET
    return FinSet(f"S{k}", tuple(f"e{i}" for i in range(1, k + 1)))


def canonical_pbij_category(sizes: Iterable[int]) -> PBijCategory:
    return PBijCategory([size_finset(k) for k in sorted(set(sizes))], include_zero=True)
