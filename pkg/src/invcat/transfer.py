"""Transfer maps between projection lattices.

For f: A → B three maps are realized as explicit finite tables:

  image           P(f)(i)  = f∘i∘f*        covariant,     P(A) → P(B)
  inverse image   P'(f)(j) = (j′∘f)′       contravariant, P(B) → P(A)
  strict preimage P''(f)(j) = (j∘f)″       contravariant, P(B) → P(A)

plus the suites checking the law catalog for them: smallest-subobject and
pullback characterizations, lattice-map properties, the mono/epi
biconditionals, the complement identity tying P'' to P', and functoriality.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import (
    Budget,
    Enumeration,
    FiniteCategory,
    InvcatError,
    Morphism,
    ObjectMismatchError,
    Projection,
    ShapeMismatchError,
    build_report,
    render_morphism,
    render_object,
)
from .exactness import (
    CommutingSquare,
    NoFactorizationError,
    NonCommutingSquareError,
    NotMonoError,
    is_epi,
    is_mono,
    mono_epi_factorize,
    pullback_witness,
)
from .projections import (
    NotBaerStarError,
    ProjectionLattice,
    annihilator,
    bottom,
    projections_on,
    top,
)
from .report import Clause, VerificationReport, run_clause


class TransferCertificationError(InvcatError):
    pass


class TransferKind(str, Enum):
    IMAGE = "P"
    INVERSE_IMAGE = "P'"
    STRICT_PREIMAGE = "P''"


def transfer(cat: FiniteCategory, f: Morphism, h: Morphism) -> Morphism:
    """Conjugation f∘h∘f* of an arbitrary endomorphism h of dom(f)."""
    if h.dom != f.dom or h.cod != f.dom:
        raise ShapeMismatchError(f"{render_morphism(h)} is not an endomorphism of dom(f)")
    return cat.compose(cat.compose(f, h), cat.involve(f))


def apply_P(cat: FiniteCategory, f: Morphism, i: Projection) -> Projection:
    if i.obj != f.dom:
        raise ObjectMismatchError(
            f"projection lives on {render_object(i.obj)}, not on dom(f) = {render_object(f.dom)}"
        )
    return Projection(f.cod, transfer(cat, f, i.morphism))


def apply_Pprime(cat: FiniteCategory, f: Morphism, j: Projection, enum: Enumeration | None = None) -> Projection:
    if j.obj != f.cod:
        raise ObjectMismatchError(
            f"projection lives on {render_object(j.obj)}, not on cod(f) = {render_object(f.cod)}"
        )
    j_ann = annihilator(cat, j.morphism, enum)
    return annihilator(cat, cat.compose(j_ann.morphism, f), enum)


def apply_Pdoubleprime(cat: FiniteCategory, f: Morphism, j: Projection, enum: Enumeration | None = None) -> Projection:
    if j.obj != f.cod:
        raise ObjectMismatchError(
            f"projection lives on {render_object(j.obj)}, not on cod(f) = {render_object(f.cod)}"
        )
    once = annihilator(cat, cat.compose(j.morphism, f), enum)
    return annihilator(cat, once.morphism, enum)


# ---- explicit tables -------------------------------------------------------


def lattice_on(enum: Enumeration, a) -> ProjectionLattice:
    """P(a) as found by enumeration, cached per run.  The semilattice laws
    themselves are the axioms suite's business, not re-verified here."""
    cache = enum.scratch.setdefault("lattice", {})
    lat = cache.get(a)
    if lat is None:
        elements = projections_on(enum.cat, a, enum)
        lat = ProjectionLattice(a, elements, top(enum.cat, a), bottom(enum.cat, a))
        cache[a] = lat
    return lat


@dataclass(frozen=True)
class TransferMap:
    """One transfer map materialized as a finite table over its source lattice."""

    kind: TransferKind
    morphism: Morphism
    source: ProjectionLattice
    target: ProjectionLattice
    table: dict

    def apply(self, p: Projection) -> Projection:
        return self.table[p]

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table.values()) >= set(self.target.elements)


def transfer_table(cat: FiniteCategory, kind: TransferKind, f: Morphism, enum: Enumeration | None = None) -> TransferMap:
    enum = enum if enum is not None else Enumeration(cat)
    if kind is TransferKind.IMAGE:
        src, tgt = f.dom, f.cod
        fn = lambda i: apply_P(cat, f, i)
    elif kind is TransferKind.INVERSE_IMAGE:
        src, tgt = f.cod, f.dom
        fn = lambda j: apply_Pprime(cat, f, j, enum)
    else:
        src, tgt = f.cod, f.dom
        fn = lambda j: apply_Pdoubleprime(cat, f, j, enum)
    source, target = lattice_on(enum, src), lattice_on(enum, tgt)
    return TransferMap(kind, f, source, target, {p: fn(p) for p in source.elements})


# ---- subobject transfer ----------------------------------------------------


def _monos_into(enum: Enumeration, b) -> tuple[Morphism, ...]:
    cache = enum.scratch.setdefault("monos-into", {})
    hit = cache.get(b)
    if hit is None:
        hit = tuple(s for s in enum.morphisms_into(b) if is_mono(enum.cat, s))
        cache[b] = hit
    return hit


def image_of(cat: FiniteCategory, f: Morphism, u: Morphism, certify: bool = True, enum: Enumeration | None = None) -> Morphism:
    """The image of f∘u: the mono part p of the factorization of the
    transferred projection P(f)(u∘u*) = p∘p*.

    With `certify`, p is checked to be the smallest subobject of cod(f)
    through which f∘u factors, by scanning every enumerated mono.
    """
    enum = enum if enum is not None else Enumeration(cat)
    if u.cod != f.dom:
        raise ShapeMismatchError(f"{render_morphism(u)} does not land in dom(f)")
    if not is_mono(cat, u):
        raise NotMonoError(f"{render_morphism(u)} is not a monomorphism")
    moved = apply_P(cat, f, Projection(f.dom, cat.compose(u, cat.involve(u))))
    p = mono_epi_factorize(cat, moved.morphism, enum).p
    if certify:
        witness = smallest_subobject_witness(cat, f, u, p, enum)
        if witness is not None:
            raise TransferCertificationError(witness)
    return p


def smallest_subobject_witness(cat: FiniteCategory, f: Morphism, u: Morphism, p: Morphism, enum: Enumeration | None = None) -> str | None:
    """None when f∘u factors through p and p factors through every
    enumerated mono that f∘u factors through."""
    enum = enum if enum is not None else Enumeration(cat)
    fu = cat.compose(f, u)
    pp = cat.compose(p, cat.involve(p))
    if cat.compose(pp, fu) != fu:
        return f"f∘u = {render_morphism(fu)} does not factor through {render_morphism(p)}"
    for s in _monos_into(enum, f.cod):
        ss = cat.compose(s, cat.involve(s))
        if cat.compose(ss, fu) == fu and cat.compose(ss, p) != p:
            return (
                f"f∘u = {render_morphism(fu)} factors through {render_morphism(s)} "
                f"but {render_morphism(p)} does not"
            )
    return None


def inverse_image_of(cat: FiniteCategory, f: Morphism, v: Morphism, certify: bool = True, enum: Enumeration | None = None) -> Morphism:
    """The mono u with u∘u* = P'(f)(v∘v*), certified (when asked) by the
    pullback property of the square assembled in square_for_inverse_image."""
    enum = enum if enum is not None else Enumeration(cat)
    if v.cod != f.cod:
        raise ShapeMismatchError(f"{render_morphism(v)} does not land in cod(f)")
    if not is_mono(cat, v):
        raise NotMonoError(f"{render_morphism(v)} is not a monomorphism")
    moved = apply_Pprime(cat, f, Projection(f.cod, cat.compose(v, cat.involve(v))), enum)
    u = mono_epi_factorize(cat, moved.morphism, enum).p
    if certify:
        try:
            witness = pullback_witness(cat, square_for_inverse_image(cat, f, v, u), enum)
        except NonCommutingSquareError as err:
            witness = str(err)
        if witness is not None:
            raise TransferCertificationError(witness)
    return u


def square_for_inverse_image(cat: FiniteCategory, f: Morphism, v: Morphism, u: Morphism | None = None, enum: Enumeration | None = None) -> CommutingSquare:
    """The square with left leg u, bottom f, right v, and top edge v*∘f∘u."""
    if u is None:
        u = inverse_image_of(cat, f, v, certify=False, enum=enum)
    top_edge = cat.compose(cat.involve(v), cat.compose(f, u))
    square = CommutingSquare(top=top_edge, left=u, right=v, bottom=f)
    if cat.compose(square.bottom, square.left) != cat.compose(square.right, square.top):
        raise NonCommutingSquareError(
            f"f∘u ≠ v∘(v*∘f∘u) for f = {render_morphism(f)}, u = {render_morphism(u)}, "
            f"v = {render_morphism(v)}: f∘u does not factor through v's subobject"
        )
    return square


# ---- law suites ------------------------------------------------------------


def _mono_pairs(enum: Enumeration, into_dom: bool):
    """(f, mono) pairs: monos into dom(f) when into_dom, else into cod(f)."""
    for f in enum.morphisms():
        for s in _monos_into(enum, f.dom if into_dom else f.cod):
            yield f, s


def image_smallest_subobject_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def smallest(case):
        f, u = case
        try:
            image_of(cat, f, u, certify=True, enum=enum)
        except (TransferCertificationError, NoFactorizationError) as err:
            return f"f = {render_morphism(f)}, u = {render_morphism(u)}: {err}"
        return None

    return [run_clause("image.smallest-subobject", "2.1", _mono_pairs(enum, into_dom=True), smallest)]


def image_lattice_map_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def table(f):
        return transfer_table(cat, TransferKind.IMAGE, f, enum)

    def preserves_mono(f: Morphism):
        if is_mono(cat, f) and not table(f).is_injective():
            return f"f = {render_morphism(f)} is mono but its image map is not injective"
        return None

    def preserves_epi(f: Morphism):
        if is_epi(cat, f) and not table(f).is_surjective():
            return f"f = {render_morphism(f)} is epi but its image map is not surjective"
        return None

    def bottom_top(f: Morphism):
        if apply_P(cat, f, bottom(cat, f.dom)) != bottom(cat, f.cod):
            return f"P(f)(0) ≠ 0 for f = {render_morphism(f)}"
        ff = cat.compose(f, cat.involve(f))
        if apply_P(cat, f, top(cat, f.dom)) != Projection(f.cod, ff):
            return f"P(f)(1) ≠ f∘f* for f = {render_morphism(f)}"
        return None

    def domain_projection(f: Morphism):
        moved = apply_P(cat, f, Projection(f.dom, cat.compose(cat.involve(f), f)))
        if moved != Projection(f.cod, cat.compose(f, cat.involve(f))):
            return f"P(f)(f*∘f) ≠ f∘f* for f = {render_morphism(f)}"
        return None

    return [
        run_clause("image.preserves-mono", "2.2.i", enum.morphisms(), preserves_mono),
        run_clause("image.preserves-epi", "2.2.i", enum.morphisms(), preserves_epi),
        run_clause("image.bottom-top", "2.2.ii", enum.morphisms(), bottom_top),
        run_clause("image.domain-projection", "2.2.iii", enum.morphisms(), domain_projection),
    ]


def _semilattice_map_clauses(
    enum: Enumeration,
    prefix: str,
    kind: TransferKind,
    anchors: tuple[str, str],
) -> list[Clause]:
    """The two lattice-map laws every transfer map satisfies: meets are
    preserved, hence so is the order."""
    cat = enum.cat

    def source(f: Morphism) -> ProjectionLattice:
        return lattice_on(enum, f.dom if kind is TransferKind.IMAGE else f.cod)

    def fn(f: Morphism, p: Projection) -> Projection:
        if kind is TransferKind.IMAGE:
            return apply_P(cat, f, p)
        if kind is TransferKind.INVERSE_IMAGE:
            return apply_Pprime(cat, f, p, enum)
        return apply_Pdoubleprime(cat, f, p, enum)

    def meets(f: Morphism):
        lat = source(f)
        for i in lat.elements:
            fi = fn(f, i)
            for j in lat.elements:
                met = Projection(i.obj, cat.compose(i.morphism, j.morphism))
                left = fn(f, met)
                right = Projection(fi.obj, cat.compose(fi.morphism, fn(f, j).morphism))
                if left != right:
                    return (
                        f"meet not preserved by {kind.value}(f) for f = {render_morphism(f)}, "
                        f"i = {render_morphism(i.morphism)}, j = {render_morphism(j.morphism)}"
                    )
        return None

    def order(f: Morphism):
        lat = source(f)
        for i in lat.elements:
            for j in lat.elements:
                if cat.compose(i.morphism, j.morphism) != i.morphism:
                    continue
                fi, fj = fn(f, i), fn(f, j)
                if cat.compose(fi.morphism, fj.morphism) != fi.morphism:
                    return (
                        f"i ≤ j but {kind.value}(f)(i) ≰ {kind.value}(f)(j) for "
                        f"f = {render_morphism(f)}, i = {render_morphism(i.morphism)}, "
                        f"j = {render_morphism(j.morphism)}"
                    )
        return None

    return [
        run_clause(f"{prefix}.meet-homomorphism", anchors[0], enum.morphisms(), meets),
        run_clause(f"{prefix}.order-preserving", anchors[1], enum.morphisms(), order),
    ]


def image_order_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat
    clauses = _semilattice_map_clauses(enum, "image", TransferKind.IMAGE, ("2.3.i", "2.3.ii"))

    def bounded(f: Morphism):
        ff = cat.compose(f, cat.involve(f))
        for i in lattice_on(enum, f.dom).elements:
            moved = apply_P(cat, f, i).morphism
            if cat.compose(moved, ff) != moved:
                return f"P(f)(i) ≰ f∘f* for f = {render_morphism(f)}, i = {render_morphism(i.morphism)}"
        return None

    def saturation(f: Morphism):
        dom_proj = cat.compose(cat.involve(f), f)
        ff = cat.compose(f, cat.involve(f))
        for i in lattice_on(enum, f.dom).elements:
            if cat.compose(dom_proj, i.morphism) != dom_proj:
                continue
            if apply_P(cat, f, i).morphism != ff:
                return (
                    f"i ≥ f*∘f but P(f)(i) ≠ f∘f* for f = {render_morphism(f)}, "
                    f"i = {render_morphism(i.morphism)}"
                )
        return None

    clauses.append(run_clause("image.bounded-by-image", "2.3.iii", enum.morphisms(), bounded))
    clauses.append(run_clause("image.saturation", "2.3.iv", enum.morphisms(), saturation))
    return clauses


def inverse_image_pullback_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def pullback(case):
        f, v = case
        try:
            inverse_image_of(cat, f, v, certify=True, enum=enum)
        except (TransferCertificationError, NoFactorizationError, NotBaerStarError) as err:
            return f"f = {render_morphism(f)}, v = {render_morphism(v)}: {err}"
        return None

    return [run_clause("inverse-image.pullback", "3.1", _mono_pairs(enum, into_dom=False), pullback)]


def inverse_image_lattice_map_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def table(f):
        return transfer_table(cat, TransferKind.INVERSE_IMAGE, f, enum)

    def injective_iff_epi(f: Morphism):
        injective, epi = table(f).is_injective(), is_epi(cat, f)
        if injective != epi:
            return (
                f"inverse image map of f = {render_morphism(f)} is "
                f"{'injective' if injective else 'not injective'} but f is "
                f"{'epi' if epi else 'not epi'}"
            )
        return None

    def surjective_iff_mono(f: Morphism):
        surjective, mono = table(f).is_surjective(), is_mono(cat, f)
        if surjective != mono:
            return (
                f"inverse image map of f = {render_morphism(f)} is "
                f"{'surjective' if surjective else 'not surjective'} but f is "
                f"{'mono' if mono else 'not mono'}"
            )
        return None

    def bottom_top(f: Morphism):
        ann = annihilator(cat, f, enum)
        if apply_Pprime(cat, f, bottom(cat, f.cod), enum) != ann:
            return f"P'(f)(0) ≠ f′ for f = {render_morphism(f)}"
        if apply_Pprime(cat, f, top(cat, f.cod), enum) != top(cat, f.dom):
            return f"P'(f)(1) ≠ 1 for f = {render_morphism(f)}"
        return None

    def image_to_top(f: Morphism):
        ff = Projection(f.cod, cat.compose(f, cat.involve(f)))
        if apply_Pprime(cat, f, ff, enum) != top(cat, f.dom):
            return f"P'(f)(f∘f*) ≠ 1 for f = {render_morphism(f)}"
        return None

    return [
        run_clause("inverse-image.injective-iff-epi", "3.3.i", enum.morphisms(), injective_iff_epi),
        run_clause("inverse-image.surjective-iff-mono", "3.3.i", enum.morphisms(), surjective_iff_mono),
        run_clause("inverse-image.bottom-top", "3.3.ii", enum.morphisms(), bottom_top),
        run_clause("inverse-image.image-to-top", "3.3.iii", enum.morphisms(), image_to_top),
    ]


def inverse_image_order_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat
    clauses = _semilattice_map_clauses(
        enum, "inverse-image", TransferKind.INVERSE_IMAGE, ("3.4.i", "3.4.ii")
    )

    def bounded_below(f: Morphism):
        ann = annihilator(cat, f, enum).morphism
        for j in lattice_on(enum, f.cod).elements:
            moved = apply_Pprime(cat, f, j, enum).morphism
            if cat.compose(ann, moved) != ann:
                return f"P'(f)(j) ≱ f′ for f = {render_morphism(f)}, j = {render_morphism(j.morphism)}"
        return None

    def saturation_to_top(f: Morphism):
        ff = cat.compose(f, cat.involve(f))
        one = top(cat, f.dom)
        for j in lattice_on(enum, f.cod).elements:
            if cat.compose(ff, j.morphism) != ff:
                continue
            if apply_Pprime(cat, f, j, enum) != one:
                return (
                    f"j ≥ f∘f* but P'(f)(j) ≠ 1 for f = {render_morphism(f)}, "
                    f"j = {render_morphism(j.morphism)}"
                )
        return None

    clauses.append(run_clause("inverse-image.bounded-below", "3.4.iii", enum.morphisms(), bounded_below))
    clauses.append(run_clause("inverse-image.saturation-to-top", "3.4.iv", enum.morphisms(), saturation_to_top))
    return clauses


def connection_mono_epi_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def mono_match(f: Morphism):
        same = (
            transfer_table(cat, TransferKind.INVERSE_IMAGE, f, enum).table
            == transfer_table(cat, TransferKind.IMAGE, cat.involve(f), enum).table
        )
        if same != is_mono(cat, f):
            return (
                f"P'(f) {'=' if same else '≠'} P(f*) but f is "
                f"{'mono' if is_mono(cat, f) else 'not mono'} for f = {render_morphism(f)}"
            )
        return None

    def epi_match(f: Morphism):
        same = (
            transfer_table(cat, TransferKind.IMAGE, f, enum).table
            == transfer_table(cat, TransferKind.INVERSE_IMAGE, cat.involve(f), enum).table
        )
        if same != is_epi(cat, f):
            return (
                f"P(f) {'=' if same else '≠'} P'(f*) but f is "
                f"{'epi' if is_epi(cat, f) else 'not epi'} for f = {render_morphism(f)}"
            )
        return None

    def triple_identities(f: Morphism):
        for i in lattice_on(enum, f.dom).elements:
            fi = apply_P(cat, f, i)
            back = apply_Pprime(cat, f, fi, enum)
            if apply_P(cat, f, back) != fi:
                return f"P(f)P'(f)P(f) ≠ P(f) at i = {render_morphism(i.morphism)} for f = {render_morphism(f)}"
        for j in lattice_on(enum, f.cod).elements:
            fj = apply_Pprime(cat, f, j, enum)
            back = apply_P(cat, f, fj)
            if apply_Pprime(cat, f, back, enum) != fj:
                return f"P'(f)P(f)P'(f) ≠ P'(f) at j = {render_morphism(j.morphism)} for f = {render_morphism(f)}"
        return None

    return [
        run_clause("connection.mono-match", "3.5.i", enum.morphisms(), mono_match),
        run_clause("connection.epi-match", "3.5.ii", enum.morphisms(), epi_match),
        run_clause("connection.triple-identities", "3.5.iii", enum.morphisms(), triple_identities),
    ]


def preimage_lattice_map_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def table(f):
        return transfer_table(cat, TransferKind.STRICT_PREIMAGE, f, enum)

    def injective_iff_epi(f: Morphism):
        injective, epi = table(f).is_injective(), is_epi(cat, f)
        if injective != epi:
            return (
                f"strict preimage map of f = {render_morphism(f)} is "
                f"{'injective' if injective else 'not injective'} but f is "
                f"{'epi' if epi else 'not epi'}"
            )
        return None

    def surjective_iff_mono(f: Morphism):
        surjective, mono = table(f).is_surjective(), is_mono(cat, f)
        if surjective != mono:
            return (
                f"strict preimage map of f = {render_morphism(f)} is "
                f"{'surjective' if surjective else 'not surjective'} but f is "
                f"{'mono' if mono else 'not mono'}"
            )
        return None

    def bottom_top(f: Morphism):
        if apply_Pdoubleprime(cat, f, bottom(cat, f.cod), enum) != bottom(cat, f.dom):
            return f"P''(f)(0) ≠ 0 for f = {render_morphism(f)}"
        double = annihilator(cat, annihilator(cat, f, enum).morphism, enum)
        if apply_Pdoubleprime(cat, f, top(cat, f.cod), enum) != double:
            return f"P''(f)(1) ≠ f″ for f = {render_morphism(f)}"
        return None

    def coannihilator_to_bottom(f: Morphism):
        co = annihilator(cat, cat.involve(f), enum)
        if apply_Pdoubleprime(cat, f, co, enum) != bottom(cat, f.dom):
            return f"P''(f)((f*)′) ≠ 0 for f = {render_morphism(f)}"
        return None

    return [
        run_clause("preimage.injective-iff-epi", "4.1.i", enum.morphisms(), injective_iff_epi),
        run_clause("preimage.surjective-iff-mono", "4.1.i", enum.morphisms(), surjective_iff_mono),
        run_clause("preimage.bottom-top", "4.1.ii", enum.morphisms(), bottom_top),
        run_clause("preimage.coannihilator-to-bottom", "4.1.iii", enum.morphisms(), coannihilator_to_bottom),
    ]


def preimage_order_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat
    clauses = _semilattice_map_clauses(
        enum, "preimage", TransferKind.STRICT_PREIMAGE, ("4.2.v", "4.2.vi")
    )

    def bounded_above(f: Morphism):
        double = annihilator(cat, annihilator(cat, f, enum).morphism, enum).morphism
        for j in lattice_on(enum, f.cod).elements:
            moved = apply_Pdoubleprime(cat, f, j, enum).morphism
            if cat.compose(moved, double) != moved:
                return f"P''(f)(j) ≰ f″ for f = {render_morphism(f)}, j = {render_morphism(j.morphism)}"
        return None

    def annihilated_below(f: Morphism):
        co = annihilator(cat, cat.involve(f), enum).morphism
        zero = bottom(cat, f.dom)
        for j in lattice_on(enum, f.cod).elements:
            if cat.compose(j.morphism, co) != j.morphism:
                continue
            if apply_Pdoubleprime(cat, f, j, enum) != zero:
                return (
                    f"j ≤ (f*)′ but P''(f)(j) ≠ 0 for f = {render_morphism(f)}, "
                    f"j = {render_morphism(j.morphism)}"
                )
        return None

    clauses.append(run_clause("preimage.bounded-above", "4.2.vii", enum.morphisms(), bounded_above))
    clauses.append(run_clause("preimage.annihilated-below", "4.2.viii", enum.morphisms(), annihilated_below))
    return clauses


def connection_complement_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def complement_identity(f: Morphism):
        for j in lattice_on(enum, f.cod).elements:
            j_ann = annihilator(cat, j.morphism, enum)
            via = annihilator(cat, apply_Pprime(cat, f, j_ann, enum).morphism, enum)
            if apply_Pdoubleprime(cat, f, j, enum) != via:
                return (
                    f"P''(f)(j) ≠ (P'(f)(j′))′ for f = {render_morphism(f)}, "
                    f"j = {render_morphism(j.morphism)}"
                )
        return None

    def equivalence_mono_epi(f: Morphism):
        prime = transfer_table(cat, TransferKind.INVERSE_IMAGE, f, enum)
        double = transfer_table(cat, TransferKind.STRICT_PREIMAGE, f, enum)
        if prime.is_injective() != double.is_injective():
            return f"P'(f) and P''(f) disagree on injectivity for f = {render_morphism(f)}"
        if prime.is_surjective() != double.is_surjective():
            return f"P'(f) and P''(f) disagree on surjectivity for f = {render_morphism(f)}"
        return None

    def equivalence_units(f: Morphism):
        prime_top = apply_Pprime(cat, f, top(cat, f.cod), enum) == top(cat, f.dom)
        double_bottom = apply_Pdoubleprime(cat, f, bottom(cat, f.cod), enum) == bottom(cat, f.dom)
        if prime_top != double_bottom:
            return (
                f"P'(f)(1) = 1 is {prime_top} but P''(f)(0) = 0 is {double_bottom} "
                f"for f = {render_morphism(f)}"
            )
        return None

    def equivalence_annihilators(f: Morphism):
        ann = annihilator(cat, f, enum)
        prime_side = apply_Pprime(cat, f, bottom(cat, f.cod), enum) == ann
        double_side = apply_Pdoubleprime(cat, f, top(cat, f.cod), enum) == annihilator(
            cat, ann.morphism, enum
        )
        if prime_side != double_side:
            return (
                f"P'(f)(0) = f′ is {prime_side} but P''(f)(1) = f″ is {double_side} "
                f"for f = {render_morphism(f)}"
            )
        return None

    return [
        run_clause("connection.complement-identity", "4", enum.morphisms(), complement_identity),
        run_clause("connection.equivalence-mono-epi", "4.i", enum.morphisms(), equivalence_mono_epi),
        run_clause("connection.equivalence-units", "4.ii", enum.morphisms(), equivalence_units),
        run_clause("connection.equivalence-annihilators", "4.iii", enum.morphisms(), equivalence_annihilators),
    ]


# ---- functoriality ---------------------------------------------------------

_KIND_NAMES = {
    TransferKind.IMAGE: ("image", "2"),
    TransferKind.INVERSE_IMAGE: ("inverse-image", "3"),
    TransferKind.STRICT_PREIMAGE: ("preimage", "4"),
}


def functoriality_clauses_for(kind: TransferKind):
    name, anchor = _KIND_NAMES[kind]

    def group(enum: Enumeration) -> list[Clause]:
        cat = enum.cat

        def fn(f: Morphism, p: Projection) -> Projection:
            if kind is TransferKind.IMAGE:
                return apply_P(cat, f, p)
            if kind is TransferKind.INVERSE_IMAGE:
                return apply_Pprime(cat, f, p, enum)
            return apply_Pdoubleprime(cat, f, p, enum)

        def identity_law(a):
            ida = cat.identity(a)
            for p in lattice_on(enum, a).elements:
                if fn(ida, p) != p:
                    return (
                        f"{kind.value}(id) moves {render_morphism(p.morphism)} "
                        f"on {render_object(a)}"
                    )
            return None

        def composition_law(pair):
            f, g = pair
            fg = cat.compose(f, g)
            if kind is TransferKind.IMAGE:
                for i in lattice_on(enum, g.dom).elements:
                    if fn(fg, i) != fn(f, fn(g, i)):
                        return (
                            f"{kind.value}(f∘g) ≠ {kind.value}(f)∘{kind.value}(g) at "
                            f"i = {render_morphism(i.morphism)} for f = {render_morphism(f)}, "
                            f"g = {render_morphism(g)}"
                        )
            else:
                for j in lattice_on(enum, f.cod).elements:
                    if fn(fg, j) != fn(g, fn(f, j)):
                        return (
                            f"{kind.value}(f∘g) ≠ {kind.value}(g)∘{kind.value}(f) at "
                            f"j = {render_morphism(j.morphism)} for f = {render_morphism(f)}, "
                            f"g = {render_morphism(g)}"
                        )
            return None

        return [
            run_clause(f"functor.{name}.identity", anchor, cat.objects, identity_law),
            run_clause(f"functor.{name}.composition", anchor, enum.composable_pairs(), composition_law),
        ]

    return group


def check_functoriality(cat: FiniteCategory, kind: TransferKind | None = None, budget: Budget | None = None) -> VerificationReport:
    """Identity and composition laws for one transfer map, or all three."""
    kinds = [kind] if kind is not None else list(TransferKind)
    return build_report(
        "functoriality", cat, [functoriality_clauses_for(k) for k in kinds], budget
    )


# ---- suite registry --------------------------------------------------------

SUITES: dict[str, tuple] = {
    "2.1": (image_smallest_subobject_clauses,),
    "2.2": (image_lattice_map_clauses,),
    "2.3": (image_order_clauses,),
    "3.1": (inverse_image_pullback_clauses,),
    "3.3": (inverse_image_lattice_map_clauses,),
    "3.4": (inverse_image_order_clauses,),
    "3.5": (connection_mono_epi_clauses,),
    "4.1": (preimage_lattice_map_clauses,),
    "4.2": (preimage_order_clauses,),
    "connection": (connection_complement_clauses,),
    "functoriality": tuple(functoriality_clauses_for(k) for k in TransferKind),
}
SUITES["all"] = tuple(g for key in (
    "2.1", "2.2", "2.3", "3.1", "3.3", "3.4", "3.5", "4.1", "4.2", "connection", "functoriality"
) for g in SUITES[key])


def theorem_suite(cat: FiniteCategory, suite_id: str, budget: Budget | None = None) -> VerificationReport:
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; choose from {sorted(SUITES)}")
    return build_report(f"theorems-{suite_id}", cat, SUITES[suite_id], budget)


def check_theorems_P(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    return build_report(
        "theorems-P",
        cat,
        [image_smallest_subobject_clauses, image_lattice_map_clauses, image_order_clauses],
        budget,
    )


def check_theorems_Pprime(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    return build_report(
        "theorems-P'",
        cat,
        [
            inverse_image_pullback_clauses,
            inverse_image_lattice_map_clauses,
            inverse_image_order_clauses,
        ],
        budget,
    )


def check_theorems_Pdoubleprime(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    return build_report(
        "theorems-P''", cat, [preimage_lattice_map_clauses, preimage_order_clauses], budget
    )


def check_connections(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    return build_report(
        "connections", cat, [connection_mono_epi_clauses, connection_complement_clauses], budget
    )


# ---- closed form vs definitional agreement ---------------------------------


def closed_form_clauses(enum: Enumeration) -> list[Clause]:
    """The subset-arithmetic fast paths for partial bijections, re-derived the
    slow way: annihilators from their defining property by enumeration,
    transfers from raw composition and search-based annihilators."""
    from .pbij import (
        PBijCategory,
        annihilator_pbij,
        image_subset,
        inverse_image_subset,
        preimage_subset,
        projection_labels,
        subset_projection,
    )
    from .projections import annihilator_by_search

    cat = enum.cat
    if not isinstance(cat, PBijCategory):
        raise InvcatError("closed-form agreement checks only make sense for partial bijections")

    def ann_agree(f: Morphism):
        fast = annihilator_pbij(f)
        slow = annihilator_by_search(cat, f, enum)
        if fast != slow:
            return (
                f"closed-form annihilator {render_morphism(fast.morphism)} differs from "
                f"searched {render_morphism(slow.morphism)} for f = {render_morphism(f)}"
            )
        return None

    def image_agree(f: Morphism):
        for i in lattice_on(enum, f.dom).elements:
            fast = subset_projection(f.cod, image_subset(f, projection_labels(i)))
            slow = Projection(f.cod, cat.compose(cat.compose(f, i.morphism), cat.involve(f)))
            if fast != slow:
                return f"image transfer mismatch at i = {render_morphism(i.morphism)}, f = {render_morphism(f)}"
        return None

    def inverse_image_agree(f: Morphism):
        for j in lattice_on(enum, f.cod).elements:
            fast = subset_projection(f.dom, inverse_image_subset(f, projection_labels(j)))
            j_ann = annihilator_by_search(cat, j.morphism, enum)
            slow = annihilator_by_search(cat, cat.compose(j_ann.morphism, f), enum)
            if fast != slow:
                return (
                    f"inverse image transfer mismatch at j = {render_morphism(j.morphism)}, "
                    f"f = {render_morphism(f)}"
                )
        return None

    def preimage_agree(f: Morphism):
        for j in lattice_on(enum, f.cod).elements:
            fast = subset_projection(f.dom, preimage_subset(f, projection_labels(j)))
            once = annihilator_by_search(cat, cat.compose(j.morphism, f), enum)
            slow = annihilator_by_search(cat, once.morphism, enum)
            if fast != slow:
                return (
                    f"strict preimage transfer mismatch at j = {render_morphism(j.morphism)}, "
                    f"f = {render_morphism(f)}"
                )
        return None

    return [
        run_clause("fastpath.annihilator", "1", enum.morphisms(), ann_agree),
        run_clause("fastpath.image", "2", enum.morphisms(), image_agree),
        run_clause("fastpath.inverse-image", "3", enum.morphisms(), inverse_image_agree),
        run_clause("fastpath.preimage", "4", enum.morphisms(), preimage_agree),
    ]


def check_closed_forms(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    return build_report("closed-forms", cat, [closed_form_clauses], budget)
