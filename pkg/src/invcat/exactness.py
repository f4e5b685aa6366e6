"""Kernels, cokernels, mono-epi factorization, pullback squares, and the
two exactness checklists: the exactness axioms themselves (normal, conormal,
kernels, cokernels, factorization) against the annihilator-based account
(annihilators exist and are unique, projections closed, projections factor),
with the biconditional between the two verdicts checked last.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Budget,
    Enumeration,
    FiniteCategory,
    InvcatError,
    Morphism,
    build_report,
    render_morphism,
)
from .pbij import (
    PBijCategory,
    corestriction,
    defined_labels,
    image_labels,
    inclusion,
    subset_finset,
    undefined_labels,
    unhit_labels,
)
from .projections import (
    NotBaerStarError,
    annihilator,
    annihilator_by_search,
    baer_star_clauses,
    projections_on,
)
from .report import FAIL, PASS, Clause, VerificationReport, run_clause


class NoKernelError(InvcatError):
    def __init__(self, f: Morphism, reason: str):
        self.morphism = f
        super().__init__(f"no kernel for {render_morphism(f)}: {reason}")


class NoCokernelError(InvcatError):
    def __init__(self, f: Morphism, reason: str):
        self.morphism = f
        super().__init__(f"no cokernel for {render_morphism(f)}: {reason}")


class NoFactorizationError(InvcatError):
    def __init__(self, f: Morphism):
        self.morphism = f
        super().__init__(f"{render_morphism(f)} has no mono-epi factorization")


class NonCommutingSquareError(InvcatError):
    pass


class NotMonoError(InvcatError):
    pass


# ---- mono / epi ---------------------------------------------------------


def is_mono(cat: FiniteCategory, f: Morphism) -> bool:
    """f*∘f = id; equivalent to left cancellability (cross-checked in tests)."""
    return cat.compose(cat.involve(f), f) == cat.identity(f.dom)


def is_epi(cat: FiniteCategory, f: Morphism) -> bool:
    return cat.compose(f, cat.involve(f)) == cat.identity(f.cod)


def is_iso(cat: FiniteCategory, f: Morphism) -> bool:
    return is_mono(cat, f) and is_epi(cat, f)


def is_mono_by_cancellation(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> bool:
    enum = enum if enum is not None else Enumeration(cat)
    for w in cat.objects:
        pool = enum.pool(w, f.dom)
        for x in pool:
            for y in pool:
                if x != y and cat.compose(f, x) == cat.compose(f, y):
                    return False
    return True


def is_epi_by_cancellation(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> bool:
    enum = enum if enum is not None else Enumeration(cat)
    for w in cat.objects:
        pool = enum.pool(f.cod, w)
        for x in pool:
            for y in pool:
                if x != y and cat.compose(x, f) == cat.compose(y, f):
                    return False
    return True


# ---- kernels and cokernels ----------------------------------------------


def kernel_witness(cat: FiniteCategory, f: Morphism, u: Morphism, enum: Enumeration | None = None) -> str | None:
    """None when u satisfies the kernel universal property for f: f∘u = 0 and
    every g with f∘g = 0 factors through u exactly once."""
    enum = enum if enum is not None else Enumeration(cat)
    if u.cod != f.dom:
        return f"{render_morphism(u)} does not land in dom(f)"
    if not cat.is_zero(cat.compose(f, u)):
        return f"f∘u ≠ 0 for u = {render_morphism(u)}"
    for w in cat.objects:
        for g in enum.pool(w, f.dom):
            if not cat.is_zero(cat.compose(f, g)):
                continue
            hits = [h for h in cat.hom(w, u.dom) if cat.compose(u, h) == g]
            if len(hits) != 1:
                return (
                    f"{render_morphism(g)} factors through {render_morphism(u)} "
                    f"in {len(hits)} ways"
                )
    return None


def cokernel_witness(cat: FiniteCategory, f: Morphism, q: Morphism, enum: Enumeration | None = None) -> str | None:
    enum = enum if enum is not None else Enumeration(cat)
    if q.dom != f.cod:
        return f"{render_morphism(q)} does not start at cod(f)"
    if not cat.is_zero(cat.compose(q, f)):
        return f"q∘f ≠ 0 for q = {render_morphism(q)}"
    for w in cat.objects:
        for g in enum.pool(f.cod, w):
            if not cat.is_zero(cat.compose(g, f)):
                continue
            hits = [h for h in cat.hom(q.cod, w) if cat.compose(h, q) == g]
            if len(hits) != 1:
                return (
                    f"{render_morphism(g)} factors through {render_morphism(q)} "
                    f"in {len(hits)} ways"
                )
    return None


def kernel(cat: FiniteCategory, f: Morphism, certify: bool = True, enum: Enumeration | None = None) -> Morphism:
    """The canonical kernel of f.

    In the partial-bijection category this is the inclusion of the subset
    where f is undefined; elsewhere it is found by searching the enumerated
    monos for one with the universal property.  With `certify` the universal
    property is verified by enumeration either way.
    """
    enum = enum if enum is not None else Enumeration(cat)
    if isinstance(cat, PBijCategory):
        u = inclusion(f.dom, undefined_labels(f))
        if certify:
            witness = kernel_witness(cat, f, u, enum)
            if witness is not None:
                raise NoKernelError(f, witness)
        return u
    for w in cat.objects:
        for u in enum.pool(w, f.dom):
            if not is_mono(cat, u):
                continue
            if not cat.is_zero(cat.compose(f, u)):
                continue
            if kernel_witness(cat, f, u, enum) is None:
                return u
    raise NoKernelError(f, "no enumerated mono has the universal property")


def cokernel(cat: FiniteCategory, f: Morphism, certify: bool = True, enum: Enumeration | None = None) -> Morphism:
    """The canonical cokernel: in the partial-bijection category, the
    corestriction of cod(f) onto the labels f does not hit."""
    enum = enum if enum is not None else Enumeration(cat)
    if isinstance(cat, PBijCategory):
        q = corestriction(f.cod, unhit_labels(f))
        if certify:
            witness = cokernel_witness(cat, f, q, enum)
            if witness is not None:
                raise NoCokernelError(f, witness)
        return q
    for w in cat.objects:
        for q in enum.pool(f.cod, w):
            if not is_epi(cat, q):
                continue
            if not cat.is_zero(cat.compose(q, f)):
                continue
            if cokernel_witness(cat, f, q, enum) is None:
                return q
    raise NoCokernelError(f, "no enumerated epi has the universal property")


# ---- factorization -------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """f = p∘q with p mono and q epi, through the object `through`."""

    p: Morphism
    q: Morphism
    through: object


def mono_epi_factorize(cat: FiniteCategory, f: Morphism, enum: Enumeration | None = None) -> Factorization:
    if isinstance(cat, PBijCategory):
        img = image_labels(f)
        through = subset_finset(img)
        p = inclusion(f.cod, img)
        q = Morphism(f.dom, through, f.payload)
    else:
        enum = enum if enum is not None else Enumeration(cat)
        found = None
        for mid in cat.objects:
            for q in enum.pool(f.dom, mid):
                if not is_epi(cat, q):
                    continue
                for p in enum.pool(mid, f.cod):
                    if is_mono(cat, p) and cat.compose(p, q) == f:
                        found = Factorization(p, q, mid)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            raise NoFactorizationError(f)
        p, q, through = found.p, found.q, found.through
    if cat.compose(p, q) != f or not is_mono(cat, p) or not is_epi(cat, q):
        raise NoFactorizationError(f)
    return Factorization(p, q, through)


def subobject_iso(cat: FiniteCategory, u: Morphism, k: Morphism) -> Morphism | None:
    """An iso j with k∘j = u, when u and k present the same subobject."""
    if u.cod != k.cod:
        return None
    j = cat.compose(cat.involve(k), u)
    if is_iso(cat, j) and cat.compose(k, j) == u:
        return j
    return None


def quotient_iso(cat: FiniteCategory, q1: Morphism, q2: Morphism) -> Morphism | None:
    """An iso j with j∘q1 = q2, when q1 and q2 present the same quotient."""
    if q1.dom != q2.dom:
        return None
    j = cat.compose(q2, cat.involve(q1))
    if is_iso(cat, j) and cat.compose(j, q1) == q2:
        return j
    return None


def _same_subobject(cat: FiniteCategory, u: Morphism, k: Morphism) -> bool:
    # two monos into the same object present the same subobject; for partial
    # bijections that is exactly "same image subset"
    if u.cod != k.cod:
        return False
    if isinstance(cat, PBijCategory):
        return image_labels(u) == image_labels(k)
    return u == k or subobject_iso(cat, u, k) is not None


def _same_quotient(cat: FiniteCategory, q1: Morphism, q2: Morphism) -> bool:
    # dually, epis out of the same object agree iff defined on the same subset
    if q1.dom != q2.dom:
        return False
    if isinstance(cat, PBijCategory):
        return defined_labels(q1) == defined_labels(q2)
    return q1 == q2 or quotient_iso(cat, q1, q2) is not None


# ---- pullback squares -----------------------------------------------------


@dataclass(frozen=True)
class CommutingSquare:
    """A square with vertex dom(left) = dom(top):

        .   --top-->    .
        |left           |right
        v               v
        .   --bottom--> .
    """

    top: Morphism
    left: Morphism
    right: Morphism
    bottom: Morphism

    def __post_init__(self) -> None:
        if self.left.dom != self.top.dom:
            raise NonCommutingSquareError("left and top legs start at different objects")
        if self.bottom.dom != self.left.cod:
            raise NonCommutingSquareError("bottom leg does not start where left ends")
        if self.right.dom != self.top.cod:
            raise NonCommutingSquareError("right leg does not start where top ends")
        if self.bottom.cod != self.right.cod:
            raise NonCommutingSquareError("bottom and right legs end at different objects")


def pullback_witness(cat: FiniteCategory, square: CommutingSquare, enum: Enumeration | None = None) -> str | None:
    """None when the square is a pullback: every cone (x, y) with
    bottom∘x = right∘y is mediated by exactly one morphism into the vertex."""
    enum = enum if enum is not None else Enumeration(cat)
    if cat.compose(square.bottom, square.left) != cat.compose(square.right, square.top):
        raise NonCommutingSquareError(
            f"square does not commute: bottom∘left ≠ right∘top for bottom = "
            f"{render_morphism(square.bottom)}, left = {render_morphism(square.left)}"
        )
    vertex = square.left.dom
    a, y_obj = square.bottom.dom, square.right.dom
    for w in cat.objects:
        mediators: dict = {}
        for m in cat.hom(w, vertex):
            key = (cat.compose(square.left, m), cat.compose(square.top, m))
            mediators.setdefault(key, []).append(m)
        xs_by_composite: dict = {}
        for x in cat.hom(w, a):
            xs_by_composite.setdefault(cat.compose(square.bottom, x), []).append(x)
        for y in cat.hom(w, y_obj):
            z = cat.compose(square.right, y)
            for x in xs_by_composite.get(z, ()):
                hits = mediators.get((x, y), ())
                if len(hits) != 1:
                    return (
                        f"cone x = {render_morphism(x)}, y = {render_morphism(y)} "
                        f"has {len(hits)} mediating morphisms"
                    )
    return None


def is_pullback(cat: FiniteCategory, square: CommutingSquare, enum: Enumeration | None = None) -> bool:
    return pullback_witness(cat, square, enum) is None


# ---- the exactness checklists ---------------------------------------------


EXACTNESS_CLAUSE_IDS = (
    "exact.kernels",
    "exact.cokernels",
    "exact.normal",
    "exact.conormal",
    "exact.factorization",
)
BAER_SIDE_CLAUSE_IDS = (
    "baer.annihilator-exists",
    "baer.annihilator-unique",
    "baer.projections-closed",
    "baer.projection-factorization",
)


def exactness_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def has_kernel(f: Morphism):
        try:
            kernel(cat, f, certify=True, enum=enum)
        except NoKernelError as err:
            return str(err)
        return None

    def has_cokernel(f: Morphism):
        try:
            cokernel(cat, f, certify=True, enum=enum)
        except NoCokernelError as err:
            return str(err)
        return None

    def monos(it):
        return (f for f in it if is_mono(cat, f))

    def epis(it):
        return (f for f in it if is_epi(cat, f))

    def normal(u: Morphism):
        # the annihilator of u* is the natural candidate; scan everything else
        # only if it fails, so the clause still decides "is u a kernel at all"
        try:
            h = annihilator_by_search(cat, cat.involve(u), enum).morphism
            if kernel_witness(cat, h, u, enum) is None:
                return None
        except NotBaerStarError:
            pass
        for b in cat.objects:
            for h in enum.pool(u.cod, b):
                if kernel_witness(cat, h, u, enum) is None:
                    return None
        return f"mono {render_morphism(u)} is not the kernel of any enumerated morphism"

    def conormal(v: Morphism):
        try:
            h = annihilator_by_search(cat, v, enum).morphism
            if cokernel_witness(cat, h, v, enum) is None:
                return None
        except NotBaerStarError:
            pass
        for a in cat.objects:
            for h in enum.pool(a, v.dom):
                if cokernel_witness(cat, h, v, enum) is None:
                    return None
        return f"epi {render_morphism(v)} is not the cokernel of any enumerated morphism"

    def factors(f: Morphism):
        try:
            mono_epi_factorize(cat, f, enum)
        except NoFactorizationError as err:
            return str(err)
        return None

    def mono_epi_criterion(f: Morphism):
        if is_mono(cat, f) != is_mono_by_cancellation(cat, f, enum):
            return f"mono criterion and cancellation disagree on {render_morphism(f)}"
        if is_epi(cat, f) != is_epi_by_cancellation(cat, f, enum):
            return f"epi criterion and cancellation disagree on {render_morphism(f)}"
        return None

    def projection_factors(case):
        a, i = case
        try:
            mono_epi_factorize(cat, i.morphism, enum)
        except NoFactorizationError as err:
            return str(err)
        return None

    projection_cases = [(a, i) for a in cat.objects for i in projections_on(cat, a, enum)]

    clauses = [
        run_clause("exact.kernels", "1.1", enum.morphisms(), has_kernel),
        run_clause("exact.cokernels", "1.1", enum.morphisms(), has_cokernel),
        run_clause("exact.normal", "1.1", monos(enum.morphisms()), normal),
        run_clause("exact.conormal", "1.1", epis(enum.morphisms()), conormal),
        run_clause("exact.factorization", "1", enum.morphisms(), factors),
        run_clause("exact.mono-epi-criterion", "1", enum.morphisms(), mono_epi_criterion),
    ]

    baer = [c for c in baer_star_clauses(enum) if c.clause_id in BAER_SIDE_CLAUSE_IDS[:3]]
    clauses.extend(baer)
    clauses.append(
        run_clause("baer.projection-factorization", "1.1", projection_cases, projection_factors)
    )

    a_ok = all(c.status == PASS for c in clauses if c.clause_id in EXACTNESS_CLAUSE_IDS)
    b_ok = all(c.status == PASS for c in clauses if c.clause_id in BAER_SIDE_CLAUSE_IDS)
    if a_ok == b_ok:
        clauses.append(Clause("theorem.exact-iff-baer", "1.1", PASS, 1))
    else:
        clauses.append(
            Clause(
                "theorem.exact-iff-baer",
                "1.1",
                FAIL,
                1,
                f"exactness verdict {a_ok} but annihilator-side verdict {b_ok}",
            )
        )
    return clauses


def check_exactness(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    """Run both checklists and the biconditional between their verdicts."""
    report = build_report("exactness", cat, [exactness_clauses], budget)
    failing = [c.clause_id for c in report.failures()]
    report.details = {
        "exact": all(
            c.status == PASS for c in report.clauses if c.clause_id in EXACTNESS_CLAUSE_IDS
        ),
        "baer-star-with-closed-projections": all(
            c.status == PASS for c in report.clauses if c.clause_id in BAER_SIDE_CLAUSE_IDS
        ),
        "failing-clauses": failing,
    }
    return report


# ---- coherence identities --------------------------------------------------


def normal_conormal_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def mono_is_kernel(u: Morphism):
        try:
            h = annihilator_by_search(cat, cat.involve(u), enum).morphism
        except NotBaerStarError as err:
            return str(err)
        witness = kernel_witness(cat, h, u, enum)
        if witness is not None:
            return f"mono {render_morphism(u)} is not the kernel of (u*)′: {witness}"
        k = kernel(cat, h, certify=False, enum=enum)
        if not _same_subobject(cat, u, k):
            return (
                f"mono {render_morphism(u)} and canonical kernel {render_morphism(k)} "
                "present different subobjects"
            )
        return None

    def epi_is_cokernel(v: Morphism):
        try:
            h = annihilator_by_search(cat, v, enum).morphism
        except NotBaerStarError as err:
            return str(err)
        witness = cokernel_witness(cat, h, v, enum)
        if witness is not None:
            return f"epi {render_morphism(v)} is not the cokernel of v′: {witness}"
        q = cokernel(cat, h, certify=False, enum=enum)
        if not _same_quotient(cat, v, q):
            return (
                f"epi {render_morphism(v)} and canonical cokernel {render_morphism(q)} "
                "present different quotients"
            )
        return None

    monos = (f for f in enum.morphisms() if is_mono(cat, f))
    epis = (f for f in enum.morphisms() if is_epi(cat, f))
    return [
        run_clause("coherence.mono-is-kernel", "1.1", monos, mono_is_kernel),
        run_clause("coherence.epi-is-cokernel", "1.1", epis, epi_is_cokernel),
    ]


def check_normal_conormal(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    """Every mono is the kernel of the annihilator of its involution, and
    every epi is the cokernel of its own annihilator."""
    return build_report("normal-conormal", cat, [normal_conormal_clauses], budget)


def coherence_clauses(enum: Enumeration) -> list[Clause]:
    cat = enum.cat

    def kernel_annihilator(f: Morphism):
        u = kernel(cat, f, certify=False, enum=enum)
        left = cat.compose(u, cat.involve(u))
        try:
            right = annihilator_by_search(cat, f, enum).morphism
        except NotBaerStarError as err:
            return str(err)
        if left != right:
            return f"ker(f)∘ker(f)* ≠ f′ for {render_morphism(f)}"
        return None

    def annihilator_mono_part(f: Morphism):
        i = annihilator(cat, f, enum).morphism
        p = mono_epi_factorize(cat, i, enum).p
        k = kernel(cat, f, certify=False, enum=enum)
        if not _same_subobject(cat, p, k):
            return (
                f"mono part of f′ is {render_morphism(p)} but ker f is "
                f"{render_morphism(k)} for {render_morphism(f)}"
            )
        return None

    def coannihilator_epi_part(f: Morphism):
        j = annihilator(cat, cat.involve(f), enum).morphism
        q = mono_epi_factorize(cat, j, enum).q
        c = cokernel(cat, f, certify=False, enum=enum)
        if not _same_quotient(cat, q, c):
            return (
                f"epi part of (f*)′ is {render_morphism(q)} but coker f is "
                f"{render_morphism(c)} for {render_morphism(f)}"
            )
        return None

    def kernel_cokernel_duality(f: Morphism):
        left = cokernel(cat, f, certify=False, enum=enum)
        right = cat.involve(kernel(cat, cat.involve(f), certify=False, enum=enum))
        if not _same_quotient(cat, left, right):
            return f"coker f ≠ (ker f*)* for {render_morphism(f)}"
        return None

    def image_via_projection(f: Morphism):
        ff_star = cat.compose(f, cat.involve(f))
        p_proj = mono_epi_factorize(cat, ff_star, enum).p
        p_f = mono_epi_factorize(cat, f, enum).p
        if not _same_subobject(cat, p_proj, p_f):
            return (
                f"mono part of f∘f* is {render_morphism(p_proj)} but image of f is "
                f"{render_morphism(p_f)} for {render_morphism(f)}"
            )
        return None

    return [
        run_clause("coherence.kernel-annihilator", "1.1", enum.morphisms(), kernel_annihilator),
        run_clause("coherence.annihilator-mono", "1.1", enum.morphisms(), annihilator_mono_part),
        run_clause("coherence.coannihilator-epi", "1.1", enum.morphisms(), coannihilator_epi_part),
        run_clause("coherence.kernel-cokernel-duality", "1.1", enum.morphisms(), kernel_cokernel_duality),
        run_clause("coherence.image-via-projection", "1.1", enum.morphisms(), image_via_projection),
    ]


def check_coherence(cat: FiniteCategory, budget: Budget | None = None) -> VerificationReport:
    """The construction identities tying kernels, cokernels, annihilators and
    factorizations together, plus the normality and conormality witnesses."""
    return build_report("coherence", cat, [coherence_clauses, normal_conormal_clauses], budget)
