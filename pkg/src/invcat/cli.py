"""Command line front end: run verification suites over a spec file and emit
one structured JSON report, with the exit code telling the story (0 all laws
hold, 1 clause failures, 2 bad input, 3 enumeration budget exceeded)."""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from .core import (
    Budget,
    BudgetExceededError,
    InvcatError,
    check_inverse_category,
)
from .exactness import check_coherence, check_exactness
from .monoid import MonoidAxiomError, classify_exactness, validate_inverse_monoid
from .pbij import (
    PBijValidationError,
    enumerate_pbij,
    hom_count,
    image_subset,
    inverse_image_subset,
    preimage_subset,
    size_finset,
)
from .projections import check_baer_star
from .report import (
    EXIT_BUDGET_EXCEEDED,
    EXIT_CLAUSE_FAILURES,
    EXIT_INVALID_INPUT,
    FAIL,
    Clause,
    VerificationReport,
    merge_reports,
)
from .specfile import SpecFormatError, build_category, load_monoid_table, load_spec
from .transfer import SUITES, theorem_suite


def _emit(report: VerificationReport, out: str | None) -> None:
    text = report.to_json()
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


def _finish(report: VerificationReport, out: str | None) -> None:
    _emit(report, out)
    sys.exit(report.exit_code())


def _guarded(fn):
    """Map the library's exceptions onto the exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceededError as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(EXIT_BUDGET_EXCEEDED)
        except MonoidAxiomError as err:
            report = VerificationReport(
                "classify",
                [Clause("classify.monoid-axioms", "1", FAIL, 1, str(err))],
            )
            _emit(report, kwargs.get("out"))
            sys.exit(EXIT_CLAUSE_FAILURES)
        except (SpecFormatError, PBijValidationError) as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(EXIT_INVALID_INPUT)
        except InvcatError as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(EXIT_INVALID_INPUT)

    return wrapper


def _budget_options(fn):
    fn = click.option(
        "--max-size",
        type=int,
        default=4,
        envvar="INVCAT_MAX_SIZE",
        show_default=True,
        help="Largest object size whose full hom-sets are enumerated.",
    )(fn)
    fn = click.option(
        "--sample",
        type=int,
        default=64,
        show_default=True,
        help="Morphisms drawn per over-budget hom-set.",
    )(fn)
    fn = click.option(
        "--no-sample",
        is_flag=True,
        help="Fail with exit 3 instead of sampling over-budget hom-sets.",
    )(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    return fn


def _spec_options(fn):
    fn = click.option(
        "--spec",
        "spec_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False),
        help="Category spec file (JSON).",
    )(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None,
                      help="Write the report here instead of stdout.")(fn)
    return fn


def _make_budget(max_size: int, sample: int, no_sample: bool, seed: int) -> Budget:
    return Budget(max_size=max_size, sample=None if no_sample else sample, seed=seed)


@click.group()
def main() -> None:
    """Exhaustive law checking for finite inverse categories."""


@main.command()
@_spec_options
@_budget_options
@_guarded
def axioms(spec_path, out, max_size, sample, no_sample, seed):
    """Inverse-category axioms plus the annihilator (Baer*) laws."""
    budget = _make_budget(max_size, sample, no_sample, seed)
    cat, _ = build_category(load_spec(spec_path))
    report = merge_reports(
        "axioms", check_inverse_category(cat, budget), check_baer_star(cat, budget)
    )
    _finish(report, out)


@main.command()
@_spec_options
@_budget_options
@_guarded
def exactness(spec_path, out, max_size, sample, no_sample, seed):
    """Both exactness checklists, their biconditional, and the coherence
    identities tying kernels, annihilators and factorizations together."""
    budget = _make_budget(max_size, sample, no_sample, seed)
    cat, _ = build_category(load_spec(spec_path))
    report = merge_reports(
        "exactness", check_exactness(cat, budget), check_coherence(cat, budget)
    )
    _finish(report, out)


@main.command()
@click.option("--suite", required=True, type=click.Choice(sorted(SUITES)),
              help="Which law group to verify.")
@_spec_options
@_budget_options
@_guarded
def theorems(suite, spec_path, out, max_size, sample, no_sample, seed):
    """One transfer-map law group (or all of them)."""
    budget = _make_budget(max_size, sample, no_sample, seed)
    cat, _ = build_category(load_spec(spec_path))
    _finish(theorem_suite(cat, suite, budget), out)


@main.command(name="eval")
@click.option("--functor", required=True, type=click.Choice(["P", "P'", "P''"]))
@click.option("--morphism", "morphism_name", required=True,
              help="Name of a declared morphism in the spec.")
@click.option("--projection", "projection_csv", required=True,
              help="Comma-separated element labels; empty string for the empty projection.")
@click.option("--spec", "spec_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@_guarded
def eval_(functor, morphism_name, projection_csv, spec_path):
    """Apply one transfer map to one projection, via the closed forms."""
    _, named = build_category(load_spec(spec_path))
    f = named.get(morphism_name)
    if f is None:
        raise SpecFormatError(f"no morphism named {morphism_name!r} in the spec")
    if not isinstance(f.payload, frozenset):
        raise SpecFormatError("eval needs a spec with explicit partial bijections")
    labels = tuple(x for x in projection_csv.split(",") if x)
    base = f.dom if functor == "P" else f.cod
    unknown = [x for x in labels if x not in base.elements]
    if unknown:
        raise SpecFormatError(
            f"labels {unknown} are not elements of {base.name} "
            f"(the projection must live on {'dom' if functor == 'P' else 'cod'}(f))"
        )
    if functor == "P":
        result = image_subset(f, labels)
    elif functor == "P'":
        result = inverse_image_subset(f, labels)
    else:
        result = preimage_subset(f, labels)
    click.echo("{" + ",".join(result) + "}")


@main.command()
@click.option("--sizes", required=True, help="Two sizes, e.g. 3,3.")
@_budget_options
@_guarded
def enumerate(sizes, max_size, sample, no_sample, seed):
    """Count the partial bijections between sets of the given sizes."""
    budget = _make_budget(max_size, sample, no_sample, seed)
    parts = sizes.split(",")
    if len(parts) != 2:
        raise SpecFormatError(f"--sizes wants m,n, got {sizes!r}")
    try:
        m, n = (int(p) for p in parts)
    except ValueError:
        raise SpecFormatError(f"--sizes wants integers, got {sizes!r}") from None
    if m < 0 or n < 0:
        raise SpecFormatError("sizes must be non-negative")
    expected = hom_count(m, n)
    if expected > budget.homset_limit:
        raise BudgetExceededError(expected, size_finset(m), size_finset(n))
    found = len(enumerate_pbij(size_finset(m), size_finset(n)))
    click.echo(str(found))
    if found != expected:
        click.echo(
            f"error: enumerated {found} but the closed-form count is {expected}", err=True
        )
        sys.exit(EXIT_CLAUSE_FAILURES)


@main.command()
@click.option("--monoid", "monoid_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Cayley table file: {elements, identity, table}.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_budget_options
@_guarded
def classify(monoid_path, out, max_size, sample, no_sample, seed):
    """Validate an inverse monoid and check its two-object category is exact
    exactly when the monoid is a group."""
    budget = _make_budget(max_size, sample, no_sample, seed)
    elements, table, identity = load_monoid_table(monoid_path)
    monoid = validate_inverse_monoid(elements, table, identity)
    _finish(classify_exactness(monoid, budget), out)


if __name__ == "__main__":
    main()
