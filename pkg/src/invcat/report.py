"""Structured verification reports: one clause per checked law, with witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

EXIT_OK = 0
EXIT_CLAUSE_FAILURES = 1
EXIT_INVALID_INPUT = 2
EXIT_BUDGET_EXCEEDED = 3

REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Clause:
    """Outcome of one verified law.

    `anchor` is the id of the law in the catalog documented in the README;
    `counterexample` is present exactly when the clause failed.
    """

    clause_id: str
    anchor: str
    status: str
    checked: int = 0
    counterexample: str | None = None
    sampled: bool = False

    def __post_init__(self) -> None:
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown clause status {self.status!r}")
        if (self.counterexample is not None) != (self.status == FAIL):
            raise ValueError("counterexample must be present exactly when status is fail")

    def to_dict(self) -> dict:
        out: dict = {
            "clause-id": self.clause_id,
            "anchor": self.anchor,
            "status": self.status,
            "checked": self.checked,
        }
        if self.sampled:
            out["sampled"] = True
        if self.status == FAIL:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerificationReport:
    suite: str
    clauses: list[Clause]
    morphisms_enumerated: int = 0
    wall_time: float = 0.0
    seed: int | None = None
    details: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.clauses)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if c.status == FAIL]

    def clause(self, clause_id: str) -> Clause:
        for c in self.clauses:
            if c.clause_id == clause_id:
                return c
        raise KeyError(clause_id)

    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_CLAUSE_FAILURES

    def to_dict(self) -> dict:
        stats: dict = {
            "morphisms-enumerated": self.morphisms_enumerated,
            "wall-time": round(self.wall_time, 6),
        }
        if self.seed is not None:
            stats["seed"] = self.seed
        out: dict = {
            "format-version": REPORT_FORMAT_VERSION,
            "suite": self.suite,
            "clauses": [c.to_dict() for c in self.clauses],
            "stats": stats,
        }
        if self.details is not None:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def run_clause(
    clause_id: str,
    anchor: str,
    cases: Iterable,
    check: Callable,
    sampled: bool = False,
) -> Clause:
    """Evaluate `check` over `cases`, stopping at the first returned witness."""
    checked = 0
    for case in cases:
        checked += 1
        witness = check(case)
        if witness is not None:
            return Clause(clause_id, anchor, FAIL, checked, witness, sampled)
    return Clause(clause_id, anchor, PASS, checked, None, sampled)


def merge_reports(suite: str, *reports: VerificationReport) -> VerificationReport:
    """Concatenate the clauses of several reports over the same category."""
    clauses: list[Clause] = []
    details: dict = {}
    seed = None
    for rep in reports:
        clauses.extend(rep.clauses)
        if rep.details:
            details.update(rep.details)
        if seed is None:
            seed = rep.seed
    return VerificationReport(
        suite=suite,
        clauses=clauses,
        morphisms_enumerated=max((r.morphisms_enumerated for r in reports), default=0),
        wall_time=sum(r.wall_time for r in reports),
        seed=seed,
        details=details or None,
    )
