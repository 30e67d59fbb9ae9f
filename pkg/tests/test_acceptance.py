"""Acceptance criteria 1-8, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are printed either
way, but ``-s`` keeps them in order), or as a script:
``python tests/test_acceptance.py``.

Runtime limits are wall-clock and measured with the oracle cross-check of the
predicate fast path switched off, since that is a test-only instrument.
"""
from __future__ import annotations

import os
import random
import sys
import time
from dataclasses import dataclass

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import random_matrix, smith_problems  # noqa: E402
from locprime import harness, oracle  # noqa: E402
from locprime.functors import NotRepresentable, lambda_  # noqa: E402
from locprime.harness import CampaignConfig, run_campaign  # noqa: E402
from locprime.module import from_invariants, ring_module  # noqa: E402
from locprime.ring import ZZ, make_context, polynomial_ring  # noqa: E402

# pinned limits (seconds) and counts
PINNED_LIMIT = 1.0
CHART_LIMIT, CHART_COUNT = 60.0, 2000        # 500 per context family, 4 families
GM_LIMIT, GM_MIN_CASES = 30.0, 200
MGM_LIMIT, MGM_COUNT = 60.0, 500
ORACLE_LIMIT, ORACLE_COUNT = 120.0, 1000
CLOSURE_LIMIT, CLOSURE_COUNT = 60.0, 300
CLOSURE_LAWS = ("closure_sub", "closure_img", "closure_loc", "functor_images",
                "annihilator_prime", "torsion_corollary", "global_coprime")
SNF_LIMIT, SNF_COUNT, SNF_MAX_DIM = 30.0, 1000, 8
SNF_RINGS = (ZZ, polynomial_ring(2), polynomial_ring(3), polynomial_ring(5))
LAMBDA_EXHAUSTIVE_BOUND = 64
SEED = 1


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    runtime: float

    def line(self) -> str:
        return (f"criterion {self.number} [{'PASS' if self.passed else 'FAIL'}] {self.title}: "
                f"{self.detail} ({self.runtime:.2f}s)")


def _campaign(law: str, count: int, sweep: bool = True):
    return run_campaign(CampaignConfig(law=law, seed=SEED, case_count=count, sweep=sweep))


def _violations(report) -> str:
    return "; ".join(f"{v.claim} (case {v.case_index})" for v in report.violations[:3])


def criterion_1() -> Result:
    start = time.perf_counter()
    report = _campaign("pinned_examples", 0)
    elapsed = time.perf_counter() - start
    mismatched = [r for r in report.table if r["expected"] != r["got"]]
    ok = report.passed and not mismatched and elapsed < PINNED_LIMIT
    detail = f"{len(report.table)} pinned verdicts, {len(mismatched)} mismatched, limit {PINNED_LIMIT:.0f}s"
    return Result(1, "pinned examples", ok, detail, elapsed)


def criterion_2() -> Result:
    start = time.perf_counter()
    reports = [_campaign(law, CHART_COUNT) for law in ("chart_prime", "chart_coprime")]
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in reports) and elapsed < CHART_LIMIT
    detail = ", ".join(
        f"{r.law} {r.cases_run} cases ({r.notes.get('sweep cases', 0)} swept) "
        f"{len(r.violations)} violations" for r in reports
    )
    bad = "; ".join(_violations(r) for r in reports if not r.passed)
    return Result(2, "chart campaigns", ok, detail + (f"; {bad}" if bad else "") + f", limit {CHART_LIMIT:.0f}s",
                  elapsed)


def criterion_3() -> Result:
    report = _campaign("gm_adjunction", GM_MIN_CASES)
    held = report.notes.get("hypothesis held: Hom(Lambda_I M, N) ~ Hom(M, Gamma_I N)", 0)
    ok = report.passed and held >= GM_MIN_CASES and report.runtime < GM_LIMIT
    detail = (f"{held} hypothesis-satisfying cases, {len(report.violations)} violations, "
              f"{report.oracle_cross_checks_run} oracle Hom checks, limit {GM_LIMIT:.0f}s")
    return Result(3, "GM adjunction", ok, detail + (f"; {_violations(report)}" if not report.passed else ""),
                  report.runtime)


def criterion_4() -> Result:
    report = _campaign("mgm_equivalence", MGM_COUNT)
    ok = report.passed and report.cases_run >= MGM_COUNT and report.runtime < MGM_LIMIT
    detail = (f"{report.cases_run} cases ({report.notes.get('IM = 0', 0)} with IM = 0), "
              f"{len(report.violations)} violations, limit {MGM_LIMIT:.0f}s")
    return Result(4, "MGM equivalence", ok, detail + (f"; {_violations(report)}" if not report.passed else ""),
                  report.runtime)


def criterion_5() -> Result:
    report = _campaign("oracle_equivalence", ORACLE_COUNT)
    ok = report.passed and report.runtime < ORACLE_LIMIT
    detail = (f"{report.cases_run} cases ({report.notes.get('sweep cases', 0)} swept), "
              f"{report.oracle_cross_checks_run} oracle comparisons, {len(report.violations)} violations, "
              f"limit {ORACLE_LIMIT:.0f}s")
    return Result(5, "oracle equivalence", ok, detail + (f"; {_violations(report)}" if not report.passed else ""),
                  report.runtime)


def criterion_6() -> Result:
    start = time.perf_counter()
    reports = [_campaign(law, CLOSURE_COUNT) for law in CLOSURE_LAWS]
    elapsed = time.perf_counter() - start
    ok = all(r.passed and r.cases_run == CLOSURE_COUNT for r in reports) and elapsed < CLOSURE_LIMIT
    failing = [f"{r.law}: {_violations(r)}" for r in reports if not r.passed]
    detail = (f"{len(reports)} laws x {CLOSURE_COUNT} cases, "
              f"{sum(len(r.violations) for r in reports)} violations, limit {CLOSURE_LIMIT:.0f}s")
    return Result(6, "closure campaigns", ok, detail + (f"; {'; '.join(failing)}" if failing else ""), elapsed)


def criterion_7() -> Result:
    start = time.perf_counter()
    problems = []
    for R in SNF_RINGS:
        rng = random.Random(f"snf:{SEED}:{R.name()}")
        for i in range(SNF_COUNT):
            A = random_matrix(rng, R, rng.randint(0, SNF_MAX_DIM), rng.randint(0, SNF_MAX_DIM))
            for p in smith_problems(A):
                problems.append(f"{R.name()} matrix {i}: {p}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < SNF_LIMIT
    rings = ", ".join(R.name() for R in SNF_RINGS)
    detail = f"{SNF_COUNT} matrices per ring over {rings}, {len(problems)} problems, limit {SNF_LIMIT:.0f}s"
    return Result(7, "Smith decompositions", ok, detail + (f"; {problems[0]}" if problems else ""), elapsed)


def criterion_8() -> Result:
    start = time.perf_counter()
    Z = make_context("int")
    free = lambda_(ring_module(Z), Z.ideal(2))
    failures = [] if isinstance(free, NotRepresentable) else ["Lambda_(2)(Z) was representable"]
    checked = 0
    for ctx in harness.default_contexts():
        for chain in harness.invariant_chains(ctx, LAMBDA_EXHAUSTIVE_BOUND):
            M = from_invariants(ctx, list(chain))
            for I in harness.ideal_candidates(ctx, M):
                L = lambda_(M, I)
                checked += 1
                if isinstance(L, NotRepresentable):
                    failures.append(f"Lambda_{I}({M}) over {ctx} not representable")
                elif not oracle.matches(L, oracle.lambda_signature(M, I.generator, LAMBDA_EXHAUSTIVE_BOUND)):
                    failures.append(f"Lambda_{I}({M}) over {ctx} differs from the inverse limit")
    report = _campaign("lambda_contract", CLOSURE_COUNT)
    elapsed = time.perf_counter() - start
    ok = not failures and report.passed
    detail = (f"Lambda_(2)(Z) -> {type(free).__name__}; {checked} (module, ideal) pairs with |M| <= "
              f"{LAMBDA_EXHAUSTIVE_BOUND} match the oracle inverse limit; lambda_contract "
              f"{report.cases_run} cases {len(report.violations)} violations")
    return Result(8, "Lambda representability", ok, detail + (f"; {failures[0]}" if failures else ""), elapsed)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.fixture(autouse=True)
def production_path(monkeypatch):
    monkeypatch.setenv("LOCPRIME_CROSS_CHECK", "0")


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


if __name__ == "__main__":
    os.environ["LOCPRIME_CROSS_CHECK"] = "0"
    results = [c() for c in CRITERIA]
    for r in results:
        print(r.line(), flush=True)
    sys.exit(0 if all(r.passed for r in results) else 1)
