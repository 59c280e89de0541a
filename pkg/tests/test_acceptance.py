"""Acceptance suite: nine criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
when output capture is on) or directly with ``python tests/test_acceptance.py``.
"""

import time

import numpy as np
import pytest

from quadind.identities import (
    build_det_perm_identity,
    build_identity,
    flip_sign,
    permanent_trace_check,
    restriction_check,
    verify_identity,
)
from quadind.harness import TrialConfig, gen_instance, run_theorem_sweep
from quadind.independence import (
    LinearFormSystem,
    classify_two_forms,
    coefficient_rank,
    generic_independent,
    k_products,
    pair_matrix,
    s1_independent,
    s1_polynomials,
    sk_independent,
    witness_annihilates,
)
from quadind.linalg import det
from quadind.tracing import case4_solution_check, golden_determinants


def _emit_line(n: int, ok: bool, summary: str, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {summary}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, summary


@pytest.fixture
def verdict(capsys):
    return lambda n, ok, summary: _emit_line(n, ok, summary, capsys)


def test_criterion_1_three_coordinate_identity(verdict):
    t0 = time.perf_counter()
    inst = build_identity(3)
    res = verify_identity(inst)
    elapsed = time.perf_counter() - t0
    pre = inst.precancellation_term_count()
    ok = res.holds and len(inst.varset) == 12 and pre > 100 and elapsed < 5
    verdict(1, ok, f"residual zero={res.holds}, {len(inst.varset)} variables, {pre} pre-cancellation terms, {elapsed:.2f}s")


def test_criterion_2_smaller_identities_and_mutation(verdict):
    holds = {n: verify_identity(build_identity(n)).holds for n in (1, 2)}
    holds["det_perm"] = verify_identity(build_det_perm_identity()).holds
    mutated = verify_identity(flip_sign(build_identity(3), 0))
    control = not mutated.holds and mutated.residual is not None and not mutated.residual.is_zero()
    verdict(2, all(holds.values()) and control, f"holds={holds}, mutation residual nonzero={control}")


def test_criterion_3_restriction(verdict):
    res = restriction_check()
    inner = res.details["n3_z3"]
    verdict(
        3,
        res.holds,
        f"restricted side zero, c3 signs {inner['c3']['summandwise_signs']}, lower level holds={res.details['n2_z2']['holds']}",
    )


def test_criterion_4_permanent_trace(verdict):
    res = permanent_trace_check()
    verdict(4, res.holds, f"traced coefficient = 6*D_pair*perm over 9 variables: {res.holds}")


def test_criterion_5_worked_example(verdict):
    sys = LinearFormSystem.from_rows([[1, 1, 1], [1, 2, 3], [5, 8, 10]])
    form_det = det(sys.A)
    pm = pair_matrix(sys)
    s1 = s1_independent(sys)
    squares = s1_polynomials(sys)
    s3 = sk_independent(sys, 3)
    s3_rank = coefficient_rank(k_products(squares, 3))
    ok = (
        form_det == -1
        and pm.rows == ((1, 2, 40), (1, 3, 50), (1, 6, 80))
        and det(pm) == 0
        and not s1.independent
        and witness_annihilates(squares, s1.witness)
        and not s3.independent
        and s3_rank < 20
    )
    verdict(5, ok, f"det={form_det}, pair det={det(pm)}, witness={s1.witness}, S3 rank={s3_rank}/20")


def test_criterion_6_golden_determinants(verdict):
    rows = golden_determinants(["C1a", "C2c", "C2d", "C3", "C4"])
    sol = case4_solution_check()
    bad = [r["case"] for r in rows if not r["matches"] or r["leaks"]]
    detail = "; ".join(
        f"{r['case']}: got {r['determinant']} expected {r['expected']}" for r in rows if r["case"] in bad
    )
    verdict(
        6,
        not bad and sol["holds"],
        f"mismatched={bad or 'none'}, solution check holds={sol['holds']}" + (f" [{detail}]" if detail else ""),
    )


def _sweep(configs):
    reports = [run_theorem_sweep(c) for c in configs]
    trials = sum(r.counts["trials"] for r in reports)
    violations = sum(r.violations for r in reports)
    dependent = sum(r.counts["s1_dependent"] for r in reports)
    return trials, violations, dependent


def test_criterion_7_theorem_sweeps(verdict):
    t0 = time.perf_counter()
    first = [TrialConfig(2, m, 2, 200, 100 + m, mode=mode) for m in (1, 2, 3) for mode in ("generic", "degenerate")]
    second = [TrialConfig(r, 2, 2, n, 200 + r, mode=mode) for r in range(2, 7) for mode, n in (("generic", 120), ("degenerate", 80))]
    third = [TrialConfig(3, 3, 3, 500, 300), TrialConfig(3, 3, 3, 500, 301, mode="dependent-constructed")]
    results = {name: _sweep(cfgs) for name, cfgs in (("i", first), ("ii", second), ("iii", third))}
    elapsed = time.perf_counter() - t0
    ok = (
        all(v == 0 for _, v, _ in results.values())
        and results["i"][0] >= 1000
        and results["ii"][0] >= 1000
        and results["iii"][0] >= 1000
        and elapsed < 120
    )
    summary = ", ".join(f"({k}) {t} trials {v} violations {d} dependent" for k, (t, v, d) in results.items())
    verdict(7, ok, f"{summary}; {elapsed:.1f}s")


def test_criterion_8_oracle_equivalence(verdict):
    rng = np.random.default_rng(8)
    checked = agree = witnesses_ok = dependent = 0
    for _ in range(600):
        r, m = int(rng.integers(2, 6)), int(rng.integers(1, 5))
        A = rng.integers(-5, 6, size=(m, r))
        # sprinkle zeros so dependent systems show up
        A[rng.random(size=(m, r)) < 0.35] = 0
        sys = LinearFormSystem(r, m, A.tolist())
        squares = s1_polynomials(sys)
        fast, brute = s1_independent(sys), generic_independent(squares)
        checked += 1
        agree += fast.verdict == brute.verdict and fast.rank == brute.rank
        if fast.witness is not None:
            dependent += 1
            witnesses_ok += witness_annihilates(squares, fast.witness)
    ok = agree == checked and witnesses_ok == dependent and checked >= 500
    verdict(8, ok, f"{agree}/{checked} agree, {witnesses_ok}/{dependent} witnesses expand to zero")


def test_criterion_9_two_form_classifier(verdict):
    rng = np.random.default_rng(9)
    cases: dict = {}
    consistent = 0
    total = 600
    for i in range(total):
        r = int(rng.integers(2, 7))
        if i % 3 == 0:
            cfg = TrialConfig(r, 2, 2, 1, int(rng.integers(0, 2**32)), mode="degenerate")
            sys = gen_instance(cfg, i)
        else:
            A = rng.integers(-4, 5, size=(2, r))
            A[rng.random(size=(2, r)) < 0.4] = 0
            sys = LinearFormSystem(r, 2, A.tolist())
        cls = classify_two_forms(sys)
        dependent = not s1_independent(sys).independent
        cases[cls.case] = cases.get(cls.case, 0) + 1
        consistent += dependent == (cls.case in ("condA", "condB")) and cls.dependent == dependent
    ok = consistent == total and "rankDefect" not in cases
    verdict(9, ok, f"{consistent}/{total} consistent, cases {dict(sorted(cases.items()))}")


if __name__ == "__main__":
    import sys as _sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(_emit_line)
            except AssertionError:
                failed += 1
    _sys.exit(1 if failed else 0)
