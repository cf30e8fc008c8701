"""Acceptance suite: one test per release criterion.

Each test prints a single PASS/FAIL line with the measured margin before
asserting, so a transcript of this module reads as the acceptance checklist.
Draw counts, tolerances, and expansion orders are pinned on purpose;
loosening any of them is a release decision, not a test edit.
"""

import time

from ellverify import catalog, special
from ellverify.conjectures import run_series_check
from ellverify.report import RunConfig, all_check_ids, run_suite

SEED = 0


def _criterion(tag, ok, detail):
    print(f"[{tag}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{tag}: {detail}"


def _run_draws(identity_id, count, seed=SEED):
    """(results, worst relative defect, worst wall time per draw)."""
    results, worst, slowest = [], 0.0, 0.0
    for index in range(count):
        start = time.perf_counter()
        res = catalog.run_check(identity_id, seed=seed, sample_index=index)
        slowest = max(slowest, time.perf_counter() - start)
        worst = max(worst, res.abs_error / max(1.0, abs(res.rhs_value)))
        results.append(res)
    return results, worst, slowest


def test_criterion_01_balanced_beta_integral():
    results, worst, slowest = _run_draws("spiridonov", 20)
    for res in results:
        assert res.tolerance == 1e-8
        assert 0.5 <= complex(res.parameters["tau"]).imag <= 1.2
        assert 0.5 <= complex(res.parameters["sigma"]).imag <= 1.2
    ok = all(r.passed for r in results) and slowest <= 2.0
    _criterion(
        "criterion-01 balanced beta integral",
        ok,
        f"20 draws, max defect {worst:.2e} (tol 1e-08), slowest draw {slowest:.2f}s",
    )


def test_criterion_02_quarter_shift_evaluations():
    defects = []
    for identity_id in ("eval1", "eval2"):
        results, worst, _ = _run_draws(identity_id, 20)
        assert all(r.tolerance == 1e-8 for r in results)
        defects.append((identity_id, worst, all(r.passed for r in results)))
    ok = all(flag for _, _, flag in defects)
    detail = ", ".join(f"{i}: {w:.2e}" for i, w, _ in defects)
    _criterion(
        "criterion-02 quarter-shift evaluations",
        ok,
        f"20 draws each (tol 1e-08), max defects {detail}",
    )


def test_criterion_03_antisymmetrized_integral_grid():
    results, worst, _ = _run_draws("eval3", 30)
    for res in results:
        assert 0.2 <= complex(res.parameters["tau"]).imag <= 0.8
        assert 0.2 <= complex(res.parameters["eta"]).imag <= 0.8
    params = catalog.sample_params("eval3", SEED, 0)
    tau, eta = params["tau"], params["eta"]
    at_zero = special.I_sym(0.0, tau, eta)
    at_plus = special.I_sym(2 * eta, tau, eta)
    at_minus = special.I_sym(-2 * eta, tau, eta)
    zeros_ok = at_zero == 0 and abs(at_plus) <= 1e-8 and abs(at_minus) <= 1e-8
    ok = all(r.passed for r in results) and zeros_ok
    _criterion(
        "criterion-03 antisymmetrized integral",
        ok,
        f"30 grid points, max defect {worst:.2e} (tol 1e-08); "
        f"zeros |I(0)|={abs(at_zero):.1e} |I(+2eta)|={abs(at_plus):.1e} "
        f"|I(-2eta)|={abs(at_minus):.1e}",
    )


def test_criterion_04_quarter_eta_special_values():
    defects = []
    for identity_id in ("fv-val1", "fv-val2"):
        results, worst, _ = _run_draws(identity_id, 20)
        assert all(r.tolerance == 1e-8 for r in results)
        defects.append((identity_id, worst, all(r.passed for r in results)))
    ok = all(flag for _, _, flag in defects)
    detail = ", ".join(f"{i}: {w:.2e}" for i, w, _ in defects)
    _criterion(
        "criterion-04 eighth-period special values",
        ok,
        f"20 draws each (tol 1e-08), max defects {detail}",
    )


def test_criterion_05_constant_term_normalization():
    results, worst, _ = _run_draws("ellmac-val", 10)
    for res in results:
        assert -0.5 <= complex(res.parameters["eta"]).imag <= -0.1
    # explicit weight-argument independence at one fixed modulus pair
    params = catalog.sample_params("ellmac-val", SEED, 0)
    lam, tau, eta = params["lam"], params["tau"], params["eta"]
    base = special.ellmac_P(0, 4, lam, tau, eta)
    shifts = [special.ellmac_P(0, 4, lam + d, tau, eta) for d in (0.2, -0.15)]
    indep = max(abs(s - base) for s in shifts) / max(1.0, abs(base))
    ok = all(r.passed for r in results) and indep <= 1e-8
    _criterion(
        "criterion-05 constant-term normalization",
        ok,
        f"10 draws, max defect {worst:.2e}; weight-independence defect {indep:.2e}"
        " (tol 1e-08)",
    )


def test_criterion_06_principal_evaluation():
    results, worst, _ = _run_draws("ellmac-eval", 10)
    covered = {
        (res.parameters["kappa"], res.parameters["mu"]) for res in results
    }
    assert covered == set(catalog.ELLMAC_EVAL_COMBOS)
    ok = all(r.passed for r in results)
    _criterion(
        "criterion-06 principal evaluation",
        ok,
        f"levels (4,5,6,8) x weights (0,1,2), {len(covered)} admissible pairs, "
        f"max defect {worst:.2e} (tol 1e-08)",
    )


def test_criterion_07_integral_vs_weighted_series():
    results, worst, _ = _run_draws("htf-series", 5)
    for res in results:
        assert res.parameters["mu"] == 2 and res.parameters["kappa"] == 4
        assert res.tolerance == 1e-6
    ok = all(r.passed for r in results)
    _criterion(
        "criterion-07 integral vs weighted series",
        ok,
        f"5 draws at weight 2 / level 4, max defect {worst:.2e} (tol 1e-06)",
    )


def test_criterion_08_modular_relations():
    defects = []
    for identity_id in ("mod-minus", "mod-plus"):
        results, worst, _ = _run_draws(identity_id, 5)
        assert all(r.tolerance == 1e-6 for r in results)
        defects.append((identity_id, worst, all(r.passed for r in results)))
    ok = all(flag for _, _, flag in defects)
    detail = ", ".join(f"{i}: {w:.2e}" for i, w, _ in defects)
    _criterion(
        "criterion-08 modular relations",
        ok,
        f"5 draws each (tol 1e-06), max defects {detail}",
    )


def test_criterion_09_supporting_lemmas():
    lemma_ids = tuple(i for i in catalog.identity_ids() if i.startswith("lemma."))
    assert len(lemma_ids) == 9
    worst_overall, all_passed = 0.0, True
    for identity_id in lemma_ids:
        results, worst, _ = _run_draws(identity_id, 20)
        assert all(r.tolerance == 1e-8 for r in results)
        worst_overall = max(worst_overall, worst)
        all_passed = all_passed and all(r.passed for r in results)
    series_ids = (
        "series.theta-simp2",
        "series.theta-simp3",
        "series.theta-simp4",
        "series.sym-rearrange",
    )
    series_ok = all(run_series_check(i, order=8)["exact"] for i in series_ids)
    ok = all_passed and series_ok
    _criterion(
        "criterion-09 supporting lemmas",
        ok,
        f"9 identities x 20 draws, max defect {worst_overall:.2e} (tol 1e-08); "
        f"4 exact series forms to order 8: {'exact' if series_ok else 'MISMATCH'}",
    )


def test_criterion_10_exact_series_conjectures():
    outcomes = {
        check_id: run_series_check(check_id, order=order)["exact"]
        for check_id, order in (
            ("series.triple-product", 12),
            ("series.denominator", 6),
            ("series.aff-eval", 40),
            ("series.hall-limit", 8),
        )
    }
    ok = all(outcomes.values())
    detail = ", ".join(
        f"{k.split('.')[1]}@{o}" for k, o in
        (("series.triple-product", 12), ("series.denominator", 6),
         ("series.aff-eval", 40), ("series.hall-limit", 8))
    )
    _criterion(
        "criterion-10 exact series checks",
        ok,
        f"zero-tolerance coefficient equality: {detail}"
        + ("" if ok else f"; failures: {[k for k, v in outcomes.items() if not v]}"),
    )


def test_criterion_11_bridge_pipeline_and_budget():
    unity, unity_worst, _ = _run_draws("bridge-unity", 10)
    pipeline, pipe_worst, _ = _run_draws("aff-eval", 3)
    pairs = {(res.parameters["mu"], res.parameters["k"]) for res in pipeline}
    assert pairs == {(1, 1), (2, 0), (0, 2)}
    assert all(r.tolerance == 1e-6 for r in unity + pipeline)
    suite = run_suite(RunConfig(identity_ids=all_check_ids(), seed=SEED))
    elapsed = suite.summary["elapsed_seconds"]
    ok = (
        all(r.passed for r in unity)
        and all(r.passed for r in pipeline)
        and suite.all_passed
        and elapsed <= 600.0
    )
    _criterion(
        "criterion-11 bridge pipeline",
        ok,
        f"unity defect {unity_worst:.2e}, 3-pair pipeline defect {pipe_worst:.2e} "
        f"(tol 1e-06); full suite {suite.summary['total']} checks in {elapsed:.0f}s "
        "(budget 600s)",
    )
