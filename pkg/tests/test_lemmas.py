"""Lemma tests: the nine supporting identities over seeded draws, plus the
exact symmetry structure of the building-block factors (which pins down sign
and phase conventions independently of the full identities)."""

import pytest

from ellverify import catalog, lemmas


def close(a, b, tol=1e-12):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


LEMMA_IDS = tuple(i for i in catalog.identity_ids() if i.startswith("lemma."))


def test_nine_lemmas_registered():
    assert len(LEMMA_IDS) == 9


@pytest.mark.parametrize("identity_id", LEMMA_IDS)
@pytest.mark.parametrize("index", [0, 1, 2])
def test_lemma_draws(identity_id, index):
    res = catalog.run_check(identity_id, seed=23, sample_index=index)
    assert res.passed, f"{identity_id}[{index}]: abs_error={res.abs_error:.3e}"


# ---------------------------------------------------------------------------
# factor-level structure


def test_j1_factor_is_even():
    tau, eta = -0.1 + 0.5j, 0.06 + 0.31j
    for t in (0.17 + 0.02j, -0.3 + 0.11j):
        assert close(lemmas.j1_factor(-t, tau, eta), lemmas.j1_factor(t, tau, eta))


def test_theta_simp_sides_flip_together():
    # both sides are antisymmetric under (t, lam) -> (-t, -lam)
    t, lam, tau = 0.21 + 0.04j, 0.13 - 0.06j, 0.1 + 0.62j
    assert close(
        lemmas.theta_simp_lhs(-t, -lam, tau), -lemmas.theta_simp_lhs(t, lam, tau)
    )
    assert close(
        lemmas.theta_simp_rhs(-t, -lam, tau), -lemmas.theta_simp_rhs(t, lam, tau)
    )


def test_full_sym_sides_flip_in_lam():
    t, lam, tau = 0.15 - 0.03j, 0.22 + 0.05j, -0.2 + 0.58j
    assert close(
        lemmas.full_sym_lhs(t, -lam, tau), -lemmas.full_sym_lhs(t, lam, tau)
    )
    assert close(
        lemmas.full_sym_rhs(t, -lam, tau), -lemmas.full_sym_rhs(t, lam, tau)
    )


def test_full_sym_lhs_is_even_in_t():
    t, lam, tau = 0.15 - 0.03j, 0.22 + 0.05j, -0.2 + 0.58j
    assert close(lemmas.full_sym_lhs(-t, lam, tau), lemmas.full_sym_lhs(t, lam, tau))


def test_theta_simp2_special_points():
    sigma = 0.05 + 0.71j
    # z = 0: the identity reduces to the quarter-period reflection of theta0
    assert close(lemmas.theta_simp2_lhs(0.0, sigma), lemmas.theta_simp2_rhs(0.0, sigma))
    # half period: the exponential prefactor becomes -1
    assert close(lemmas.theta_simp2_lhs(0.5, sigma), lemmas.theta_simp2_rhs(0.5, sigma))


# ---------------------------------------------------------------------------
# integral lemmas keep their closed forms under a tighter quadrature target


def test_int_eval_consistency_tight():
    params = catalog.sample_params("lemma.int-eval1", 41, 0)
    tau, eta = params["tau"], params["eta"]
    lhs = lemmas.int_eval1_lhs(tau, eta, tol=1e-12)
    assert close(lhs, lemmas.int_eval1_rhs(tau, eta), 1e-10)
