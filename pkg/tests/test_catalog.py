"""Catalog tests: manifest integrity, reproducible sampling, the decision
rule, and the mandatory pre-integration pole audit."""

import dataclasses

import pytest

from ellverify import catalog
from ellverify.catalog import (
    COMPOUND_TOLERANCE,
    DECISION_RULE,
    DEFAULT_TOLERANCE,
    IdentityResult,
    PoleOnPath,
    UnknownIdentity,
    describe,
    fnv1a64,
    get_entry,
    identity_ids,
    rng_for,
    run_check,
    sample_params,
)


# ---------------------------------------------------------------------------
# manifest


def test_manifest_is_sorted_and_complete():
    ids = identity_ids()
    assert list(ids) == sorted(ids)
    assert len(ids) == 24
    for required in ("spiridonov", "eval3", "ellmac-eval", "bridge-unity"):
        assert required in ids


def test_entries_are_well_formed():
    for identity_id in identity_ids():
        entry = get_entry(identity_id)
        assert entry.id == identity_id
        assert entry.ref and entry.domain
        assert entry.tolerance in (DEFAULT_TOLERANCE, COMPOUND_TOLERANCE)
        assert entry.default_samples >= 1
        # a declared contour must come with a pole inventory to audit
        if entry.contour is not None:
            assert entry.poles is not None


def test_describe_matches_entries():
    rows = describe()
    assert len(rows) == len(identity_ids())
    for row, identity_id in zip(rows, identity_ids()):
        entry = get_entry(identity_id)
        assert row == (
            entry.id,
            entry.ref,
            entry.domain,
            entry.tolerance,
            entry.default_samples,
        )


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_entry("nope")
    with pytest.raises(UnknownIdentity):
        run_check("nope")
    with pytest.raises(UnknownIdentity):
        sample_params("nope", 0, 0)


# ---------------------------------------------------------------------------
# seeded sampling


def test_fnv1a64_frozen_values():
    # published FNV-1a reference constants (offset basis, and hash of "a")
    assert fnv1a64("") == 0xCBF29CE484222325
    assert fnv1a64("a") == 0xAF63DC4C8601EC8C


def test_sampling_is_reproducible():
    for identity_id in ("eval1", "spiridonov", "theta-mod"):
        a = sample_params(identity_id, 7, 3)
        b = sample_params(identity_id, 7, 3)
        assert a == b


def test_sampling_streams_are_keyed():
    # different identity, seed, or index each give a different draw
    base = sample_params("eval1", 7, 3)
    assert sample_params("eval2", 7, 3) != base
    assert sample_params("eval1", 8, 3) != base
    assert sample_params("eval1", 7, 4) != base


def test_rng_for_is_stable():
    draws = rng_for(1, "eval1", 0).uniform(size=3)
    again = rng_for(1, "eval1", 0).uniform(size=3)
    assert list(draws) == list(again)


# ---------------------------------------------------------------------------
# running checks


def test_run_check_result_shape():
    res = run_check("lemma.theta-simp", seed=5, sample_index=1)
    assert isinstance(res, IdentityResult)
    assert res.identity_id == "lemma.theta-simp"
    assert res.sample_index == 1
    assert res.decision == DECISION_RULE
    assert res.passed
    assert res.abs_error <= res.tolerance * max(1.0, abs(res.rhs_value))
    # pointwise identity: no quadrature, hence no certified bound
    assert res.quadrature_error_estimate is None


def test_run_check_is_deterministic():
    a = run_check("theta-mod", seed=11, sample_index=2)
    b = run_check("theta-mod", seed=11, sample_index=2)
    assert dataclasses.asdict(a) == dataclasses.asdict(b)


def test_integral_identity_reports_quadrature_bound():
    res = run_check("eval1", seed=3, sample_index=0)
    assert res.passed
    assert res.quadrature_error_estimate is not None
    assert 0 < res.quadrature_error_estimate < res.tolerance


def test_explicit_params_are_honored():
    params = {"tau": 0.1 + 0.8j, "sigma": -0.2 + 0.9j}
    res = run_check("eval1", params=params)
    assert res.parameters == params
    assert res.passed


def test_tolerance_override():
    res = run_check("lemma.theta-simp", seed=5, tolerance=1e-30)
    assert res.tolerance == 1e-30
    assert not res.passed  # nothing is identically zero in floating point


def test_pole_audit_rejects_bad_path():
    # a modulus nearly on the real axis parks a gamma-tower pole on the path
    with pytest.raises(PoleOnPath):
        run_check("eval1", params={"tau": -0.25 + 0.01j, "sigma": 0.5j})


@pytest.mark.parametrize("identity_id", sorted(catalog.identity_ids()))
def test_every_identity_passes_one_draw(identity_id):
    res = run_check(identity_id, seed=2026, sample_index=0)
    assert res.passed, f"{identity_id}: abs_error={res.abs_error:.3e}"
