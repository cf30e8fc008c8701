"""Batch execution of registered checks with a reproducible JSON report.

A :class:`RunConfig` fully determines a run: the checks, the sample counts,
the seed, tolerance overrides, the series order, and the arithmetic backend.
``run_suite`` never aborts mid-run — a check that raises is recorded as an
``error`` result and the suite continues — and its report embeds the
resolved configuration, so a report can be re-derived from itself.

Complex numbers are serialized as two-element ``[re, im]`` arrays.  Wall
times are recorded under ``elapsed_seconds`` keys; strip those to compare
reports for reproducibility.
"""

from __future__ import annotations

import dataclasses
import json
import time
from typing import Mapping, Optional, Sequence

from . import catalog, conjectures
from .numerics import STANDARD, ExtendedContext

__all__ = [
    "SCHEMA_VERSION",
    "ConfigInvalid",
    "RunConfig",
    "VerificationReport",
    "all_check_ids",
    "list_identities",
    "run_suite",
]

SCHEMA_VERSION = "1"

_PRECISION_MODES = ("standard", "extended")


class ConfigInvalid(ValueError):
    """The run configuration references unknown checks or bad settings."""


def all_check_ids():
    """Every registered check id: numeric catalog plus exact series checks."""
    return tuple(sorted(catalog.identity_ids() + conjectures.series_check_ids()))


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Fully resolved description of one verification run."""

    identity_ids: Sequence[str]
    samples_per_identity: Optional[int] = None
    seed: int = 0
    tolerance_overrides: Mapping[str, float] = dataclasses.field(default_factory=dict)
    series_order: Optional[int] = None
    output_path: Optional[str] = None
    precision_mode: str = "standard"

    def __post_init__(self):
        ids = tuple(self.identity_ids)
        if not ids:
            raise ConfigInvalid("no checks selected")
        known = set(all_check_ids())
        unknown = sorted(set(ids) - known)
        if unknown:
            raise ConfigInvalid(f"unknown check ids: {', '.join(unknown)}")
        object.__setattr__(self, "identity_ids", ids)
        if self.samples_per_identity is not None and self.samples_per_identity < 1:
            raise ConfigInvalid("samples_per_identity must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigInvalid("seed must fit in 64 bits")
        numeric = set(catalog.identity_ids())
        for cid, tol in dict(self.tolerance_overrides).items():
            if cid not in known:
                raise ConfigInvalid(f"tolerance override for unknown check {cid!r}")
            if cid not in numeric:
                raise ConfigInvalid(
                    f"{cid!r} is an exact series check and takes no tolerance"
                )
            if not tol > 0:
                raise ConfigInvalid("tolerance overrides must be positive")
        if self.series_order is not None and self.series_order < 0:
            raise ConfigInvalid("series_order must be >= 0")
        if self.precision_mode not in _PRECISION_MODES:
            raise ConfigInvalid(
                f"precision_mode must be one of {_PRECISION_MODES}"
            )

    def as_dict(self):
        return {
            "identity_ids": list(self.identity_ids),
            "samples_per_identity": self.samples_per_identity,
            "seed": int(self.seed),
            "tolerance_overrides": dict(self.tolerance_overrides),
            "series_order": self.series_order,
            "output_path": self.output_path,
            "precision_mode": self.precision_mode,
        }


def _cx(value):
    value = complex(value)
    return [value.real, value.imag]


def _encode_value(value):
    if isinstance(value, (list, tuple)):
        return [_encode_value(item) for item in value]
    if isinstance(value, complex) and not isinstance(value, float):
        return _cx(value)
    if isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, float):
        return float(value)
    return _cx(value)


def _encode_params(params):
    return {key: _encode_value(value) for key, value in params.items()}


def _numeric_result(entry, config, sample_index, ctx):
    tol = config.tolerance_overrides.get(entry.id)
    start = time.perf_counter()
    try:
        res = catalog.run_check(
            entry.id,
            seed=config.seed,
            sample_index=sample_index,
            tolerance=tol,
            ctx=ctx,
        )
    except Exception as exc:  # isolated: one bad draw must not sink the run
        return {
            "id": entry.id,
            "kind": "numeric",
            "sample_index": sample_index,
            "status": "error",
            "error": f"{type(exc).__name__}: {exc}",
            "elapsed_seconds": time.perf_counter() - start,
        }
    return {
        "id": entry.id,
        "kind": "numeric",
        "sample_index": sample_index,
        "parameters": _encode_params(res.parameters),
        "lhs": _cx(res.lhs_value),
        "rhs": _cx(res.rhs_value),
        "abs_error": res.abs_error,
        "rel_error": res.rel_error,
        "quadrature_error_estimate": res.quadrature_error_estimate,
        "tolerance": res.tolerance,
        "decision": res.decision,
        "status": "pass" if res.passed else "fail",
        "elapsed_seconds": time.perf_counter() - start,
    }


def _series_result(check_id, config):
    start = time.perf_counter()
    try:
        outcome = conjectures.run_series_check(check_id, order=config.series_order)
    except Exception as exc:
        return {
            "id": check_id,
            "kind": "series",
            "status": "error",
            "error": f"{type(exc).__name__}: {exc}",
            "elapsed_seconds": time.perf_counter() - start,
        }
    return {
        "id": check_id,
        "kind": "series",
        "order": outcome["order"],
        "cases": outcome["cases"],
        "status": "pass" if outcome["exact"] else "fail",
        "elapsed_seconds": time.perf_counter() - start,
    }


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    config: RunConfig
    results: tuple
    summary: dict

    def as_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.as_dict(),
            "results": list(self.results),
            "summary": dict(self.summary),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.to_json())
            handle.write("\n")

    @property
    def all_passed(self):
        return bool(self.summary["all_passed"])


def run_suite(config: RunConfig) -> VerificationReport:
    """Run every configured check sequentially and summarize the outcomes.

    Checks run in sorted id order with ascending sample indices, and each
    sample's random stream is keyed by (seed, id, index), so reports are
    reproducible regardless of selection order.
    """
    ctx = STANDARD if config.precision_mode == "standard" else ExtendedContext(30)
    numeric_ids = set(catalog.identity_ids())
    started = time.perf_counter()
    results = []
    for check_id in sorted(config.identity_ids):
        if check_id in numeric_ids:
            entry = catalog.get_entry(check_id)
            count = config.samples_per_identity or entry.default_samples
            for index in range(count):
                results.append(_numeric_result(entry, config, index, ctx))
        else:
            results.append(_series_result(check_id, config))
    statuses = [r["status"] for r in results]
    summary = {
        "total": len(results),
        "passed": statuses.count("pass"),
        "failed": statuses.count("fail"),
        "errors": statuses.count("error"),
        "all_passed": all(s == "pass" for s in statuses),
        "elapsed_seconds": time.perf_counter() - started,
    }
    report = VerificationReport(config=config, results=tuple(results), summary=summary)
    if config.output_path:
        report.save(config.output_path)
    return report


def list_identities():
    """Manifest of every registered check, numeric and exact."""
    rows = []
    for cid, ref, domain, tolerance, default_samples in catalog.describe():
        rows.append(
            {
                "id": cid,
                "kind": "numeric",
                "description": ref,
                "domain": domain,
                "tolerance": tolerance,
                "default_samples": default_samples,
            }
        )
    for cid in conjectures.series_check_ids():
        check = conjectures.get_series_check(cid)
        rows.append(
            {
                "id": cid,
                "kind": "series",
                "description": check.ref,
                "domain": "exact rational coefficients through the configured order",
                "default_order": check.default_order,
            }
        )
    rows.sort(key=lambda row: row["id"])
    return tuple(rows)
