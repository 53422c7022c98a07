"""Registry of built-in instances: census, defaults, overrides and gating."""

from __future__ import annotations

import pytest
from mpmath import mp, mpf

from ramanujan_verify.errors import UnknownIdentity, UsageError
from ramanujan_verify.identities import propositions
from ramanujan_verify.identities.registry import (entry_params, get_entry, list_entries, registry_ids,
                                                  registry_verify, validate_hypotheses)
from ramanujan_verify.numeric import PrecisionContext


def test_census():
    ids = registry_ids()
    assert len(ids) == 27 == len(set(ids))
    assert {"prop1", "prop2", "prop3", "thm5.demo", "thm6.demo", "prop4", "prop7", "cor3.10", "eq3.11",
            "prop8"} <= set(ids)
    assert sum(i.startswith(("cor4.", "eq4.")) for i in ids) == 17


def test_descriptors():
    entries = {e["id"]: e for e in list_entries()}
    assert entries["cor4.23"]["note"] == "formula for π/4"
    assert {i for i, e in entries.items() if e["fixed"]} == {"eq4.5", "eq4.6", "eq4.8", "eq4.20"}
    assert all(e["title"] and isinstance(e["defaults"], dict) for e in entries.values())


def test_every_default_passes_at_15_digits(ctx15):
    failures = {}
    for identity_id in registry_ids():
        report = registry_verify(identity_id, None, ctx15)
        if not (report.hypothesis.ok and report.passed):
            failures[identity_id] = (report.rel_residual, report.hypothesis.violations)
    assert not failures


def test_unknown_id():
    with pytest.raises(UnknownIdentity):
        get_entry("nope")
    with pytest.raises(UnknownIdentity):
        registry_verify("nope")


@pytest.mark.parametrize("identity_id", ["eq4.5", "eq4.6", "eq4.8", "eq4.20"])
def test_fixed_entries_refuse_overrides(ctx, identity_id):
    with pytest.raises(UsageError):
        registry_verify(identity_id, {"a": ["1", "2"]}, ctx)


def test_defaults_parse_at_working_precision(ctx):
    p = entry_params("cor3.10", None, ctx)
    with ctx.workdps():
        assert abs(p.alpha - mp.sqrt(mp.pi / 2)) < mpf(10) ** -45


def test_override_changes_family_size(ctx):
    report = registry_verify("cor4.23", {"x": ["1", "1+i", "2*i"]}, ctx)
    assert report.passed and report.params["M"] == 3


def test_override_with_explicit_size(ctx):
    report = registry_verify("cor4.23", {"M": 2, "x": ["1", "1+i"]}, ctx)
    assert report.passed


def test_size_mismatch_is_a_usage_error(ctx):
    with pytest.raises(UsageError):
        registry_verify("cor4.23", {"M": 3, "x": ["1", "1+i"]}, ctx)


def test_unparsable_override_is_a_usage_error(ctx):
    with pytest.raises(UsageError):
        registry_verify("prop1", {"t": "sqrt(("}, ctx)
    with pytest.raises(UsageError):
        registry_verify("prop1", {"bogus": "1"}, ctx)


def test_resonance_is_gated(ctx, monkeypatch):
    """A violated hypothesis yields a rejected report; the sides are never computed."""
    def forbidden(*args, **kw):
        raise AssertionError("sides evaluated on a failed hypothesis report")

    monkeypatch.setattr(propositions, "cos_family_sides", forbidden)
    report = registry_verify("prop1", {"x": [1, 1], "a": [0, 0]}, ctx)
    assert not report.passed and report.lhs is None and report.series_stats == ()
    witness = [(v.n, v.k) for v in report.hypothesis.violations if v.condition.endswith("resonance")]
    assert witness == [(1, 1)]


def test_validate_hypotheses_reports_limit(ctx):
    p = entry_params("prop1", {"x": [1, 1], "a": [0, 0]}, ctx)
    report = validate_hypotheses("prop1", p, 50, ctx)
    assert not report.ok and report.checked_up_to == 50


def test_precision_independent_of_global_state():
    mp.dps = 300
    ctx = PrecisionContext(target_digits=20)
    report = registry_verify("cor4.19", None, ctx)
    assert report.working_digits == 20 + 15 + 4
    assert mp.dps == 300
