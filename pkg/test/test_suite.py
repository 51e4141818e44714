import json

import pytest

from crossfam.config import Guards
from crossfam.errors import UnknownClaimError
from crossfam.progress import TerminalProgressBar
from crossfam.reports import comparable_payload
from crossfam.suite import CLAIMS, OUT_OF_SCOPE_CLAIMS, SuiteConfig, claim_ids, run_suite


def config(**kw):
    kw.setdefault("progress", False)
    kw.setdefault("seed", 11)
    return SuiteConfig(**kw)


def test_claim_registry():
    ids = claim_ids()
    assert ids == sorted(CLAIMS)
    for claim in ("beta-bounds", "main-theorem", "line-construction", "symmetry", "embedding", "cyclic-cover"):
        assert claim in ids
    assert not {c for c, _ in OUT_OF_SCOPE_CLAIMS} & set(ids)


def test_unknown_claim():
    with pytest.raises(UnknownClaimError, match="unknown claim id"):
        run_suite(config(claims=["unknown"]))


def test_cyclic_cover_claim():
    reports = run_suite(config(claims=["cyclic-cover"]))
    assert len(reports) == sum(range(1, 9))
    assert all(r.passed for r in reports)
    assert all(r.claim_id == "cyclic-cover" for r in reports)


def test_random_claims_do_not_depend_on_threads():
    kw = dict(claims=["union-decomposition", "product-extension", "cyclic-cover"], random_tuples=30, extension_inputs=15)
    one = run_suite(config(threads=1, **kw))
    three = run_suite(config(threads=3, **kw))
    assert [comparable_payload(r) for r in one] == [comparable_payload(r) for r in three]
    assert all(r.passed for r in one)


def test_seed_changes_random_instances():
    a = run_suite(config(claims=["union-decomposition"], random_tuples=4, seed=1))
    b = run_suite(config(claims=["union-decomposition"], random_tuples=4, seed=2))
    assert [r.instance for r in a] != [r.instance for r in b]


def test_guard_refusal_becomes_failed_report():
    reports = run_suite(config(claims=["main-theorem"], guards=Guards(beta=3)))
    assert reports
    assert not any(r.passed for r in reports)
    assert all(r.notes and r.notes[0].startswith("guard:") for r in reports)


def test_run_suite_writes_output(tmp_path):
    out = tmp_path / "reports" / "suite.json"
    reports = run_suite(config(claims=["cyclic-cover"], output=out))
    data = json.loads(out.read_text(encoding="utf-8"))
    assert len(data) == len(reports)
    assert [d["instance"] for d in data] == [r.instance for r in reports]


def test_symmetry_claim():
    reports = run_suite(config(claims=["symmetry"]))
    assert len(reports) == 7
    assert all(r.passed for r in reports), [(r.instance, r.checks) for r in reports if not r.passed]


def test_example_families_claim():
    reports = run_suite(config(claims=["example-families"]))
    assert all(r.passed for r in reports), [(r.instance, r.checks) for r in reports if not r.passed]


def test_progress_bar_counts():
    with TerminalProgressBar(3, "Verifying", enabled=False) as bar:
        bar.update(1, "a")
        bar.update(2, "b", failed=1)
    assert bar.done == 3 and bar.failed == 1


@pytest.mark.slow
@pytest.mark.parametrize(
    "claim",
    [
        "beta-bounds",
        "upper-beta-dichotomy",
        "powerset-beta",
        "powerset-katona",
        "uniform-beta",
        "main-theorem",
        "line-construction",
        "powerset-sum",
        "product-small-cases",
        "embedding",
    ],
)
def test_acceptance_claims(claim):
    reports = run_suite(config(claims=[claim]))
    assert reports
    assert all(r.passed for r in reports), [(r.instance, r.checks, r.notes) for r in reports if not r.passed]


@pytest.mark.slow
def test_threshold_random_claim():
    reports = run_suite(config(claims=["threshold-random"], random_families=25))
    assert all(r.passed for r in reports), [(r.instance, r.checks, r.notes) for r in reports if not r.passed]


@pytest.mark.slow
def test_powerset_beta_claim_covers_three_sizes():
    reports = run_suite(config(claims=["powerset-beta"]))
    assert [r.instance for r in reports] == [f"powerset(n={n});t=1" for n in (2, 3, 4)]
    assert all(r.passed for r in reports)


@pytest.mark.slow
def test_line_construction_claim_on_three_by_three():
    reports = [r for r in run_suite(config(claims=["line-construction"])) if r.instance.startswith("lines(p=3,")]
    assert reports
    assert all(r.passed for r in reports), [(r.instance, r.checks) for r in reports if not r.passed]
