"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line followed by its individual
outcomes, so ``pytest -s`` (or the tee'd ``-v`` log) reads as a report.
Expected values live in ``tcohom/data/suite_manifest.json``.
"""

import pytest

import tcohom.complexes as cx
from tcohom.suite import criteria, run_criterion

CRITERIA = criteria()


def _report(result):
    print(f"\n{result.status.upper()} {result.id}. {result.key} ({result.elapsed_ms / 1000:.1f}s)")
    for o in result.outcomes:
        line = f"    {o.status.upper():4} {o.name}: expected {o.expected!r}, got {o.actual!r}"
        if o.status != "pass" and o.note:
            line += f" [{o.note}]"
        print(line)


@pytest.mark.parametrize("entry", CRITERIA, ids=[f"{c['id']:02d}-{c['key']}" for c in CRITERIA])
def test_criterion(entry):
    result = run_criterion(entry)
    _report(result)
    failed = [o.name for o in result.outcomes if o.status == "fail"]
    assert not failed, f"criterion {entry['id']} failed: {failed}"
    assert all(o.status != "skip" for o in result.outcomes)


def test_sign_mutation_fails_criterion_3(monkeypatch):
    """Flipping one sign in the type-1 second differential must not go unnoticed."""
    original = cx._pa2_terms

    def mutated(T, kind):
        terms = original(T, kind)
        if kind == 1:
            sign, f = terms[-1]
            terms = terms[:-1] + [(-sign, f)]
        return terms

    monkeypatch.setattr(cx, "_pa2_terms", mutated)
    entry = next(c for c in CRITERIA if c["key"] == "h2-z2-heap")
    result = run_criterion(entry)
    print(f"\nmutated differential: criterion 3 reports {result.status.upper()}")
    assert result.status == "fail"
