"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS`` or ``criterion N: FAIL`` line.
Criteria whose printed reference values contradict the computation are marked
strict xfail; the companion tests pin every other part of those criteria.
"""

from __future__ import annotations

import pytest

CRITERIA = {
    1: ("SL3 valuation table", ["sl3-table"]),
    2: ("SL4 transition matrices", ["sl4-matrices"]),
    3: ("quiver fixtures and mutation sweeps", ["quivers", "mutation-sequences"]),
    4: ("polytope identities and H-reps", ["polytopes"]),
    5: ("tropical transport", ["tropical"]),
    6: ("ray generators", ["rays"]),
    7: ("symbolic identity suites", ["chamber-ansatz", "double-bruhat"]),
    8: ("property suites", ["properties", "saturation"]),
}


def _failures(runs, suites):
    return [(name, r.check, r.inputs) for name in suites for r in runs[name][0] if not r.passed]


def _report(capsys, num, runs, extra_ok=True, note=""):
    title, suites = CRITERIA[num]
    bad = _failures(runs, suites)
    ok = not bad and extra_ok
    reason = "; ".join(f"{c} {i}" for _, c, i in bad) or note
    line = f"criterion {num} ({title}): {'PASS' if ok else 'FAIL'}"
    if not ok:
        line += f" [{reason}]"
    with capsys.disabled():
        print("\n" + line)
    return ok, bad


def test_criterion_1(suite_runs, capsys):
    elapsed = suite_runs["sl3-table"][1]
    ok, _ = _report(capsys, 1, suite_runs, elapsed < 1.0, f"took {elapsed:.2f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed N differs from symbolic mutation in rows 1 and 3")
def test_criterion_2(suite_runs, capsys):
    ok, _ = _report(capsys, 2, suite_runs)
    assert ok


def test_criterion_2_remaining_parts(suite_runs):
    reports = suite_runs["sl4-matrices"][0]
    assert all(r.passed for r in reports if r.check in ("matrix-M", "matrix-N-structure"))
    (n_report,) = [r for r in reports if r.check == "matrix-N"]
    assert n_report.witnesses[0]["differing_rows"] == [1, 3]


@pytest.mark.xfail(strict=True, reason="printed B2 dual-sweep quiver lacks an arrow that mutation forces")
def test_criterion_3(suite_runs, capsys):
    ok, _ = _report(capsys, 3, suite_runs)
    assert ok


def test_criterion_3_remaining_parts(suite_runs):
    bad = _failures(suite_runs, CRITERIA[3][1])
    assert bad == [("quivers", "quiver", {"type": "B2", "word": [1, 2, 1, 2], "kind": "right_vee"})]
    quivers = [r for r in suite_runs["quivers"][0] if r.check == "quiver"]
    assert sum(r.passed for r in quivers) == len(quivers) - 1


@pytest.mark.xfail(strict=True, reason="printed SL4 mutated-seed H-rep follows the printed N")
def test_criterion_4(suite_runs, capsys):
    ok, _ = _report(capsys, 4, suite_runs)
    assert ok


def test_criterion_4_remaining_parts(suite_runs):
    bad = _failures(suite_runs, CRITERIA[4][1])
    assert bad == [("polytopes", "sl4-hrep", {"system": "mut", "lambda": [1, 1, 1]})]
    hreps = [r.inputs["system"] for r in suite_runs["polytopes"][0] if r.check == "sl4-hrep" and r.passed]
    assert hreps == ["string", "seed", "nz"]


def test_criterion_5(suite_runs, capsys):
    ok, _ = _report(capsys, 5, suite_runs)
    assert ok


def test_criterion_6(suite_runs, capsys):
    ok, _ = _report(capsys, 6, suite_runs)
    assert ok


def test_criterion_7(suite_runs, capsys):
    ok, _ = _report(capsys, 7, suite_runs)
    assert ok


def test_criterion_8(suite_runs, capsys):
    total = sum(t for _, t in suite_runs.values())
    ok, _ = _report(capsys, 8, suite_runs, total < 60.0, f"suites took {total:.1f}s")
    assert ok
