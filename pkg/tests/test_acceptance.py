"""Acceptance criteria 1-12, each printing a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (lines are printed even
without ``-s``) or as a script: ``python3 tests/test_acceptance.py``.
"""
import subprocess
import sys
import time

import pytest

from iwk import suite

# criterion -> (battery function, wall-clock bound in seconds or None)
CRITERIA = {
    1: (suite.check_m_anchor, 1.0),
    2: (suite.check_det_identity, 5.0),
    3: (suite.check_cm_relation, 30.0),
    4: (suite.check_decomposition, 30.0),
    5: (suite.check_compare, 60.0),
    6: (suite.check_scaling, None),
    7: (suite.check_ik, None),
    8: (suite.check_fitting, None),
    9: (suite.check_congruence, None),
    10: (suite.check_weierstrass, None),
    11: (suite.check_hecke, None),
}


def _emit(capsys, line):
    if capsys is None:
        print(line)
        return
    with capsys.disabled():
        print("\n" + line)


def evaluate(crit):
    fn, bound = CRITERIA[crit]
    start = time.perf_counter()
    checks = fn(0)
    elapsed = time.perf_counter() - start
    ok = all(c.status for c in checks) and (bound is None or elapsed < bound)
    limit = f" (bound {bound:g}s)" if bound else ""
    detail = "; ".join(f"{c.item}:{'pass' if c.status else 'fail'}" for c in checks)
    return ok, f"criterion {crit}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f}s{limit} [{detail}]"


def determinism():
    cmd = [sys.executable, "-m", "iwk", "suite", "--seed", "0"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout
    last = runs[0].stdout.decode().strip().splitlines()[-1] if runs[0].stdout else ""
    ok = same and all(r.returncode == 0 for r in runs) and last == "ALL PASS"
    return ok, (f"criterion 12: {'PASS' if ok else 'FAIL'} [two runs byte-identical={same}, "
                f"{len(runs[0].stdout)} bytes, summary={last!r}]")


@pytest.mark.parametrize("crit", sorted(CRITERIA))
def test_criterion(crit, capsys):
    ok, line = evaluate(crit)
    _emit(capsys, line)
    assert ok, line


def test_criterion_12_determinism(capsys):
    ok, line = determinism()
    _emit(capsys, line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(c) for c in sorted(CRITERIA)] + [determinism()]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
