"""Shared test helpers and the acceptance-suite summary printer."""

import re

import numpy as np

from orliczseq.spectrum import CoeffSeq


def random_sparse_seq(rng, band=32, max_terms=10, allow_constant=False):
    """Random finitely supported sequence with complex normal coefficients."""
    while True:
        m = int(rng.integers(1, max_terms + 1))
        ks = rng.choice(np.arange(-band, band + 1), size=min(m, 2 * band + 1), replace=False)
        if allow_constant or np.any(ks != 0):
            break
    c = rng.standard_normal(len(ks)) + 1j * rng.standard_normal(len(ks))
    return CoeffSeq(zip(ks.tolist(), c.tolist()))


def power_decay_seq(beta, band):
    """Model sequence |k|**(-beta - 1/2) on 0 < |k| <= band (real positive)."""
    ks = np.arange(1, band + 1)
    mags = ks.astype(float) ** (-beta - 0.5)
    return CoeffSeq(zip(np.concatenate([ks, -ks]).tolist(),
                        np.concatenate([mags, mags]).tolist()))


# -- acceptance summary -------------------------------------------------------

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = re.search(r"test_acceptance\.py::test_(c\d+[a-z]?)_(\w+)", report.nodeid)
    if not m:
        return
    label = f"{m.group(1).upper()} {m.group(2).replace('_', '-')}"
    _results[label] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label in sorted(_results):
        outcome = _results[label]
        word = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome)
        terminalreporter.write_line(f"{label}: {word}")
