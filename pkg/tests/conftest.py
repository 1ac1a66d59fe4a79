"""Shared test helpers: fixed-seed generators and a log-log slope fit."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


def fit_slope(xs, ys):
    """Least-squares slope of log(ys) against log(xs)."""
    return float(np.polyfit(np.log(np.asarray(xs, dtype=float)),
                            np.log(np.asarray(ys, dtype=float)), 1)[0])


# One line per acceptance criterion, collected by tests/test_acceptance.py
# and echoed after the run summary (outside stdout capture).
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
