"""Shared fixtures for the test suite."""
from __future__ import annotations

import random
import re

import pytest

from commprobe.catalog import builtin_group


SMALL_NAMES = ["Z1", "Z2", "Z6", "S3", "D4", "Q8", "E8", "Z12", "A4", "D8"]
MEDIUM_NAMES = SMALL_NAMES + ["S4", "SL23", "E27", "Heis27", "D16", "ES32plus"]


@pytest.fixture(params=SMALL_NAMES)
def small_group(request):
    """One catalog group of order at most 16."""
    return builtin_group(request.param)


@pytest.fixture(params=MEDIUM_NAMES)
def medium_group(request):
    """One catalog group of order at most 32."""
    return builtin_group(request.param)


@pytest.fixture
def rng():
    """Deterministic RNG shared by sampling tests."""
    return random.Random(20260817)


_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one verdict line per acceptance criterion after the run."""
    lines = []
    for verdict, key in (("PASS", "passed"), ("FAIL", "failed"), ("FAIL", "error")):
        for rep in terminalreporter.stats.get(key, ()):
            match = _CRITERION.search(getattr(rep, "nodeid", ""))
            if match:
                label = match.group(2).replace("_", " ")
                lines.append((int(match.group(1)), f"criterion {match.group(1)}: {verdict} — {label}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
