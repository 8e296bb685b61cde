from itertools import permutations
from pathlib import Path

import pytest

from grpcover.constructions import build
from grpcover.group import group_from_cayley
from grpcover.lattice import enumerate_subgroups

ROOT = Path(__file__).resolve().parent.parent
CATALOGS = ROOT / "catalogs"


def s3_permutations():
    """S3 as tuples, identity first; composition applies the left factor first."""
    perms = sorted(permutations(range(3)))
    return perms


def s3_cayley(order=None):
    """Cayley table of S3 under an arbitrary labelling ``order`` of its elements."""
    perms = order or s3_permutations()
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(b[a[i]] for i in range(3))] for b in perms] for a in perms]


@pytest.fixture(scope="session")
def lat():
    cache = {}

    def get(expr):
        if expr not in cache:
            G = build(expr)
            cache[expr] = (G, enumerate_subgroups(G))
        return cache[expr]

    return get


@pytest.fixture
def s3_table_group():
    return group_from_cayley(s3_cayley())


# -- acceptance reporting ------------------------------------------------------

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, text = mark.args
    elapsed = dict(item.user_properties).get("elapsed_s")
    _CRITERIA.append((number, "PASS" if rep.passed else "FAIL", text, elapsed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text, elapsed in sorted(_CRITERIA):
        t = "" if elapsed is None else f"  ({elapsed:.2f} s)"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {text}{t}")
