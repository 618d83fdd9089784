import io
import json
from importlib import resources

import numpy as np
import pytest

from sextic_sieve.cli import main


def simple_sieve(limit):
    """Plain boolean sieve used as an oracle; independent of the package."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return flags


@pytest.fixture(scope="session")
def prime_flags():
    return simple_sieve(10**6 + 10**5)


@pytest.fixture
def run_cli():
    def run(*argv):
        out, err = io.StringIO(), io.StringIO()
        code = main(list(argv), out=out, err=err)
        return code, out.getvalue(), err.getvalue()
    return run


@pytest.fixture(scope="session")
def cli_schema():
    text = resources.files("sextic_sieve").joinpath("schemas/cli.schema.json").read_text()
    return json.loads(text)


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(num, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark and (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        num, title = mark.args
        _ACCEPTANCE.append((num, title, rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, dur in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"AC{num} {'PASS' if passed else 'FAIL'}  {title}  ({dur:.2f}s)")
