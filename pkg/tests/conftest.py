import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def cosine_matrix(n):
    """Explicit DCT-II matrix from the cosine formula, row u / column k."""
    import math

    m = np.empty((n, n))
    for u in range(n):
        a = math.sqrt((1 if u == 0 else 2) / n)
        for k in range(n):
            m[u, k] = a * math.cos(math.pi * (2 * k + 1) * u / (2 * n))
    return m


_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    cid = getattr(item.function, "criterion", None)
    if cid is None or rep.when != "call" and not rep.failed:
        return
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed and rep.when == "call" and not detail:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
    if rep.when == "call" or cid not in _ACCEPTANCE:
        _ACCEPTANCE[cid] = ("PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: int(c[1:])):
        status, detail = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"{cid} {status} {detail}".rstrip())
