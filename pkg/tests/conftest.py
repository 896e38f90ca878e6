import contextlib

import pytest

import linegestalt.chains as chains
from linegestalt.geometry import Chain

_CRITERIA = []
_MAXIMALITY = {"checked": 0, "violations": []}
_filter_maximal = chains.filter_maximal


def _checked_filter_maximal(candidates, epsilon, score_fn, kind, lam=None):
    # every chain detection produced anywhere in the session is rescored here
    out = _filter_maximal(candidates, epsilon, score_fn, kind, lam)
    for det in out:
        links = det.chain.links
        for i in range(len(links)):
            for j in range(i + 2, len(links) + 1):
                sub = Chain.from_links(links[i:j], lam)
                if score_fn(sub.k, sub.d, sub.theta) < det.score:
                    _MAXIMALITY["violations"].append((det.chain.ids, (i, j)))
        _MAXIMALITY["checked"] += 1
    return out


chains.filter_maximal = _checked_filter_maximal


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line for the terminal summary."""

    @contextlib.contextmanager
    def record(number, title):
        details = []
        try:
            yield details
        except BaseException:
            _CRITERIA.append((number, "FAIL", title, details))
            raise
        _CRITERIA.append((number, "PASS", title, details))

    return record


def pytest_sessionfinish(session):
    if _MAXIMALITY["violations"]:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA and not _MAXIMALITY["checked"]:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, details in sorted(_CRITERIA, key=lambda c: c[0]):
        extra = f" ({'; '.join(details)})" if details else ""
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}{extra}")
    bad = _MAXIMALITY["violations"]
    terminalreporter.write_line(
        f"[{'FAIL' if bad else 'PASS'}] criterion 5 (session-wide): "
        f"{_MAXIMALITY['checked']} chain detections emitted by the whole run, "
        f"{len(bad)} with a strictly better contiguous subchain"
    )
