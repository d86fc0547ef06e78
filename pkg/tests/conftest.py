import pytest

from unified_segtree.geometry import Rect


@pytest.fixture
def crossing_pair():
    tall = Rect(1, 1, 0, 3, 4)
    wide = Rect(2, 0, 1, 4, 3)
    return tall, wide


_ACCEPTANCE = []
_ACCEPTANCE_LOG = []


class _Recorder:
    def __call__(self, name, ok, detail=""):
        _ACCEPTANCE.append((name, ok, detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")

    def log(self, line):
        _ACCEPTANCE_LOG.append(line)


@pytest.fixture
def acceptance():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    for line in _ACCEPTANCE_LOG:
        terminalreporter.write_line(f"  bench {line}")
