import hypothesis
import hypothesis.strategies as st
import pytest

from yflattice.words import FibWord

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=300, deadline=None, derandomize=True)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")


def fib_words(min_rank: int = 0, max_rank: int = 12):
    """Words of rank in [min_rank, max_rank], built digit by digit."""
    return st.lists(st.sampled_from((1, 2)), max_size=max_rank).map(
        lambda ds: _clip(ds, max_rank)).filter(lambda w: w.rank >= min_rank)


def _clip(digits, max_rank):
    out, r = [], 0
    for d in digits:
        if r + d > max_rank:
            break
        out.append(d)
        r += d
    return FibWord(out)


@pytest.fixture
def words_strategy():
    return fib_words


_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record and print one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(_VERDICTS, [])

    def record(number: int, ok: bool, elapsed: float, limit: float, detail: str):
        in_time = elapsed < limit
        status = "PASS" if ok and in_time else "FAIL"
        line = f"[{status}] criterion {number}: {detail} ({elapsed:.1f}s of {limit:.0f}s)"
        lines.append(line)
        print(line)
        assert ok, line
        assert in_time, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
