import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from andreadakis.freegroup import Word, reduce  # noqa: E402

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def raw_syllables(rank: int, max_len: int = 12):
    return st.lists(
        st.tuples(st.integers(1, rank), st.sampled_from([-2, -1, 1, 2])), max_size=max_len
    )


def words(rank: int, max_len: int = 12):
    return raw_syllables(rank, max_len).map(lambda raw: reduce(rank, raw))


def gen(rank: int, i: int, e: int = 1) -> Word:
    return Word.generator(rank, i, e)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
