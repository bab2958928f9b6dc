from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sig22.numeric import mat

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fractions(bound: int = 6, max_den: int = 4):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, max_den))


def unit_fractions():
    """Rationals in [-1, 1]."""
    return st.integers(1, 6).flatmap(lambda q: st.builds(Fraction, st.integers(-q, q), st.just(q)))


def rational_matrices(rows: int, cols: int, bound: int = 4):
    return st.lists(st.lists(fractions(bound), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(mat)


def rational_vectors(n: int, bound: int = 6):
    return st.lists(fractions(bound), min_size=n, max_size=n).map(lambda v: np.array(v, dtype=object))


def unit_vectors(n: int):
    return st.lists(unit_fractions(), min_size=n, max_size=n).map(lambda v: np.array(v, dtype=object))


CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """record(n, ok, detail); a criterion test that dies before recording is listed as failed."""
    table = request.config.stash.setdefault(CRITERIA, {})
    number = int(request.node.name.split("_")[2])

    def record(ok: bool, detail: str):
        table[number] = (bool(ok), detail)
        return ok

    yield record
    table.setdefault(number, (False, "did not complete"))


def pytest_terminal_summary(terminalreporter, config):
    table = config.stash.get(CRITERIA, {})
    if not table:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(table):
        ok, detail = table[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
