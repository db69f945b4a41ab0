from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from tdeform import TParam, make_series

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GENERIC_TS = [Fraction(-1), Fraction(-2), Fraction(1, 2), Fraction(7, 3)]
FINITE_DS = [2, 3, 5]
T_PARAMS = [TParam.generic(t) for t in GENERIC_TS] + [TParam.finite(d) for d in FINITE_DS]

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero_rationals = small_rationals.filter(lambda x: x != 0)

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE = []


def unit_series(order, top=None):
    """Strategy for series with constant term 1 and support <= top."""
    top = order if top is None else min(top, order)
    return st.lists(small_rationals, min_size=top, max_size=top).map(
        lambda cs: make_series([1] + cs, order))


def random_unit(rng, order, top=None, span=5, den=4):
    top = order if top is None else min(top, order)
    return make_series([1] + [Fraction(rng.randint(-span, span), rng.randint(1, den))
                              for _ in range(top)], order)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {name}")


@pytest.fixture(params=T_PARAMS, ids=str)
def tparam(request):
    return request.param
