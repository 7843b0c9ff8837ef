import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from clausal.cnf import TAUTOLOGY, Cnf, normalize_clause  # noqa: E402

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")


def literals(max_var):
    return st.integers(1, max_var).flatmap(lambda v: st.sampled_from([v, -v]))


@st.composite
def clauses(draw, max_var=6, max_len=4, min_len=0):
    lits = draw(st.lists(literals(max_var), min_size=min_len, max_size=max_len))
    c = normalize_clause(lits)
    if c is TAUTOLOGY:
        c = normalize_clause(dict((abs(l), l) for l in lits).values())
    return c


@st.composite
def cnfs(draw, max_var=6, max_clauses=10, max_len=4, min_len=1):
    cs = draw(st.lists(clauses(max_var, max_len, min_len), max_size=max_clauses))
    return Cnf(cs, max_var)


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[n])
