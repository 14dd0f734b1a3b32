from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from twistedhv.scalar import GaussianRational

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(bool)


def _phase(pq):
    # (p^2 - q^2 + 2pq i) / (p^2 + q^2) has modulus one
    p, q = pq
    n = p * p + q * q
    return GaussianRational(Fraction(p * p - q * q, n), Fraction(2 * p * q, n))


unit_values = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda t: t != (0, 0)).map(_phase)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
