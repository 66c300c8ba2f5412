import pytest
from hypothesis import strategies as st

from monomial_poincare.cli import parse_ideal
from monomial_poincare.monomial import minimalize


@pytest.fixture
def I():
    return parse_ideal


def m_primary(dim=2, max_exp=5, extra=3):
    """Strategy for m-primary monomial ideals with small exponents."""
    powers = st.lists(st.integers(1, max_exp), min_size=dim, max_size=dim)
    mixed = st.lists(st.tuples(*[st.integers(0, max_exp) for _ in range(dim)]), max_size=extra)

    def build(pp, more):
        gens = [tuple(p if i == k else 0 for i in range(dim)) for k, p in enumerate(pp)]
        return minimalize(gens + list(more), dim)

    return st.builds(build, powers, mixed).filter(lambda a: not a.is_unit)
