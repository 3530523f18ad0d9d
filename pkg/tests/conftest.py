import pytest

from ptq.harness import gen_typed_term


@pytest.fixture(scope="session")
def corpus():
    """Closed typed lambda terms shared across test modules: (term, type,
    size, seed) tuples covering sizes 0 through 8."""
    out = []
    for size in range(9):
        for seed in range(12):
            m, ty = gen_typed_term(size, seed)
            out.append((m, ty, size, seed))
    return out
