import sys
from pathlib import Path

import pytest

# Expansions of the 50 000-digit fixtures produce integers beyond the
# default str() conversion limit; lift it once for the whole suite.
sys.set_int_max_str_digits(2_000_000)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def sqrt2_decimal() -> str:
    return (FIXTURES / "sqrt2_50000.txt").read_text().strip()


@pytest.fixture(scope="session")
def e_decimal() -> str:
    return (FIXTURES / "e_50000.txt").read_text().strip()
