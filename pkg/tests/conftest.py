import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from homlts.field import GF, QQ  # noqa: E402
from homlts.generators import b2, gen_bilinear, gen_matrix, random_homlts, zero_bracket  # noqa: E402

F101 = GF(101)

# seeds for the random GF(101) corpus; dims alternate between 2 and 3
CORPUS_SEEDS = tuple(range(24))


def corpus_system(seed):
    return random_homlts(2 + seed % 2, F101, seed)


def corpus():
    return [corpus_system(s) for s in CORPUS_SEEDS]


def swap_conjugated_matrices(field=QQ):
    return gen_matrix(2, 2, conjugator=[[0, 1], [1, 0]], field=field)


def example_fixtures():
    """Bilinear-form and matrix examples over the rationals."""
    return [b2(), gen_matrix(2, 2), swap_conjugated_matrices()]


@pytest.fixture
def B2():
    return b2()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def lts_fixtures():
    """Untwisted systems over the rationals (alpha = id)."""
    return [
        gen_bilinear([[1, 0], [0, 1]], [[1, 0], [0, 1]], 1),
        gen_bilinear([[1, 0, 0], [0, 2, 0], [0, 0, -1]], np.eye(3, dtype=int).tolist(), 1),
        gen_matrix(1, 2),
        zero_bracket(QQ, 2),
    ]


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
