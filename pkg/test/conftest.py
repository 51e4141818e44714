import itertools
import math
import os
import sys

import pytest

# ensure repo root and src on path
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
for path in (ROOT, os.path.join(ROOT, 'src')):
    if path not in sys.path:
        sys.path.insert(0, path)

from crossfam.config import Guards  # noqa: E402
from crossfam.family_core import SetFamily, is_cross_t_intersecting  # noqa: E402


def brute_force_optimum(f: SetFamily, t: int, k: int, objective: str) -> int:
    """Every assignment of a subset of family indices to every member; tiny instances only."""
    best = 0
    for labels in itertools.product(range(1 << k), repeat=len(f)):
        families = [f.subfamily_of(v for v, lab in enumerate(labels) if lab >> i & 1) for i in range(k)]
        if not is_cross_t_intersecting(families, t):
            continue
        sizes = [len(fam) for fam in families]
        best = max(best, sum(sizes) if objective == "sum" else math.prod(sizes))
    return best


@pytest.fixture
def guards():
    return Guards()


@pytest.fixture
def example33():
    """{0}, {1}, {0,1} over a ground set of size 2."""
    return SetFamily.from_sets(2, [[0], [1], [0, 1]])


@pytest.fixture
def family_file(tmp_path):
    def write(text, name="family.json"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
