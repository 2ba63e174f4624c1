import json
from importlib import resources

import pytest

from tropsurf import matroid as mt


def data_path(name):
    return resources.files("tropsurf") / "data" / name


def load_data(name):
    with open(data_path(name)) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def braid():
    # the rank-3 matroid of the complete graph K4: four triple points
    return mt.from_lines(6, [[0, 1, 3], [1, 2, 4], [0, 2, 5], [3, 4, 5]])


@pytest.fixture(scope="session")
def u33():
    return mt.uniform(3, 3)


@pytest.fixture(scope="session")
def u34():
    return mt.uniform(3, 4)


@pytest.fixture(scope="session")
def all_small_matroids():
    """Every labeled simple rank-3 matroid on at most 7 elements."""
    out = []
    for n in range(3, 8):
        out.extend(mt.enumerate_simple_rank3(n))
    return out


@pytest.fixture(scope="session")
def library_matroids(braid):
    """The named matroids used by randomized and exhaustive checks."""
    return {
        "u33": mt.uniform(3, 3),
        "u34": mt.uniform(3, 4),
        "u35": mt.uniform(3, 5),
        "braid": braid,
        "pc22": mt.parallel_connection(2, 2),
        "pc23": mt.parallel_connection(2, 3),
        "line_times_r": mt.direct_sum(mt.uniform(2, 4), mt.uniform(1, 1)),
        "star7": mt.from_lines(7, [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5]]),
    }
