from __future__ import annotations

import sys
from pathlib import Path

import pytest

from srank import finite as fin
from srank.kernel import complete
from srank.presentation import parse_presentation

sys.path.insert(0, str(Path(__file__).parent))

TWO_GEN_3 = "gens a b; rel 3 a = a + b; rel 4 a = 2 b;"
ONE_REL = "gens a b; rel a + b = a;"
TRIPLE = "gens a; rel 3 a = a;"
F6_TABLE = {
    "elements": ["0", "a", "2a"],
    "zero": "0",
    "table": [["0", "a", "2a"], ["a", "2a", "a"], ["2a", "a", "2a"]],
}


def system(text: str):
    return complete(parse_presentation(text))


@pytest.fixture
def two_gen():
    return system(TWO_GEN_3)


@pytest.fixture
def one_rel():
    return system(ONE_REL)


@pytest.fixture
def triple():
    return fin.validate(F6_TABLE)


@pytest.fixture
def z2():
    return fin.from_function(["0", "u"], lambda i, j: (i + j) % 2)
