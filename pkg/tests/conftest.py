from __future__ import annotations

import random

import pytest

from ctsynth.synthesis import Circuit, build_table
from ctsynth.unitary import RingUnitary


@pytest.fixture(scope="session")
def table():
    return build_table()


def random_word(rng: random.Random, length: int) -> str:
    return "".join(rng.choice("HT") for _ in range(length))


def random_unitary(rng: random.Random, length: int) -> RingUnitary:
    return Circuit.from_text(random_word(rng, length)).evaluate()
