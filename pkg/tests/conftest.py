from __future__ import annotations

from fractions import Fraction

import pytest

from obspers.gfp import GF2, GF5, FieldSpec
from obspers.intervals import interval
from obspers.modules import interval_module


def make_interval_module(field: FieldSpec, text: str, criticals) -> "GridModule":
    return interval_module(field, interval(text),
                           [Fraction(c) for c in criticals])


@pytest.fixture
def gf2() -> FieldSpec:
    return GF2


@pytest.fixture
def gf5() -> FieldSpec:
    return GF5
