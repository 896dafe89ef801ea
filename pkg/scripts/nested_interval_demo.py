#!/usr/bin/env python3
"""Radical of a nested family of closed intervals.

Builds the direct sum of the interval modules for [-1/n, 1/n], n = 1..N,
takes its radical, and decomposes both.  The closed bars collapse to the
half-open bars (-1/n, 1/n], and the inclusion of the radical is a weak
isomorphism, so nothing observable changes.
"""

from fractions import Fraction

from obspers.decomposition import decompose
from obspers.diagrams import diagram, diagram_to_text
from obspers.intervals import DecoratedInterval
from obspers.gfp import GF2
from obspers.modules import direct_sum, interval_module
from obspers.observable import is_weak_iso, radical, radical_inclusion


def nested_family(n_max: int):
    crit = sorted({Fraction(s, n) for n in range(1, n_max + 1) for s in (-1, 1)})
    return direct_sum([
        interval_module(GF2,
                        DecoratedInterval(Fraction(-1, n), True, Fraction(1, n), True),
                        crit)
        for n in range(1, n_max + 1)
    ])


def main() -> None:
    for n_max in (1, 3, 6):
        total = nested_family(n_max)
        rad = radical(total)
        print(f"== N = {n_max} ==")
        print("barcode of the sum:")
        print(decompose(total).barcode)
        print("barcode of its radical:")
        print(decompose(rad).barcode)
        print("inclusion rad -> sum is a weak isomorphism:",
              is_weak_iso(radical_inclusion(total)))
        print("shared undecorated diagram:")
        print(diagram_to_text(diagram(total)), end="")
        print()


if __name__ == "__main__":
    main()
