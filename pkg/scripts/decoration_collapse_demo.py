#!/usr/bin/env python3
"""Endpoint decorations are invisible to the observable category.

The four interval modules on (p, q) with different endpoint decorations
are pairwise non-isomorphic in the strict category (most Hom spaces are
zero) yet observably isomorphic, with identical diagrams.  A translated
pair is then compared: the bottleneck distance of the diagrams equals a
verified interleaving built at exactly that value.
"""

from fractions import Fraction

from obspers.diagrams import diagram, diagram_to_text, ob_isomorphic
from obspers.distances import bottleneck, build_interleaving, verify_interleaving
from obspers.gfp import GF2
from obspers.intervals import interval
from obspers.modules import interval_module, morphism_space_dim
from obspers.observable import ob_morphism_space_dim


def main() -> None:
    crit = [Fraction(0), Fraction(1)]
    texts = ["[0, 1]", "[0, 1)", "(0, 1]", "(0, 1)"]
    mods = {t: interval_module(GF2, interval(t), crit) for t in texts}

    print("strict Hom dimension / observable Hom dimension:")
    print("            " + "".join(f"{t:>10}" for t in texts))
    for a in texts:
        cells = []
        for b in texts:
            strict = morphism_space_dim(mods[a], mods[b])
            observable = ob_morphism_space_dim(mods[a], mods[b])
            cells.append(f"{f'{strict} / {observable}':>10}")
        print(f"{a:>12}" + "".join(cells))

    print("\npairwise observably isomorphic:",
          all(ob_isomorphic(mods[a], mods[b]) for a in texts for b in texts))
    print("shared diagram:")
    print(diagram_to_text(diagram(mods["[0, 1]"])), end="")

    v = interval_module(GF2, interval("(0, 2)"), [Fraction(0), Fraction(2)])
    w = interval_module(GF2, interval("(1/2, 5/2)"),
                        [Fraction(1, 2), Fraction(5, 2)])
    value, witness = bottleneck(diagram(v), diagram(w))
    il = build_interleaving(v, w, witness, value)
    print(f"\n(0,2) versus (1/2,5/2): bottleneck = {value}")
    print("interleaving built at that value verifies:",
          verify_interleaving(v, w, il))


if __name__ == "__main__":
    main()
