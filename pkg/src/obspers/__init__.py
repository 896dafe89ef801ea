"""Constructible real-parameter persistence modules in the observable category."""

from .gfp import FieldSpec, Mat, Subspace, GF2, GF5
from .intervals import DecoratedInterval, interval
from .modules import GridModule, Morphism, interval_module, direct_sum, refine, random_module
from .observable import ObMorphism, bar, underbar, radical, limiting_ranks, is_weak_iso
from .decomposition import Barcode, Decomposition, barcode_formula, decompose, ob_barcode
from .diagrams import Diagram, DiagramPoint, Rectangle, diagram, measure, ob_isomorphic
from .distances import Matching, Interleaving, bottleneck, interleaving_distance

__all__ = [
    "FieldSpec", "Mat", "Subspace", "GF2", "GF5",
    "DecoratedInterval", "interval",
    "GridModule", "Morphism", "interval_module", "direct_sum", "refine", "random_module",
    "ObMorphism", "bar", "underbar", "radical", "limiting_ranks", "is_weak_iso",
    "Barcode", "Decomposition", "barcode_formula", "decompose", "ob_barcode",
    "Diagram", "DiagramPoint", "Rectangle", "diagram", "measure", "ob_isomorphic",
    "Matching", "Interleaving", "bottleneck", "interleaving_distance",
]
