"""Local spectral criterion for property (T) on partite simplicial complexes."""

from .complex_core import SimplicialComplex, build_complex, link
from .criterion import LinkFamilyInput, kazhdan_epsilon, lambda_table, run_criterion
from .spectra import WeightedGraph, random_walk_spectrum

__version__ = "0.1.0"

__all__ = [
    "LinkFamilyInput",
    "SimplicialComplex",
    "WeightedGraph",
    "build_complex",
    "kazhdan_epsilon",
    "lambda_table",
    "link",
    "random_walk_spectrum",
    "run_criterion",
]
