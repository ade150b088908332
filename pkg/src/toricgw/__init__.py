"""Gromov-Witten partition functions of local toric Fano surfaces.

Two evaluations are provided and compared exactly: a Feynman graph sum over
Z_k-colored graphs with vertex weights from a character-sum vertex, and a
product formula in two-partition Hopf-link weights.
"""
from .coefrings import NovikovSeries, QCoefficient, XiSeries, lambda_expand, series_exp_log
from .feynman import EdgeRule, WeightTable, free_energy, partition_function_graphsum, partition_function_vev
from .graphs import AtomProfile, ColoredGraph, automorphism_order, chemistry_vev, enumerate_graphs, graph_invariants
from .toric import ToricSurface, WeightRatios, derive_tau, gv_extract, preset, z_localization, z_product
from .wzw import connected_amplitude, vertex_coefficient, w_hopf

__version__ = "0.1.0"

__all__ = [
    "QCoefficient",
    "NovikovSeries",
    "XiSeries",
    "lambda_expand",
    "series_exp_log",
    "ColoredGraph",
    "AtomProfile",
    "graph_invariants",
    "automorphism_order",
    "enumerate_graphs",
    "chemistry_vev",
    "WeightTable",
    "EdgeRule",
    "partition_function_vev",
    "partition_function_graphsum",
    "free_energy",
    "w_hopf",
    "vertex_coefficient",
    "connected_amplitude",
    "ToricSurface",
    "WeightRatios",
    "preset",
    "derive_tau",
    "z_product",
    "z_localization",
    "gv_extract",
]
