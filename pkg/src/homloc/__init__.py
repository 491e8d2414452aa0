"""Localized homology over Z2: minimal-radius cycles, optimal bases and their stability."""

from homloc.basis import filtration, filtration_distance, optimal_basis
from homloc.complex import Chain, SimplicialComplex, Subcomplex, build
from homloc.homology import betti, contain_cycle, homologous
from homloc.localize import bmin, min_radius_cycle
from homloc.metric import Metric

__all__ = [
    "Chain",
    "Metric",
    "SimplicialComplex",
    "Subcomplex",
    "betti",
    "bmin",
    "build",
    "contain_cycle",
    "filtration",
    "filtration_distance",
    "homologous",
    "min_radius_cycle",
    "optimal_basis",
]

__version__ = "0.1.0"
