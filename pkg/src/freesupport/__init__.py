"""Numerical supports of free additive convolution semigroups.

Given a compactly supported probability measure ``mu`` (atoms plus a
piecewise-linear density), compute for each ``t > 1`` the atoms, absolutely
continuous support and density of ``mu_t = mu^{boxplus t}``, and measure how
``supp(mu_t)`` moves with ``t`` in the Hausdorff metric.
"""

from .errors import (DiracMass, EmptySet, FreeSupportError, InvalidTime, MassNotOne,
                     NumericalError, OverlappingSegments, PoleOnAxis, PsiNotReal,
                     UnboundedSupport, UnsupportedLawTime, ValidationError, ZeroCauchy, ZeroF)
from .estimator import FreeConvolutionSemigroup
from .geometry import boundary_graph, f_t, graph_hausdorff, threshold, v_plus
from .hausdorff import ContinuityTable, ScanRow, continuity_scan, directed_hausdorff, hausdorff
from .intervals import IntervalUnion
from .laws import LawSpec, law_to_spec, oracle_density, oracle_support
from .measure import MeasureSpec, Segment, hull, mean_variance, moment, validate
from .support import (AtomRecord, DensityProfile, SupportSnapshot, ac_support, atoms_at,
                      density_at, h_t_map, psi_t, snapshot, vanishing_times)
from .transforms import cauchy, f_transform, g_value, nevanlinna_h
from .validation import check_measure, check_times

__version__ = "0.1.0"

__all__ = [
    "AtomRecord", "ContinuityTable", "DensityProfile", "DiracMass", "EmptySet", "FreeConvolutionSemigroup",
    "FreeSupportError", "IntervalUnion", "InvalidTime", "LawSpec", "MassNotOne", "MeasureSpec",
    "NumericalError", "OverlappingSegments", "PoleOnAxis", "PsiNotReal", "ScanRow", "Segment",
    "SupportSnapshot", "UnboundedSupport", "UnsupportedLawTime", "ValidationError", "ZeroCauchy", "ZeroF",
    "ac_support", "atoms_at", "boundary_graph", "cauchy", "check_measure", "check_times",
    "continuity_scan", "density_at", "directed_hausdorff", "f_t", "f_transform", "g_value",
    "graph_hausdorff", "h_t_map", "hausdorff", "hull", "law_to_spec", "mean_variance", "moment",
    "nevanlinna_h", "oracle_density", "oracle_support", "psi_t", "snapshot", "threshold", "v_plus",
    "validate", "vanishing_times",
]
