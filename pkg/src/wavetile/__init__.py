"""Exact wavelet-set and tiling computations on finite unions of half-open intervals."""

from .dar import CellMatrix, build_cell_matrix, dar_select, orbit_explore, refine_breakpoints
from .exact import QuadExt, format_rational, parse_quad, parse_rational
from .extraction import (
    balls, build_U_V, check_ip_conditions, check_speegle_conditions, greedy_dilation_subset,
    greedy_translation_subset,
)
from .fixtures import load_fixture
from .intervals import IntervalSet, MeasureValue, lebesgue, nu, set_algebra
from .matching import Diagonal, brute_force_diagonals, is_doubly_stochastic, positive_diagonal
from .measures import find_set_with_measures, integrals, interpolate_sets, measure_match
from .stepfunc import StepFunction
from .tiling import (
    d_point, dilation_multiplicity, is_wavelet_set, project_set, tau_point, tiling_verdict,
    translation_multiplicity,
)
from .wavelet import ComplexProfile, certify_wavelet, compute_dimension_function, geom_support_check

__version__ = "0.1.0"

__all__ = [
    "QuadExt", "parse_quad", "parse_rational", "format_rational",
    "IntervalSet", "MeasureValue", "lebesgue", "nu", "set_algebra",
    "StepFunction", "ComplexProfile",
    "tau_point", "d_point", "project_set", "translation_multiplicity", "dilation_multiplicity",
    "tiling_verdict", "is_wavelet_set",
    "certify_wavelet", "geom_support_check", "compute_dimension_function",
    "greedy_translation_subset", "greedy_dilation_subset", "balls",
    "check_speegle_conditions", "build_U_V", "check_ip_conditions",
    "Diagonal", "is_doubly_stochastic", "positive_diagonal", "brute_force_diagonals",
    "CellMatrix", "build_cell_matrix", "refine_breakpoints", "dar_select", "orbit_explore",
    "integrals", "interpolate_sets", "find_set_with_measures", "measure_match",
    "load_fixture",
]
