"""Generalized Vandermonde varieties over finite fields and minimum-distance
bounds for cyclic codes."""

from .codes import (
    CyclicCode,
    bch_bound,
    bound_report,
    brute_force_distance,
    code_from_cosets,
    code_from_defining_set,
    cyclotomic_cosets,
    exact_distance_by_certificates,
    ht_bound,
    variety_bound,
)
from .gf import Field, FieldElement, field_of_order, make_field, parse_field, primitive_root_of_unity
from .mpoly import MultiPoly
from .vandermonde import ExponentSet, compute_fr, delta, f_poly, verify_fr_remark
from .variety import (
    certify_roots_of_unity,
    count_points,
    enumerate_points,
    predicted_subspaces,
    varieties_equal,
)

__version__ = "0.1.0"
