"""Exact symbolic tangent-category engine on polynomial Cartesian spaces."""

from .polycore import PolyMap, Polynomial, ShapeError, compose, compose_all, map_equal
from .report import CheckRecord, Report, Status
from .tangent import (
    Space,
    T_map,
    T_obj,
    add_plus,
    check_tangent_axioms,
    flip_c,
    lift_l,
    proj_p,
    zero_0,
)
from .dbundle import (
    BundleMorphism,
    DiffBundle,
    bundles_equal,
    is_linear_morphism,
    mu_map,
    pullback_bundle,
    tangent_bundle,
    tangent_of_bundle,
    trivial_bundle,
    verify_bundle,
)
from .whitney import (
    BiproductBundle,
    PartialBundle,
    Recognition,
    biproduct,
    biproduct_laws,
    check_T_additive,
    hom_add,
    hom_zero,
    partial_add,
    partial_bundle,
    recognize_biproduct,
)
from .connection import (
    Connection,
    Decomposition,
    canonical_connection,
    check_effective,
    check_horizontal,
    check_pair,
    check_vertical,
    christoffel_connection,
    decompose_point,
    derive_horizontal,
    equivalence_suite,
    recompose_point,
    total_bundle,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "1.0.0"
