"""Ehrhart polynomials, h*-vectors, and root-norm bounds in exact arithmetic."""

from .exactcore import (
    InterpolationError,
    Polynomial,
    ZeroPolynomialError,
    binomial,
    lagrange_interpolate,
    poly_eval,
    poly_eval_complex,
)
from .basis import (
    BasisElement,
    HStarVector,
    basis_element,
    basis_root_multiset,
    from_hstar,
    series_coefficients,
    to_hstar,
)
from .lattice import (
    BudgetExceededError,
    ConsistencyError,
    EhrhartResult,
    LatticePolytope,
    count_lattice_points,
    derive_facets,
    ehrhart_polynomial,
    random_lattice_simplex,
    standard_family,
)
from .roots import RootSet, find_roots, vieta_check
from .bounds import (
    DiscBound,
    FactorPoints,
    HalfPlaneCertificate,
    angular_limit,
    angular_width,
    bddps_bound,
    bound_region_scan,
    braun_disc,
    factor_points,
    generalized_halfplane_test,
    halfplane_certificate,
    summarize_checks,
    verify_roots,
)

__version__ = "0.1.0"
