"""Singularities, resolutions, indices and orbit curvature for polynomial vector fields on C^2."""
from .blowup import blowup_once, generalized_curve_verdict, is_generalized_curve, seidenberg_resolve
from .config import Config
from .cpoly import CPoly1, CPoly2, common_zeros, parse_poly, resultant, univariate_roots
from .curvature import (
    SolvableOrbit,
    curvature_density,
    fiber_intersection_count,
    fs_density,
    orbit_flow,
    spherical_image_area,
    total_curvature,
    total_curvature_closed_form,
)
from .errors import FolianaError
from .foliation import (
    INFINITELY_MANY,
    Line,
    ProjectivePoint,
    VectorField,
    chart_transform,
    gauss_direction,
    invariant_lines,
    linf_invariant,
    singularities,
)
from .localsing import classify, cs_index, cs_sum_on_line, linear_part, poincare_dulac_reduce
from .scalars import GaussRat
from .verdict import (
    ClosedFormOneForm,
    check_theorem1,
    check_theorem2,
    check_theorem52,
    full_report,
    verify_closed_form,
)

__all__ = [
    "CPoly1",
    "CPoly2",
    "ClosedFormOneForm",
    "Config",
    "FolianaError",
    "GaussRat",
    "INFINITELY_MANY",
    "Line",
    "ProjectivePoint",
    "SolvableOrbit",
    "VectorField",
    "blowup_once",
    "chart_transform",
    "check_theorem1",
    "check_theorem2",
    "check_theorem52",
    "classify",
    "common_zeros",
    "cs_index",
    "cs_sum_on_line",
    "curvature_density",
    "fiber_intersection_count",
    "fs_density",
    "full_report",
    "gauss_direction",
    "generalized_curve_verdict",
    "invariant_lines",
    "is_generalized_curve",
    "linear_part",
    "linf_invariant",
    "orbit_flow",
    "parse_poly",
    "poincare_dulac_reduce",
    "resultant",
    "seidenberg_resolve",
    "singularities",
    "spherical_image_area",
    "total_curvature",
    "total_curvature_closed_form",
    "univariate_roots",
    "verify_closed_form",
]

__version__ = "0.1.0"
