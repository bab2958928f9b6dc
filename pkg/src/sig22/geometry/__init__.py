"""Coordinate and extrinsic models of the (2,2) spaces."""

from .curvature import EXPECTED_PARALLEL, curvature, curvature_checks, parallel_field_dim
from .extrinsic import (ExtrinsicSpace, affine_action, complex_coordinate_metric, extrinsic_space, iota,
                        iota_isometry_check, n_chart_to_complex, reflection, reflection_check)
from .fixed import fixed_point, fixed_point_residual
from .models import (ChartIsometry, CoordinateModel, closed_form_action, group_metric, model_metric, n_linear,
                     origin_gram, pullback_check, sign_discrete, x1_discrete, x1_o11)
from .so12 import SO12Class, ad_sl2, classify_so12, fixed_vector

__all__ = [
    "EXPECTED_PARALLEL", "curvature", "curvature_checks", "parallel_field_dim",
    "ExtrinsicSpace", "affine_action", "complex_coordinate_metric", "extrinsic_space", "iota",
    "iota_isometry_check", "n_chart_to_complex", "reflection", "reflection_check",
    "fixed_point", "fixed_point_residual",
    "ChartIsometry", "CoordinateModel", "closed_form_action", "group_metric", "model_metric", "n_linear",
    "origin_gram", "pullback_check", "sign_discrete", "x1_discrete", "x1_o11",
    "SO12Class", "ad_sl2", "classify_so12", "fixed_vector",
]
