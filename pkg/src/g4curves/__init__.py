"""Curves of 4-dimensional Galilean space: metric, Frenet frames, Mannheim mates."""

from .core import (GalileanMotion, GPoint4, GVector4, apply_motion, apply_motion_to_vector,
                   g_cross, g_distance, g_dot, g_norm, is_isotropic)
from .curve import Curve, Domain, HelixFamily, curve_jet, curve_point, helix, load_curve_spec
from .errors import (CurveFormatError, DegenerateFrameError, DomainError, G4Error,
                     InvalidMotionError, ParseError)
from .expr import eval_jet, eval_real, parse_expr, to_source
from .frenet import (FrenetData, frenet_at, frenet_grid, frenet_residuals, invariance_check,
                     transform_curve)
from .jets import Jet, derivative, jet_const, jet_fun, jet_var
from .mannheim import (ConditionNotSatisfied, MannheimReport, check_condition, fit_gamma,
                       mannheim_mate, theorem_3_2_suite, verify_mate_tangent,
                       verify_normal_plane)

__version__ = "0.1.0"
