"""Design toolkit for rational ruled surfaces, strips and patches in E^3,
built on a line model of E^4 over the ambient space of the Pluecker quadric."""

from .algebra import (DEFAULT_TOL, DualNumber, DualVector3, HomPoint, Quaternion,
                      dual_mul, embed_point, extract_point, proj_equal, quat_conj,
                      quat_mul)
from .bezier import (ControlNet, Mesh, RuledSample, decasteljau_eval, eval_patch,
                     eval_ruled, eval_sample, eval_strip, sample_mesh,
                     surface_degree_bound, weights_from_farin)
from .errors import (DegenerateFitError, DegenerateLineError, GeneratorSpaceError,
                     GeometryError, InvalidDirectionError, InvalidFarinError,
                     NonPureDirectionError, OutsideSegmentError,
                     SceneValidationError, SliceCheckError, TangentSolveError)
from .gamma import (GammaSurface, Isometry4, SegmentClass, canonicalize_skew_pair,
                    circumcircle, classify_segment, degree_slice_check, fit_circle_3d,
                    fit_ellipse, gamma_implicit, gamma_point, gamma_ruling_dir,
                    gamma_striction, line_symmetric_displacement, ln_tangent_params,
                    reflect_displacement, segment_surface_residuals,
                    strip_circle_point)
from .lines3 import (LineElement3, LinearComplex, PluckerLine,
                     complex_contains_line, complex_contains_line_element,
                     line_element_from, line_element_point, line_from_point_dir,
                     plucker_condition_residual, plucker_from_points,
                     pole_of_hyperplane)
from .lines4 import (E4Line, E4LineElement, NearGeneratorWarning, Spear,
                     e4_element_from_dir_point, e4_line_from_dir_point,
                     element_point, fiber, height_f0, lift_element, lift_line,
                     line_from_spear, mu, mu_line, nu, nu_element, pedal_point,
                     project_pi, spear_from_line, spear_normalize,
                     theta_back_projection)
from .scene import Scene, scene_load, scene_save

__version__ = "0.1.0"
