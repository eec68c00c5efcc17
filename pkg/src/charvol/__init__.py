"""charvol: torsion volume forms, peripheral forms, and symplectic forms
on SL(N, C) representation varieties of free groups, cross-checked
against explicit trace-coordinate formulas."""

from .errors import (BudgetExceeded, CharvolError, CohomologyRankError,
                     InvariantViolation, MarginError, RegularityError,
                     SizeMismatch)
from .jsonio import (matrix_from_json, matrix_to_json,
                     representation_from_json, representation_to_json,
                     word_from_json, word_to_json)
from .matcore import (adjoint_matrix, bilinear_form, char_derivative,
                      companion_section, draw_group_element, frame_coords,
                      frame_from_coords, is_regular, random_group_element,
                      sigma, sigma_derivative_cocycle, standard_frame)
from .repcoh import (Cocycle, CohomologyBasis, Representation, SurfaceConfig,
                     as_word, bending_cocycle, circle_cohomology, coboundary,
                     cocycle_combination, evaluate, extend_cocycle,
                     h1_basis_rose, is_good, margin_values, random_good_rep,
                     relative_tangent_basis, surface_config, word_inverse,
                     zero_cocycle)
from .torsion import (circle_TOR, circle_pairing, circle_torsion_data,
                      nu_squared_via_torsion, nu_via_sigma, rose_volume_eval,
                      su_nu_check, vandermonde_newton_check, witten_check)
from .traces import (SYMPLECTIC_KEYS, VOLUME_KEY_EXAMPLES, coordinate_volume,
                     d_t, f3_quadratic_check, fricke_identity_check,
                     goldman_bracket, nu_delta_check, sl3_invariant_pair,
                     symplectic_eval, t, variation_sl2, volume_coframe,
                     volume_prefactor)
from .verify import SCENARIOS, derive_seed, report_json, run_scenario

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CharvolError", "CohomologyRankError",
    "InvariantViolation", "MarginError", "RegularityError", "SizeMismatch",
    "matrix_from_json", "matrix_to_json", "representation_from_json",
    "representation_to_json", "word_from_json", "word_to_json",
    "adjoint_matrix", "bilinear_form", "char_derivative",
    "companion_section", "draw_group_element", "frame_coords",
    "frame_from_coords", "is_regular", "random_group_element", "sigma",
    "sigma_derivative_cocycle", "standard_frame",
    "Cocycle", "CohomologyBasis", "Representation", "SurfaceConfig",
    "as_word", "bending_cocycle", "circle_cohomology", "coboundary",
    "cocycle_combination", "evaluate", "extend_cocycle", "h1_basis_rose",
    "is_good", "margin_values", "random_good_rep", "relative_tangent_basis",
    "surface_config", "word_inverse", "zero_cocycle",
    "circle_TOR", "circle_pairing", "circle_torsion_data",
    "nu_squared_via_torsion", "nu_via_sigma", "rose_volume_eval",
    "su_nu_check", "vandermonde_newton_check", "witten_check",
    "SYMPLECTIC_KEYS", "VOLUME_KEY_EXAMPLES", "coordinate_volume", "d_t",
    "f3_quadratic_check", "fricke_identity_check", "goldman_bracket",
    "nu_delta_check", "sl3_invariant_pair", "symplectic_eval", "t",
    "variation_sl2", "volume_coframe", "volume_prefactor",
    "SCENARIOS", "derive_seed", "report_json", "run_scenario",
    "__version__",
]
