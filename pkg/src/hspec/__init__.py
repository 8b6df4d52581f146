"""Weighted composition operators on the Hardy space of the disk.

Finite sections of W_phi f = sqrt(phi') (f o phi), their singular values,
the restriction operator to the image domain and its eigenfunctions.
"""
from importlib.metadata import PackageNotFoundError, version as _version

try:
    __version__ = _version("hspec")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

from .errors import *  # noqa: F401,F403
from .holo import (HoloMap, Mobius, Poly, Scale, compose_maps, deform, derivative, eval_map,
                   fix_origin, identity, kernel, littlewood_paley_norm, normalized_kernel,
                   sqrt_derivative, taylor_coeffs)
from .wco import (adjoint_kernel_action, build_proof_split, build_shift_integral, build_wco,
                  compose_check)
from .spectra import (essential_norm_estimate, fit_K, julia_caratheodory_probe,
                      schwarz_pick_check, singular_values)
from .restrict import (compare_moduli, count_zeros, double_orthogonality, eval_eigenfunction,
                       gram_matrix, semigroup_deformation, top_eigenpairs)
from .fock import exterior_power, fock_norm, lambda_norm_formula_check, split_contraction_trace
