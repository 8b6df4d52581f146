"""Quick oracle checks covering every public operation.

Each check is a zero-argument callable returning True on success.  The CLI
``selftest`` suite runs them all; the pytest suite runs them as well.
"""
from __future__ import annotations

import numpy as np

from . import corpus as _corpus
from .errors import DomainError
from .fock import exterior_power, fock_norm, lambda_norm_formula_check, split_contraction_trace
from .holo import (HoloMap, Mobius, Poly, Scale, derivative, eval_map, identity, kernel,
                   kernel_coeffs, littlewood_paley_norm, normalized_kernel, sqrt_derivative,
                   taylor_coeffs)
from .restrict import (count_zeros, double_orthogonality, eval_eigenfunction, gram_matrix,
                       compare_moduli, semigroup_deformation, top_eigenpairs)
from .spectra import (essential_norm_estimate, fit_K, julia_caratheodory_probe,
                      schwarz_pick_check, singular_values)
from .wco import (adjoint_kernel_action, build_proof_split, build_shift_integral, build_wco,
                  compose_check)

CHECKS = {}


def check(op):
    def deco(fn):
        CHECKS[f"{op}:{fn.__name__}"] = fn
        return fn
    return deco


def _close(a, b, tol=1e-12):
    return bool(np.allclose(a, b, rtol=0, atol=tol))


def _grid(M):
    return np.exp(2j * np.pi * np.arange(M) / M)


HALF = HoloMap((Poly((0.5, 0.5)),))


@check("eval_map")
def scale_point():
    return _close(eval_map(HoloMap((Scale(0.5),)), 0.6), 0.3)


@check("eval_map")
def identity_point():
    return _close(eval_map(HoloMap((Mobius(0, 0),)), 0.4j), 0.4j)


@check("eval_map")
def contact_point():
    return _close(eval_map(HoloMap((Poly((0, 1 / 1.4, 0.4 / 1.4)),)), 1.0), 1.0)


@check("eval_map")
def outside_disk_rejected():
    try:
        eval_map(identity(), 1.5)
    except DomainError:
        return True
    return False


@check("derivative")
def scale_derivative():
    return _close(derivative(HoloMap((Scale(0.5),)), 0.3 + 0.2j), 0.5)


@check("derivative")
def poly_derivative():
    return _close(derivative(HoloMap((Poly((0, 0.5, 0.25)),)), 1.0), 1.0)


@check("sqrt_derivative")
def both_branches():
    return (_close(sqrt_derivative(HoloMap((Scale(0.25),), 1), 0.5j), 0.5)
            and _close(sqrt_derivative(HoloMap((Scale(0.25),), -1), 0.5j), -0.5))


@check("sqrt_derivative")
def constant_derivative():
    return _close(sqrt_derivative(HALF, 1j), 2 ** -0.5)


@check("taylor_coeffs")
def monomial():
    return _close(taylor_coeffs(_grid(32) ** 3, 8), np.eye(8)[3])


@check("taylor_coeffs")
def constant():
    return _close(taylor_coeffs(np.ones(16), 4), np.eye(4)[0])


@check("taylor_coeffs")
def binomial():
    z = _grid(16)
    return _close(taylor_coeffs(((1 + z) / 2) ** 2, 4), [0.25, 0.5, 0.25, 0])


@check("littlewood_paley_norm")
def constant_function():
    return _close(littlewood_paley_norm([1.0]), 1.0)


@check("littlewood_paley_norm")
def monomials():
    return all(_close(littlewood_paley_norm(np.eye(n + 1)[n]), 1.0, 1e-10) for n in (1, 5, 20))


@check("kernel")
def kernel_at_origin():
    return _close(kernel(0.3 + 0.4j, 0.0), 1.0)


@check("kernel")
def reproducing():
    rng = np.random.default_rng(0)
    a = rng.normal(size=6) + 1j * rng.normal(size=6)
    w = 0.3 - 0.5j
    return _close(np.vdot(kernel_coeffs(w, 6), a), np.polyval(a[::-1], w))


@check("normalized_kernel")
def unit_norm():
    return abs(np.linalg.norm(normalized_kernel(0.5, 64)) - 1.0) <= 1e-15


@check("build_wco")
def identity_matrix():
    return _close(build_wco(identity(), 16, 64), np.eye(64, 16))


@check("build_wco")
def diagonal():
    W = build_wco(HoloMap((Scale(0.5),)), 8, 32)
    return _close(W, np.eye(32, 8) * 0.5 ** (np.arange(8) + 0.5))


@check("build_shift_integral")
def shift_integral_values():
    s = np.linalg.svd(build_shift_integral(6), compute_uv=False)
    return _close(s, 1.0 / np.arange(1, 7))


@check("build_shift_integral")
def shift_integral_first_column():
    return _close(build_shift_integral(4)[:, 0], np.eye(5)[1])


@check("build_proof_split")
def scale_has_no_remainder():
    hmap = HoloMap((Scale(0.5),))
    T, X = build_proof_split(hmap, 8, 32)
    return _close(X, 0.0) and _close(T, build_wco(hmap, 8, 32))


@check("compose_check")
def diagonal_composition():
    return compose_check(HoloMap((Scale(0.5),)), HoloMap((Scale(0.8),)), 16) <= 1e-14


@check("compose_check")
def with_identity():
    return compose_check(_corpus.get("quadratic").map, identity(), 16) <= 1e-12


@check("adjoint_kernel_action")
def at_origin():
    p, c = adjoint_kernel_action(HoloMap((Scale(0.25),)), 0.0, 8)
    return _close(p, 0.5 * np.eye(8)[0]) and _close(c, p)


@check("adjoint_kernel_action")
def unitary_norm():
    _, c = adjoint_kernel_action(_corpus.get("mobius").map, 0.4 + 0.1j, 64)
    return abs(np.linalg.norm(c) - 1.0) <= 1e-8


@check("singular_values")
def identity_values():
    return _close(singular_values(np.eye(8)).values, 1.0)


@check("singular_values")
def shift_integral_spectrum():
    return _close(singular_values(build_shift_integral(5)).values, 1 / np.arange(1, 6))


@check("essential_norm_estimate")
def mobius_norm():
    est = essential_norm_estimate(_corpus.get("mobius").map, (16, 32, 64))
    return abs(est.estimate - 1.0) <= 1e-6


@check("fit_K")
def contraction_gives_zero():
    return fit_K(singular_values(build_wco(HoloMap((Scale(0.5),)), 16))) == 0.0


@check("fit_K")
def unitary_small():
    return fit_K(singular_values(build_wco(_corpus.get("mobius").map, 32))) <= 1e-4


@check("schwarz_pick_check")
def identity_quotient():
    q, _ = schwarz_pick_check(identity(), 200)
    return abs(q - 1.0) <= 1e-12


@check("schwarz_pick_check")
def squaring_map():
    q, _ = schwarz_pick_check(HoloMap((Poly((0, 0, 1)),), validate=False), 200)
    return q < 1.0


@check("julia_caratheodory_probe")
def identity_probe():
    return _close(julia_caratheodory_probe(identity(), [0.5, 0.9, 0.99], 1.0), 1.0)


@check("exterior_power")
def diagonal_wedge():
    return _close(exterior_power(np.diag([3.0, 2.0, 1.0]), 2), np.diag([6.0, 3.0, 2.0]))


@check("exterior_power")
def first_power_is_identity_map():
    m = np.arange(9.0).reshape(3, 3) + 1j
    return _close(exterior_power(m, 1), m)


@check("exterior_power")
def top_power_is_determinant():
    m = np.random.default_rng(1).normal(size=(4, 4))
    return _close(exterior_power(m, 4), [[np.linalg.det(m)]])


@check("lambda_norm_formula_check")
def unitary_product():
    q, _ = np.linalg.qr(np.random.default_rng(2).normal(size=(4, 4)))
    lhs, rhs = lambda_norm_formula_check(q, 3)
    return _close([lhs, rhs], [1.0, 1.0], 1e-12)


@check("lambda_norm_formula_check")
def rank_one():
    lhs, rhs = lambda_norm_formula_check(np.outer([1.0, 2.0, 3.0], [1.0, -1.0, 0.5]), 2)
    return _close([lhs, rhs], [0.0, 0.0], 1e-12)


@check("fock_norm")
def contraction_trivially_bounded():
    r = fock_norm(singular_values(build_wco(HoloMap((Scale(0.5),)), 16)))
    return r.verdict == "bounded-trivially" and r.lambda_norm_estimate == 1.0


@check("split_contraction_trace")
def explicit_split():
    A, X = split_contraction_trace(np.diag([1.5, 0.5]))
    return _close(A, np.diag([1.0, 0.5])) and _close(X, np.diag([0.5, 0.0]))


@check("split_contraction_trace")
def identity_split():
    A, X = split_contraction_trace(np.eye(3))
    return _close(A, np.eye(3)) and _close(X, 0.0)


@check("gram_matrix")
def identity_gram():
    return _close(gram_matrix(identity(), 16, 128), np.eye(16))


@check("gram_matrix")
def diagonal_gram():
    r = 0.5
    return _close(gram_matrix(HoloMap((Scale(r),)), 8, 64), np.diag(r ** (2 * np.arange(8) + 1.0)))


@check("compare_moduli")
def diagonal_moduli():
    return compare_moduli(HoloMap((Scale(0.5),)), 16) <= 1e-10


@check("top_eigenpairs")
def unitary_has_none():
    return top_eigenpairs(gram_matrix(_corpus.get("mobius").map, 32)) == []


@check("top_eigenpairs")
def diagonal_pairs():
    pairs = top_eigenpairs(gram_matrix(HoloMap((Scale(0.5),)), 8, 64), 0.0)
    return all(_close(abs(p.coeffs), np.eye(8)[k]) for k, p in enumerate(pairs))


@check("double_orthogonality")
def single_pair_normalized():
    pairs = top_eigenpairs(gram_matrix(HoloMap((Scale(0.5),)), 8, 64), 0.4)
    v, _ = double_orthogonality(pairs, HoloMap((Scale(0.5),)), 64)
    return len(pairs) == 1 and v <= 1e-10


@check("eval_eigenfunction")
def constant_eigenfunction():
    hmap = HoloMap((Scale(0.5),))
    pair = top_eigenpairs(gram_matrix(hmap, 8, 64), 0.4)[0]
    d, b = eval_eigenfunction(pair, 0.3, hmap, 256)
    return _close([d, b], [1.0, 1.0], 1e-12)


@check("count_zeros")
def cube():
    return count_zeros(np.eye(4)[3], 0.9).count == 3


@check("count_zeros")
def kernel_has_none():
    return count_zeros(normalized_kernel(0.5, 32), 0.9).count == 0


@check("count_zeros")
def two_roots():
    return count_zeros([-0.25j, -0.5 + 0.5j, 1.0], 0.9).count == 2


@check("semigroup_deformation")
def identity_deformation():
    res = semigroup_deformation(identity(), [0.8, 1.0], 32, max_index=4)
    at = [r for r in res.rows if r.t == 0.8]
    return res.ok and [r.zero_count for r in at] == list(range(5))


@check("corpus")
def corpus_counts():
    c = _corpus.corpus()
    return sum(e.contact for e in c) >= 3 and sum(not e.contact for e in c) >= 3


@check("corpus")
def contact_tags():
    return all(e.map.has_contact() == e.contact for e in _corpus.corpus())


def run_all():
    """Run every check; returns ``{name: bool}`` (exceptions count as failures)."""
    out = {}
    for name, fn in CHECKS.items():
        try:
            out[name] = bool(fn())
        except Exception:  # noqa: BLE001 - a crashing check is a failed check
            out[name] = False
    return out
