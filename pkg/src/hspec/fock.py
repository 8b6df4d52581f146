"""Exterior powers and norms of second-quantized operators.

Explicit exterior powers are only formed for small matrices (at most 8 rows
and columns); for large truncations the norm of Lambda^n(T) is taken from
the product of the n largest singular values.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from .errors import PreconditionError, SizeError
from .spectra import SingularSpectrum

__all__ = [
    "FockReport", "exterior_power", "wedge_basis", "lambda_norm_formula_check",
    "fock_norm", "split_contraction_trace", "modulus", "MAX_EXTERIOR_DIM",
]

MAX_EXTERIOR_DIM = 8
CONVERGED_RTOL = 1e-8


def wedge_basis(dim, n):
    """Increasing index tuples labelling e_{i1} ^ ... ^ e_{in}."""
    return list(combinations(range(dim), n))


def exterior_power(m, n):
    """Matrix of Lambda^n(m) in the basis of increasing index tuples.

    Entry (I, J) is the determinant of the minor of ``m`` with rows I and
    columns J.  ``n = 0`` gives the 1x1 identity.
    """
    m = np.asarray(m)
    rows, cols = m.shape
    if max(rows, cols) > MAX_EXTERIOR_DIM:
        raise SizeError(f"exterior powers limited to {MAX_EXTERIOR_DIM} dimensions, got {m.shape}")
    if n < 0:
        raise ValueError("exterior degree must be non-negative")
    R, C = wedge_basis(rows, n), wedge_basis(cols, n)
    if n == 0:
        return np.ones((1, 1), dtype=m.dtype)
    if not R or not C:
        return np.zeros((len(R), len(C)), dtype=m.dtype)
    ri = np.array(R)
    ci = np.array(C)
    minors = m[ri[:, None, :, None], ci[None, :, None, :]]
    return np.linalg.det(minors)


def lambda_norm_formula_check(m, n):
    """(||Lambda^n(m)||, product of the n largest singular values of m)."""
    m = np.asarray(m)
    L = exterior_power(m, n)
    lhs = float(np.linalg.norm(L, 2)) if L.size else 0.0
    s = np.linalg.svd(m, compute_uv=False)
    rhs = float(np.prod(s[:n])) if n <= s.size else 0.0
    return lhs, rhs


@dataclass(frozen=True)
class FockReport:
    partial_products: list
    verdict: str
    lambda_norm_estimate: float

    def to_json(self):
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


def fock_norm(spec: SingularSpectrum, trusted_only=True) -> FockReport:
    """Partial products prod_{n <= N} max(1, s_n) over the trusted values.

    ``bounded-trivially`` when no value exceeds 1, ``bounded-converged`` when
    the last two partial products agree to a relative 1e-8, otherwise
    ``unconverged``.  The last partial product is the norm estimate.
    """
    s = spec.values[spec.trusted] if trusted_only else spec.values
    partial = np.cumprod(np.maximum(1.0, s)) if s.size else np.ones(1)
    if not np.any(s > 1.0):
        verdict = "bounded-trivially"
    elif partial.size >= 2 and abs(partial[-1] - partial[-2]) <= CONVERGED_RTOL * partial[-1]:
        verdict = "bounded-converged"
    else:
        verdict = "unconverged"
    return FockReport([float(p) for p in partial], verdict, float(partial[-1]))


def modulus(m):
    """|m| = (m^* m)^{1/2}, built from the SVD."""
    _, s, vh = np.linalg.svd(np.asarray(m), full_matrices=False)
    return (vh.conj().T * s) @ vh


def split_contraction_trace(m, tol=1e-10):
    """Split a positive matrix T into A + X with ||A|| <= 1 and X >= 0.

    A = T P + (1 - P), X = (T - 1)(1 - P), where P is the spectral
    projection of T onto [0, 1].
    """
    m = np.asarray(m)
    if m.shape[0] != m.shape[1] or np.max(np.abs(m - m.conj().T), initial=0.0) > tol:
        raise PreconditionError("split_contraction_trace needs a Hermitian matrix")
    lam, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    a = np.minimum(lam, 1.0)
    x = np.maximum(lam - 1.0, 0.0)
    A = (v * a) @ v.conj().T
    X = (v * x) @ v.conj().T
    return A, X
