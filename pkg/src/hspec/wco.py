"""Matrix truncations of weighted composition operators.

``W_phi f = sqrt(phi') * (f o phi)`` is represented in the monomial basis by
an ``(N_r, N_c)`` array whose column ``n`` holds the first ``N_r`` Taylor
coefficients of ``sqrt(phi') * phi**n``.  Rows are kept longer than columns
(``N_r = 4 N_c`` by default) because each column has an infinite Taylor tail.
"""
from __future__ import annotations

import numpy as np

from .errors import ConfigurationError, DomainError, PreconditionError
from .holo import (BoundaryGrid, HoloMap, compose_maps, default_quadrature_order,
                   normalized_kernel, taylor_coeffs)

__all__ = [
    "build_wco", "build_shift_integral", "apply_shift_integral", "build_proof_split",
    "compose_check", "adjoint_kernel_action", "boundary_gram", "psi_sup",
]


def _orders(N_c, N_r, M):
    if N_r is None:
        N_r = 4 * N_c
    if N_r < N_c:
        raise ConfigurationError(f"row truncation N_r={N_r} must be >= N_c={N_c}")
    if M is None:
        M = default_quadrature_order(N_r)
    return N_c, N_r, M


def _powers(phi, n):
    """Columns phi**k for k < n, shape (len(phi), n)."""
    out = np.empty((phi.size, n), dtype=complex)
    out[:, 0] = 1.0
    if n > 1:
        out[:, 1:] = phi[:, None]
        np.cumprod(out[:, 1:], axis=1, out=out[:, 1:])
    return out


def build_wco(hmap: HoloMap, N_c, N_r=None, M=None):
    """Truncation of W_phi: column n = Taylor coefficients of sqrt(phi') phi**n."""
    N_c, N_r, M = _orders(N_c, N_r, M)
    g = BoundaryGrid.of(hmap, M)
    return taylor_coeffs(g.sqrt_dphi[:, None] * _powers(g.phi, N_c), N_r)


def build_shift_integral(N, N_r=None):
    """The operator z**n -> z**(n+1) / (n+1) on span{1, ..., z**(N-1)}.

    With the default ``N_r = N + 1`` every column survives and the singular
    values are exactly 1, 1/2, ..., 1/N.
    """
    if N < 1:
        raise ConfigurationError("N must be >= 1")
    N_r = N + 1 if N_r is None else N_r
    A = np.zeros((N_r, N))
    k = np.arange(min(N, N_r - 1))
    A[k + 1, k] = 1.0 / (k + 1)
    return A


def apply_shift_integral(c):
    """Apply z**n -> z**(n+1)/(n+1) to coefficient columns, keeping the row count."""
    c = np.asarray(c)
    out = np.zeros_like(c)
    n = c.shape[0]
    scale = 1.0 / np.arange(1, n)
    out[1:] = c[:-1] * scale.reshape((-1,) + (1,) * (c.ndim - 1))
    return out


def build_proof_split(hmap: HoloMap, N_c, N_r=None, M=None):
    """Split W_phi = T + X used to bound its singular values.

    T f = sqrt(phi'(0)) f(0) + A[(phi')^{3/2} (f' o phi)] and
    X f = A[psi (f o phi)] with psi = (sqrt(phi'))' and A the shift-integral.
    Requires phi(0) = 0.
    """
    if not hmap.fixes_origin(1e-12):
        raise PreconditionError("proof split requires phi(0) = 0; see holo.fix_origin")
    N_c, N_r, M = _orders(N_c, N_r, M)
    g = BoundaryGrid.of(hmap, M)
    pw = _powers(g.phi, N_c)
    n = np.arange(N_c)
    # f = z**n: f' o phi = n phi**(n-1)
    dcol = np.zeros_like(pw)
    dcol[:, 1:] = pw[:, :-1] * n[1:]
    T = apply_shift_integral(taylor_coeffs(g.sqrt_dphi[:, None] ** 3 * dcol, N_r))
    T[0, 0] += complex(hmap.sqrt_derivative(0.0))
    X = apply_shift_integral(taylor_coeffs(g.psi[:, None] * pw, N_r))
    return T, X


def psi_sup(hmap: HoloMap, M=4096):
    """sup norm of psi = (sqrt(phi'))' over the disk (attained on the circle)."""
    return float(np.max(np.abs(BoundaryGrid.of(hmap, M).psi)))


def compose_check(map1: HoloMap, map2: HoloMap, N, N_r=None):
    """Discrepancy ||W_1 W_2 - W_{map2 o map1}|| on the leading N/2 columns.

    W_1 acts on the N_r rows of W_2, and the comparison is made on the first
    N rows, where both truncations are accurate.
    """
    N_r = 4 * N if N_r is None else N_r
    W2 = build_wco(map2, N, N_r)
    W1 = build_wco(map1, N_r, N_r)
    W12 = build_wco(compose_maps(map1, map2), N, N_r)
    prod = W1 @ W2
    k = max(N // 2, 1)
    return float(np.linalg.norm(prod[:N, :k] - W12[:N, :k], 2))


def adjoint_kernel_action(hmap: HoloMap, w, N, N_r=None):
    """Closed form and matrix computation of W_phi^* k_w, both truncated at N.

    Closed form: conj(sqrt(phi')(w)) ((1 - |w|^2)/(1 - |phi(w)|^2))^{1/2} k_{phi(w)}.
    """
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError("kernel point must lie in the open disk")
    N_r = 4 * N if N_r is None else N_r
    pw = complex(hmap(w))
    factor = np.conj(complex(hmap.sqrt_derivative(w))) * np.sqrt(
        (1.0 - abs(w) ** 2) / (1.0 - abs(pw) ** 2))
    predicted = factor * normalized_kernel(pw, N)
    W = build_wco(hmap, N, N_r)
    computed = W.conj().T @ normalized_kernel(w, N_r)
    return predicted, computed


def boundary_gram(hmap: HoloMap, N, M=None):
    """(1/2 pi) int phi**n conj(phi**m) |phi'| d theta by the trapezoidal rule."""
    M = default_quadrature_order(N) if M is None else M
    g = BoundaryGrid.of(hmap, M)
    pw = _powers(g.phi, N)
    return (pw.conj().T * np.abs(g.dphi)) @ pw / M
