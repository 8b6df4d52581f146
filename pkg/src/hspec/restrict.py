"""The restriction operator H^2(D) -> H^2(phi(D)) and its eigenfunctions.

Under the shared measure convention (arclength / 2 pi on every boundary)
the compression of R^* R to polynomials of degree < N is the Gram matrix

    G[m, n] = (1 / 2 pi) int phi**n conj(phi**m) |phi'| d theta,

which coincides with W_phi^* W_phi.  Eigenvalues of G above 1 are isolated
points of the spectrum when the image boundary touches the unit circle;
below 1 the discretization fills in the essential spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, NearSingularError, QuadratureError, ZeroCountError
from .holo import BoundaryGrid, HoloMap, deform, default_quadrature_order, poly_eval
from .spectra import STAB_TOL, singular_values
from .wco import _powers, build_wco

__all__ = [
    "EigenPair", "ZeroCount", "DeformationRow", "DeformationResult",
    "gram_matrix", "compare_moduli", "top_eigenpairs", "double_orthogonality",
    "eval_eigenfunction", "count_zeros", "eigen_zero_rows", "semigroup_deformation",
    "DEFAULT_THRESHOLD", "STAB_TOL",
]

DEFAULT_THRESHOLD = 1.0 + 1e-3
GAP_TOL = 1e-10


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue ``lam`` of R^*R with H^2-normalized eigenfunction ``coeffs``."""

    lam: float
    coeffs: np.ndarray = field(repr=False)
    index: int = 0
    trusted: bool = False
    stab: float = np.inf
    residual: float = 0.0
    degenerate: bool = False

    def __call__(self, z):
        return poly_eval(self.coeffs, z)

    def to_json(self):
        return {"lambda": float(self.lam),
                "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        c = np.array([complex(re, im) for re, im in obj["coeffs"]])
        return cls(float(obj["lambda"]), c)


@dataclass(frozen=True)
class ZeroCount:
    count: int
    radius: float
    winding_residual: float


def gram_matrix(hmap: HoloMap, N, M=None):
    """Compression of R^*R to span{1, ..., z**(N-1)} by the trapezoidal rule."""
    M = default_quadrature_order(N) if M is None else M
    if M < 8 * N:
        raise ConfigurationError(f"Gram quadrature needs M >= 8N (M={M}, N={N})")
    g = BoundaryGrid.of(hmap, M)
    pw = _powers(g.phi, N)
    G = (pw.conj().T * (np.abs(g.dphi) / M)) @ pw
    herm = np.max(np.abs(G - G.conj().T)) if N else 0.0
    if herm > 1e-10:
        raise QuadratureError(f"Gram matrix not Hermitian (defect {herm:.2e})")
    return 0.5 * (G + G.conj().T)


def compare_moduli(hmap: HoloMap, N, M=None, top=10, trusted_only=True):
    """Largest relative mismatch between eigenvalues of G and squared s_k(W).

    W is built with ``N_r = 4 N``; only the ``top`` leading indices are
    compared, and with ``trusted_only`` only those whose singular value is
    stable under halving the truncation.
    """
    spec = singular_values(build_wco(hmap, N))
    lam = np.linalg.eigvalsh(gram_matrix(hmap, N, M))[::-1]
    k = np.arange(min(top, N))
    if trusted_only:
        k = k[spec.trusted[k]]
    if k.size == 0:
        return 0.0
    s2 = spec.values[k] ** 2
    return float(np.max(np.abs(lam[k] - s2) / s2))


def _phase_fix(v):
    j = np.argmax(np.abs(v))
    return v * (abs(v[j]) / v[j])


def top_eigenpairs(G, threshold=DEFAULT_THRESHOLD, stab_tol=STAB_TOL):
    """Eigenpairs of the Gram matrix with eigenvalue above ``threshold``.

    Each pair is compared against the eigendecomposition of the leading
    ``N/2`` block; it is trusted when both the eigenvalue and the
    eigenfunction (up to phase) agree to ``stab_tol`` relative accuracy.
    """
    G = np.asarray(G)
    N = G.shape[0]
    lam, vec = np.linalg.eigh(G)
    lam, vec = lam[::-1], vec[:, ::-1]
    h = N // 2
    lam_h, vec_h = np.linalg.eigh(G[:h, :h])
    lam_h, vec_h = lam_h[::-1], vec_h[:, ::-1]
    pairs = []
    for n in np.nonzero(lam > threshold)[0]:
        v = _phase_fix(vec[:, n])
        gaps = np.abs(np.delete(lam, n) - lam[n])
        degenerate = bool(gaps.size and gaps.min() < GAP_TOL)
        if n < h:
            d_lam = abs(lam[n] - lam_h[n]) / max(1.0, abs(lam[n]))
            d_vec = 1.0 - abs(np.vdot(vec_h[:, n], vec[:h, n]))
            stab = max(d_lam, d_vec)
        else:
            stab = np.inf
        resid = float(np.linalg.norm(G @ v - lam[n] * v))
        pairs.append(EigenPair(float(lam[n]), v, int(n), bool(stab < stab_tol and not degenerate),
                               float(stab), resid, degenerate))
    return pairs


def _boundary_values(pairs, grid):
    C = np.column_stack([p.coeffs for p in pairs])
    return _powers(grid.phi, C.shape[0]) @ C, C


def double_orthogonality(pairs, hmap: HoloMap, M=None):
    """Deviations of the eigenfunctions from orthonormality in H^2(D) and
    from lambda-weighted orthogonality in H^2(phi(D)).

    Both residuals are relative: entries are compared after dividing by
    sqrt(lambda_n lambda_k) for the image-domain inner product.
    """
    if not pairs:
        return 0.0, 0.0
    N = max(p.coeffs.size for p in pairs)
    M = default_quadrature_order(N) if M is None else M
    grid = BoundaryGrid.of(hmap, M)
    F, C = _boundary_values(pairs, grid)
    V = C.conj().T @ C
    res_v = float(np.max(np.abs(V - np.eye(len(pairs)))))
    U = (F.conj().T * (np.abs(grid.dphi) / M)) @ F
    lam = np.array([p.lam for p in pairs])
    scale = np.sqrt(np.outer(lam, lam))
    res_u = float(np.max(np.abs(U - np.diag(lam)) / scale))
    return res_v, res_u


def eval_eigenfunction(pair: EigenPair, z, hmap: HoloMap, M=None):
    """Evaluate an eigenfunction directly and through its integral equation.

    The second value is (1/lam) (1/2 pi) int_{dU} f(w) / (1 - z conj(w)) |dw|,
    discretized on the image of M equispaced boundary nodes.
    """
    M = default_quadrature_order(pair.coeffs.size) if M is None else M
    z = complex(z)
    grid = BoundaryGrid.of(hmap, M)
    spacing = np.max(np.abs(np.diff(np.append(grid.phi, grid.phi[0]))))
    if np.min(np.abs(grid.phi - z)) < spacing:
        raise NearSingularError("evaluation point within node spacing of the image boundary")
    fw = poly_eval(pair.coeffs, grid.phi)
    boot = np.sum(fw * np.abs(grid.dphi) / (1.0 - z * np.conj(grid.phi))) / (M * pair.lam)
    return complex(poly_eval(pair.coeffs, z)), complex(boot)


def _winding(c, radius, M):
    n = np.arange(c.size)
    scaled = c * radius ** n
    f = np.fft.ifft(scaled, n=M) * M
    zf = np.fft.ifft(n * scaled, n=M) * M
    with np.errstate(divide="ignore", invalid="ignore"):
        return f, np.mean(zf / f)


def count_zeros(f, radius, retries=5, min_modulus=1e-8):
    """Number of zeros of the polynomial ``f`` inside |z| < radius.

    Evaluates (1 / 2 pi i) of the contour integral of f'/f with the
    trapezoidal rule, doubling the node count until the value is within 0.1
    of an integer and settled.  If |f| gets below ``min_modulus`` on the
    circle the radius is nudged inward, at most ``retries`` times.
    """
    c = np.asarray(f, dtype=complex)
    if not 0.0 < radius < 1.0 + 1e-12:
        raise ConfigurationError("radius must lie in (0, 1)")
    for attempt in range(retries + 1):
        rho = radius * (1.0 - 1e-4 * attempt)
        M = 1 << max(8, (2 * c.size).bit_length())
        prev = None
        while M <= 1 << 21:
            vals, w = _winding(c, rho, M)
            if np.min(np.abs(vals)) < min_modulus:
                break
            resid = abs(w.real - round(w.real))
            if prev is not None and abs(w - prev) < 1e-6 and resid < 0.1:
                return ZeroCount(int(round(w.real)), rho, float(resid))
            prev, M = w, 2 * M
        else:
            raise ZeroCountError(f"argument principle did not settle at radius {rho}")
    raise ZeroCountError(f"f nearly vanishes on |z| = {radius} after {retries} retries")


@dataclass(frozen=True)
class DeformationRow:
    t: float
    n: int
    s_n: float
    lambda_n: float
    zero_count: int | None
    trusted: bool


@dataclass
class DeformationResult:
    rows: list
    spectra: dict
    pairs: dict
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def eigen_zero_rows(hmap: HoloMap, N, M=None, floor=DEFAULT_THRESHOLD,
                    radius=1.0 - 1e-3, max_index=None, t=1.0):
    """Spectrum, eigenpairs above ``floor`` and zero counts of trusted eigenfunctions.

    Returns ``(spectrum, pairs, rows)`` with one :class:`DeformationRow` per pair.
    """
    M = default_quadrature_order(N) if M is None else M
    spec = singular_values(build_wco(hmap, N))
    pairs = top_eigenpairs(gram_matrix(hmap, N, M), floor)
    if max_index is not None:
        pairs = [p for p in pairs if p.index <= max_index]
    rows = []
    for p in pairs:
        zc = count_zeros(p.coeffs, radius).count if p.trusted else None
        rows.append(DeformationRow(float(t), p.index, float(spec.values[p.index]), p.lam, zc,
                                   p.trusted))
    return spec, pairs, rows


def semigroup_deformation(hmap: HoloMap, t_grid, N, M=None, threshold=DEFAULT_THRESHOLD,
                          compact_floor=1e-6, radius=1.0 - 1e-3, max_index=None):
    """Follow spectra and eigenfunctions along phi_t(z) = phi(t z).

    For t < 1 the eigenpairs with eigenvalue above ``compact_floor`` are
    examined (the image is compactly contained in the disk); at t = 1 only
    those above ``threshold``.  ``checks`` records

    * ``monotone``: trusted s_n non-decreasing in t (to 1e-8),
    * ``compact_exact``: trusted n-th eigenfunction has exactly n zeros, t < 1,
    * ``contact_bounded``: trusted n-th eigenfunction has at most n zeros, t = 1.
    """
    t_grid = [float(t) for t in t_grid]
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])) or t_grid[-1] != 1.0 or t_grid[0] <= 0:
        raise ConfigurationError("t_grid must be increasing in (0, 1] and end at 1")
    rows, spectra, allpairs = [], {}, {}
    checks = {"monotone": True, "compact_exact": True, "contact_bounded": True}
    for t in t_grid:
        floor = threshold if t == 1.0 else compact_floor
        spec, pairs, trows = eigen_zero_rows(deform(hmap, t), N, M, floor, radius, max_index, t)
        spectra[t], allpairs[t] = spec, pairs
        rows.extend(trows)
        for r in trows:
            if not r.trusted:
                continue
            if t < 1.0 and r.zero_count != r.n:
                checks["compact_exact"] = False
            if t == 1.0 and r.zero_count > r.n:
                checks["contact_bounded"] = False
    for a, b in zip(t_grid, t_grid[1:]):
        sa, sb = spectra[a], spectra[b]
        k = np.nonzero(sa.trusted & sb.trusted)[0]
        if np.any(sa.values[k] > sb.values[k] + 1e-8):
            checks["monotone"] = False
    return DeformationResult(rows, spectra, allpairs, checks)
