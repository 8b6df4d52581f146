"""Singular values of operator truncations and the pointwise estimates behind them."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .errors import ConfigurationError, PreconditionError, SpectrumError
from .holo import HoloMap
from .wco import build_wco

__all__ = [
    "SingularSpectrum", "EssentialNormEstimate", "singular_values", "essential_norm_estimate",
    "fit_K", "schwarz_pick_check", "julia_caratheodory_probe", "STAB_TOL",
]

STAB_TOL = 1e-6


@dataclass(frozen=True)
class SingularSpectrum:
    """Descending singular values of an ``(N_r, N_c)`` truncation.

    ``stab[k]`` is the change of the k-th value when both truncation orders
    are halved (``inf`` where the halved matrix has no k-th value); ``trusted``
    marks the values with ``stab < STAB_TOL``.
    """

    values: np.ndarray
    N_c: int
    N_r: int
    stab: np.ndarray = field(repr=False)

    @property
    def trusted(self):
        return self.stab < STAB_TOL

    @property
    def n_trusted(self):
        return int(np.count_nonzero(self.trusted))

    def __len__(self):
        return self.values.size


def _svdvals(m):
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"SVD failed for a {m.shape} matrix: {exc}") from exc


def singular_values(m) -> SingularSpectrum:
    m = np.asarray(m)
    N_r, N_c = m.shape
    s = _svdvals(m)
    stab = np.full(s.size, np.inf)
    half = _svdvals(m[:N_r // 2, :N_c // 2]) if N_c >= 2 else np.empty(0)
    stab[:half.size] = np.abs(s[:half.size] - half)
    return SingularSpectrum(s, N_c, N_r, stab)


@dataclass(frozen=True)
class EssentialNormEstimate:
    estimate: float
    profile: list
    converged: bool


def essential_norm_estimate(hmap: HoloMap, N_list=(64, 128, 256), fraction=4):
    """Extrapolate ||W_phi||_e from growing truncations.

    For each N the profile records the norm of W restricted to the tail
    columns z**n, N/fraction <= n < N (which tends to ||W||_e because
    ||W Q_n|| -> ||W||_e for the tail projections Q_n), together with the
    finite-section singular value s_{N/fraction}.  The estimate is the
    linear-in-1/N extrapolation of the last two tail norms, clipped at 0.
    """
    N_list = sorted(int(n) for n in N_list)
    if len(N_list) < 3:
        raise ConfigurationError("essential_norm_estimate needs at least three orders")
    profile = []
    for N in N_list:
        W = build_wco(hmap, N)
        k = N // fraction
        s = _svdvals(W)
        tail = _svdvals(W[:, k:])[0]
        profile.append({"N": N, "index": k, "tail_norm": float(tail), "s_index": float(s[k - 1])})
    y = np.array([p["tail_norm"] for p in profile])
    d = np.diff(y)
    converged = bool(np.all(d >= -1e-12) or np.all(d <= 1e-12))
    (n1, y1), (n2, y2) = (N_list[-2], y[-2]), (N_list[-1], y[-1])
    est = (n2 * y2 - n1 * y1) / (n2 - n1)
    return EssentialNormEstimate(float(max(est, 0.0)), profile, converged)


def fit_K(spec: SingularSpectrum, min_index=4, trusted_only=True):
    """max over indices n >= min_index (1-based) of n (s_n - 1), clamped at 0."""
    n = np.arange(1, spec.values.size + 1)
    keep = n >= min_index
    if trusted_only:
        keep &= spec.trusted
    if not np.any(keep):
        return 0.0
    return float(max(0.0, np.max(n[keep] * (spec.values[keep] - 1.0))))


def _disk_samples(n, seed=0):
    pts = qmc.Halton(d=2, scramble=True, seed=seed).random(n)
    return np.sqrt(pts[:, 0]) * np.exp(2j * np.pi * pts[:, 1])


def schwarz_pick_check(hmap: HoloMap, n_samples=1000, seed=0):
    """Max of |phi'(z)| log|z| / log|phi(z)| over quasi-random disk samples.

    Returns ``(max_quotient, skipped)`` where ``skipped`` counts samples
    where the quotient is undefined (z or phi(z) at 0, or |phi(z)| = 1).
    """
    if not hmap.fixes_origin(1e-12):
        raise PreconditionError("Schwarz-Pick quotient is stated for maps with phi(0) = 0")
    z = _disk_samples(n_samples, seed)
    f, f1, _ = hmap.jet(z)
    af = np.abs(f)
    ok = (np.abs(z) > 1e-8) & (af > 1e-12) & (af < 1.0)
    q = np.abs(f1[ok]) * np.log(np.abs(z[ok])) / np.log(af[ok])
    return float(np.max(q)) if q.size else float("nan"), int(np.count_nonzero(~ok))


def julia_caratheodory_probe(hmap: HoloMap, radii, direction=None):
    """|phi'(w)| (1 - |w|^2) / (1 - |phi(w)|^2) along w = r * direction.

    ``direction`` defaults to the boundary point where |phi| is largest.
    The quotient equals ||W_phi^* k_w||^2 and tends to 1 toward a contact
    point; without contact it stays bounded below 1.
    """
    if direction is None:
        if not hmap.has_contact():
            warnings.warn("map has no boundary contact; quotient will not tend to 1",
                          stacklevel=2)
        direction = hmap.contact_point()
    zeta = complex(direction) / abs(direction)
    r = np.asarray(radii, dtype=float)
    f, f1, _ = hmap.jet(r * zeta)
    return np.abs(f1) * (1.0 - r) * (1.0 + r) / (1.0 - np.abs(f) ** 2)
