"""Holomorphic self-maps of the unit disk and basic Hardy-space tools.

A :class:`HoloMap` is a composition chain of three primitive maps

* ``Scale(r)``         z -> r z
* ``Mobius(a, theta)``  z -> exp(i theta) (z - a) / (1 - conj(a) z)
* ``Poly(coeffs)``      z -> sum_k coeffs[k] z**k

applied left to right (the first step acts first).  The Möbius convention is
chosen so that ``Mobius(0, 0)`` is the identity and ``Mobius(a, 0)`` sends
``a`` to ``0`` with positive derivative ``1/(1 - |a|^2)`` there; at the origin
its derivative is ``1 - |a|^2``.

All Hardy-space norms use normalized arclength ``d theta / 2 pi`` on the
circle, so the monomials ``z**n`` are orthonormal and the H^2 norm of a
coefficient vector is its Euclidean norm.
"""
from __future__ import annotations

import cmath
import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import roots_legendre

from .errors import BranchError, ConfigurationError, DomainError, PreconditionError

EPS_VAL = 1e-12
BRANCH_TOL = 1e-14
_MAX_TRACK_STEPS = 2 ** 16

__all__ = [
    "EPS_VAL", "Scale", "Mobius", "Poly", "HoloMap", "BoundaryGrid",
    "identity", "compose_maps", "fix_origin", "deform",
    "eval_map", "derivative", "sqrt_derivative", "taylor_coeffs",
    "default_quadrature_order", "littlewood_paley_norm",
    "kernel", "kernel_coeffs", "normalized_kernel", "poly_eval",
]


# --------------------------------------------------------------------------
# primitives
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Scale:
    r: float

    def __post_init__(self):
        if not 0.0 < self.r <= 1.0:
            raise ValueError(f"Scale factor must lie in (0, 1], got {self.r}")

    def jet(self, z):
        """Return (f, f', f'') at z."""
        return self.r * z, np.full_like(z, self.r), np.zeros_like(z)

    def to_json(self):
        return {"scale": float(self.r)}


@dataclass(frozen=True)
class Mobius:
    a: complex = 0j
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if abs(self.a) >= 1.0:
            raise ValueError(f"Mobius parameter must satisfy |a| < 1, got {self.a}")

    def jet(self, z):
        a, ac = self.a, self.a.conjugate()
        u = cmath.exp(1j * self.theta)
        s = 1.0 - abs(a) ** 2
        den = 1.0 - ac * z
        f = u * (z - a) / den
        f1 = u * s / den ** 2
        f2 = 2.0 * ac * u * s / den ** 3
        return f, f1, f2

    def to_json(self):
        return {"mobius": {"a_re": self.a.real, "a_im": self.a.imag, "theta": float(self.theta)}}


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        if not c:
            raise ValueError("Poly needs at least one coefficient")
        object.__setattr__(self, "coeffs", c)

    def jet(self, z):
        c = np.asarray(self.coeffs)
        c1 = P.polyder(c)
        c2 = P.polyder(c1)
        return P.polyval(z, c), P.polyval(z, c1), P.polyval(z, c2)

    def to_json(self):
        return {"poly": [[c.real, c.imag] for c in self.coeffs]}


def _step_from_json(obj):
    if "scale" in obj:
        return Scale(float(obj["scale"]))
    if "mobius" in obj:
        m = obj["mobius"]
        return Mobius(complex(m.get("a_re", 0.0), m.get("a_im", 0.0)), float(m.get("theta", 0.0)))
    if "poly" in obj:
        return Poly(tuple(complex(re, im) for re, im in obj["poly"]))
    raise ValueError(f"unknown map primitive {obj!r}")


# --------------------------------------------------------------------------
# maps
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HoloMap:
    """A univalent self-map of the disk with a chosen branch of sqrt(phi').

    ``branch`` selects ``branch * principal_sqrt(phi'(0))`` as the value of the
    square root at the origin; elsewhere the root is continued along radii.

    Construction runs a boundary screen: ``|phi| <= 1 + EPS_VAL`` and
    ``phi' != 0`` on a 1024-point grid are enforced, injectivity is only
    screened (a warning is issued when the boundary image does not wind
    exactly once around ``phi(0)``).  Pass ``validate=False`` to skip it,
    e.g. for non-univalent formula tests.
    """

    steps: tuple
    branch: int = 1
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        if self.validate:
            self.check()

    # evaluation ---------------------------------------------------------

    def _points(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1.0 + EPS_VAL):
            raise DomainError("evaluation point outside the closed unit disk")
        return z

    def jet(self, z):
        """Return (phi, phi', phi'') at z by the chain rule over the steps."""
        v = self._points(z)
        d1 = np.ones_like(v)
        d2 = np.zeros_like(v)
        for step in self.steps:
            f, f1, f2 = step.jet(v)
            d2 = f2 * d1 ** 2 + f1 * d2
            d1 = f1 * d1
            v = f
        return v, d1, d2

    def __call__(self, z):
        return self.jet(z)[0]

    def derivative(self, z):
        return self.jet(z)[1]

    def second_derivative(self, z):
        return self.jet(z)[2]

    def sqrt_derivative(self, z):
        """(phi')^{1/2} continued along the segment [0, z] from the anchor at 0."""
        z = self._points(z)
        d0 = complex(self.derivative(0.0))
        if abs(d0) < BRANCH_TOL:
            raise BranchError("phi'(0) vanishes; no square root branch")
        anchor = self.branch * cmath.sqrt(d0)
        flat = z.reshape(-1)
        n = 16
        while True:
            t = np.linspace(0.0, 1.0, n + 1)
            d = self.derivative(np.multiply.outer(t, flat))
            if np.any(np.abs(d) < BRANCH_TOL):
                raise BranchError("phi' vanishes on a tracking path")
            inc = np.angle(d[1:] / d[:-1])
            if inc.size == 0 or np.max(np.abs(inc)) < np.pi / 4:
                break
            n *= 2
            if n > _MAX_TRACK_STEPS:
                raise BranchError("argument of phi' could not be tracked")
        total = inc.sum(axis=0)
        out = anchor * np.sqrt(np.abs(d[-1]) / abs(d0)) * np.exp(0.5j * total)
        return out.reshape(z.shape)

    def psi(self, z):
        """Derivative of sqrt(phi'), i.e. phi'' / (2 sqrt(phi'))."""
        return self.second_derivative(z) / (2.0 * self.sqrt_derivative(z))

    # structure ------------------------------------------------------------

    def then(self, other: "HoloMap") -> "HoloMap":
        """The map ``other o self`` with the compatible square-root branch."""
        return compose_maps(self, other)

    def fixes_origin(self, tol=1e-12):
        return abs(complex(self(0.0))) <= tol

    def has_contact(self, M=4096, tol=1e-10):
        """True when the image boundary touches the unit circle."""
        theta = 2 * np.pi * np.arange(M) / M
        return bool(np.max(np.abs(self(np.exp(1j * theta)))) >= 1.0 - tol)

    def contact_point(self, M=4096):
        """Boundary point where |phi| is largest."""
        theta = 2 * np.pi * np.arange(M) / M
        z = np.exp(1j * theta)
        return complex(z[np.argmax(np.abs(self(z)))])

    def check(self, M=1024):
        z = np.exp(2j * np.pi * np.arange(M) / M)
        f, f1, _ = self.jet(z)
        if np.max(np.abs(f)) > 1.0 + EPS_VAL:
            raise PreconditionError(
                f"map leaves the closed disk: max |phi| = {np.max(np.abs(f)):.16g}")
        if np.min(np.abs(f1)) <= 0.0 or not np.all(np.isfinite(f1)):
            raise BranchError("phi' vanishes on the boundary grid")
        # injectivity screen: the boundary curve must wind once around phi(0)
        w = f - complex(self(0.0))
        if np.min(np.abs(w)) > 0:
            turns = np.sum(np.angle(np.roll(w, -1) / w)) / (2 * np.pi)
            if round(turns) != 1:
                warnings.warn(f"map is not univalent (boundary winds {turns:.3f} times)",
                              stacklevel=3)

    def to_json(self):
        return {"compose": [s.to_json() for s in self.steps], "branch": self.branch}

    @classmethod
    def from_json(cls, obj, validate=True):
        if isinstance(obj, str):
            obj = json.loads(obj)
        branch = int(obj.get("branch", 1))
        return cls(tuple(_step_from_json(s) for s in obj["compose"]), branch, validate=validate)


def identity():
    return HoloMap((Mobius(0j, 0.0),))


def compose_maps(first: HoloMap, second: HoloMap) -> HoloMap:
    """Return ``second o first`` with square roots chosen compatibly.

    The branch is fixed so that sqrt((second o first)')(0) equals
    sqrt(first')(0) * sqrt(second')(first(0)), which makes
    ``W_first @ W_second == W_{second o first}``.
    """
    target = complex(first.sqrt_derivative(0.0)) * complex(second.sqrt_derivative(first(0.0)))
    trial = HoloMap(first.steps + second.steps, 1)
    s = complex(trial.sqrt_derivative(0.0))
    branch = 1 if abs(s - target) <= abs(s + target) else -1
    return HoloMap(trial.steps, branch, validate=False)


def fix_origin(hmap: HoloMap) -> HoloMap:
    """Follow ``hmap`` by the disk automorphism sending phi(0) to 0."""
    a = complex(hmap(0.0))
    if abs(a) <= 1e-15:
        return hmap
    return compose_maps(hmap, HoloMap((Mobius(a, 0.0),)))


def deform(hmap: HoloMap, t: float) -> HoloMap:
    """The map z -> phi(t z), with sqrt derivative t^{1/2} sqrt(phi')(t z)."""
    if t == 1.0:
        return hmap
    return HoloMap((Scale(t),) + hmap.steps, hmap.branch, validate=False)


def eval_map(hmap: HoloMap, z):
    return hmap(z)


def derivative(hmap: HoloMap, z):
    return hmap.derivative(z)


def sqrt_derivative(hmap: HoloMap, z):
    return hmap.sqrt_derivative(z)


# --------------------------------------------------------------------------
# boundary sampling and coefficient extraction
# --------------------------------------------------------------------------

def default_quadrature_order(n):
    """max(1024, 8 n) rounded up to a power of two."""
    m = max(1024, 8 * int(n))
    return 1 << (m - 1).bit_length()


@dataclass(frozen=True)
class BoundaryGrid:
    """Samples of phi, phi', sqrt(phi'), phi'' at the M-th roots of unity."""

    M: int
    z: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    sqrt_dphi: np.ndarray
    ddphi: np.ndarray

    @classmethod
    def of(cls, hmap: HoloMap, M: int):
        if M < 4 or M & (M - 1):
            raise ConfigurationError(f"grid size must be a power of two >= 4, got {M}")
        z = np.exp(2j * np.pi * np.arange(M) / M)
        f, f1, f2 = hmap.jet(z)
        return cls(M, z, f, f1, hmap.sqrt_derivative(z), f2)

    @property
    def theta(self):
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def psi(self):
        return self.ddphi / (2.0 * self.sqrt_dphi)


def taylor_coeffs(samples, N):
    """First N Taylor coefficients from samples at the M-th roots of unity.

    ``samples`` may be 2-D; coefficients are extracted along axis 0.
    """
    samples = np.asarray(samples, dtype=complex)
    M = samples.shape[0]
    if M < 4 * N:
        raise ConfigurationError(f"need M >= 4N for coefficient extraction (M={M}, N={N})")
    return np.fft.fft(samples, axis=0)[:N] / M


def poly_eval(coeffs, z):
    """Evaluate sum_n coeffs[n] z**n."""
    return P.polyval(np.asarray(z, dtype=complex), np.asarray(coeffs, dtype=complex))


def _radial_rule(nodes, panels=40):
    # Gauss-Legendre on dyadic panels [2^-(k+1), 2^-k] plus [0, 2^-panels]
    x, w = roots_legendre(nodes)
    edges = np.concatenate([0.5 ** np.arange(panels + 1), [0.0]])
    r, wr = [], []
    for hi, lo in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        r.append(lo + half * (x + 1.0))
        wr.append(half * w)
    return np.concatenate(r), np.concatenate(wr)


def littlewood_paley_norm(f, radial_nodes=32):
    """Squared H^2 norm of a polynomial from the Littlewood-Paley area formula.

    Computes |f(0)|^2 + int_D |f'|^2 log(1/|z|^2) dA/pi.  The angular mean of
    |f'|^2 is exact by FFT; the radial integral uses ``radial_nodes``
    Gauss-Legendre points on each of a sequence of dyadic panels of (0, 1).
    """
    a = np.asarray(f, dtype=complex)
    b = P.polyder(a) if a.size > 1 else np.zeros(1, complex)
    L = 1 << max(2, int(b.size).bit_length() + 1)
    r, w = _radial_rule(radial_nodes)
    scaled = b[None, :] * r[:, None] ** np.arange(b.size)[None, :]
    vals = np.fft.ifft(scaled, n=L, axis=1) * L
    mean_sq = np.mean(np.abs(vals) ** 2, axis=1)
    area = np.sum(w * (-4.0 * r * np.log(r)) * mean_sq)
    return float(abs(a[0]) ** 2 + area)


# --------------------------------------------------------------------------
# reproducing kernel
# --------------------------------------------------------------------------

def _check_interior(w):
    if abs(w) >= 1.0:
        raise DomainError(f"kernel point must satisfy |w| < 1, got |w| = {abs(w)}")


def kernel(z, w):
    """Szegő kernel of the disk, 1 / (1 - z conj(w))."""
    _check_interior(w)
    return 1.0 / (1.0 - np.asarray(z) * np.conj(w))


def kernel_coeffs(w, N):
    """Taylor coefficients conj(w)**n of kernel(., w)."""
    _check_interior(w)
    return np.conj(complex(w)) ** np.arange(N)


def normalized_kernel(w, N):
    """Coefficients of k_w = (1 - |w|^2)^{1/2} / (1 - conj(w) z), truncated at N."""
    return np.sqrt(1.0 - abs(w) ** 2) * kernel_coeffs(w, N)
