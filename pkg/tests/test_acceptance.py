"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a single PASS/FAIL line through the ``verdict`` fixture;
the lines are repeated in the pytest terminal summary.
"""
import numpy as np

from hspec import corpus as C
from hspec.fock import exterior_power, fock_norm, lambda_norm_formula_check, modulus, \
    split_contraction_trace
from hspec.holo import HoloMap, Scale, deform, identity, littlewood_paley_norm
from hspec.restrict import (DEFAULT_THRESHOLD, compare_moduli, count_zeros, double_orthogonality,
                            gram_matrix, semigroup_deformation, top_eigenpairs)
from hspec.spectra import (essential_norm_estimate, fit_K, julia_caratheodory_probe,
                           schwarz_pick_check, singular_values)
from hspec.wco import build_proof_split, build_wco, psi_sup

CONTACT = [e for e in C.corpus() if e.contact]


def test_01_diagonal_oracle(verdict):
    worst_s = worst_g = 0.0
    k = np.arange(32)
    for r in (0.25, 0.5, 0.8):
        hmap = HoloMap((Scale(r),))
        s = singular_values(build_wco(hmap, 32, 128, 512)).values
        worst_s = max(worst_s, np.max(np.abs(s - r ** (k + 0.5))))
        lam = np.linalg.eigvalsh(gram_matrix(hmap, 32, 512))[::-1]
        worst_g = max(worst_g, np.max(np.abs(lam - r ** (2 * k + 1))))
    ok = worst_s <= 1e-12 and worst_g <= 1e-10
    verdict(1, "diagonal oracle", ok, f"sv err {worst_s:.1e}, gram err {worst_g:.1e}")
    assert ok


def test_02_unitarity(verdict):
    unitary = [e for e in C.corpus() if C.is_unitary(e)]
    dev, untrusted = 0.0, 0
    for e in unitary:
        spec = singular_values(build_wco(e.map, 64, 256))
        t = spec.trusted[:32]
        untrusted += int(np.count_nonzero(~t))
        dev = max(dev, np.max(np.abs(spec.values[:32][t] - 1.0), initial=0.0))
    ok = dev <= 1e-6 and untrusted == 0
    verdict(2, "unitarity of Mobius maps", ok,
            f"{len(unitary)} maps, max |s_n - 1| {dev:.1e}, untrusted {untrusted}")
    assert ok


def test_03_essential_norm_dichotomy(verdict):
    errs = {}
    for e in C.corpus():
        est = essential_norm_estimate(e.map, (64, 128, 256)).estimate
        errs[e.name] = abs(est - (1.0 if e.contact else 0.0))
    worst = max(errs, key=errs.get)
    ok = errs[worst] <= 0.05
    verdict(3, "essential norm dichotomy", ok, f"worst {worst} off by {errs[worst]:.3f}")
    assert ok


def _k_stable(a, b):
    return abs(a - b) <= 0.1 * max(a, b) or max(a, b) <= 1e-4


def test_04_K_bound(verdict):
    bad = []
    for e in CONTACT:
        Ks = []
        for N in (128, 256):
            spec = singular_values(build_wco(e.map, N))
            K = fit_K(spec)
            n = np.arange(1, N + 1)
            sel = spec.trusted & (n >= 4)
            if np.any(spec.values[sel] > 1 + K / n[sel] + 1e-6):
                bad.append(f"{e.name}@{N}")
            Ks.append(K)
        if not _k_stable(*Ks):
            bad.append(f"{e.name}:K {Ks[0]:.3g}->{Ks[1]:.3g}")
    verdict(4, "K-bound on contact maps", not bad, ", ".join(bad))
    assert not bad


def test_05_proof_split(verdict):
    maps = [e for e in CONTACT if e.map.fixes_origin()]
    worst_T, worst_X = 0.0, -np.inf
    for e in maps:
        T, X = build_proof_split(e.map, 64, 256)
        worst_T = max(worst_T, np.linalg.norm(T, 2))
        sx = np.linalg.svd(X, compute_uv=False)[:32]
        bound = psi_sup(e.map) / np.arange(1, 33)
        worst_X = max(worst_X, np.max(sx - bound))
    ok = worst_T <= 1 + 1e-6 and worst_X <= 1e-6 and len(maps) >= 2
    verdict(5, "proof split", ok,
            f"{len(maps)} maps, max ||T|| {worst_T:.8f}, max s_n(X) - bound {worst_X:.1e}")
    assert ok


def test_06_schwarz_pick(verdict):
    maps = [e for e in C.corpus() if e.map.fixes_origin()]
    worst = max(schwarz_pick_check(e.map, 1000)[0] for e in maps)
    ok = worst <= 1 + 1e-10
    verdict(6, "Schwarz-Pick estimate", ok, f"{len(maps)} maps, max quotient {worst:.12f}")
    assert ok


def test_07_julia_caratheodory(verdict):
    r = 1 - 10.0 ** -np.arange(1, 5)
    q = julia_caratheodory_probe(C.get("half_disk").map, r, 1.0)
    closed = 2 * (1 + r) / (3 + r)
    err = np.max(np.abs(q - closed))
    ok = bool(np.all(np.diff(q) > 0) and q[-1] > 0.99 and err <= 1e-12)
    verdict(7, "Julia-Caratheodory probe", ok, f"q(1-1e-4) = {q[-1]:.10f}, closed-form err {err:.1e}")
    assert ok


def test_08_exterior_power(verdict):
    rng = np.random.default_rng(2024)
    worst_norm = worst_cb = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 7))
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        b = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        for n in range(1, d + 1):
            lhs, rhs = lambda_norm_formula_check(a, n)
            worst_norm = max(worst_norm, abs(lhs - rhs) / max(1.0, rhs))
            cb = exterior_power(a @ b, n) - exterior_power(a, n) @ exterior_power(b, n)
            worst_cb = max(worst_cb, np.max(np.abs(cb)) / max(1.0, np.max(np.abs(exterior_power(a @ b, n)))))
    ok = worst_norm <= 1e-10 and worst_cb <= 1e-10
    verdict(8, "exterior-power norm identity", ok, f"norm err {worst_norm:.1e}, Cauchy-Binet err {worst_cb:.1e}")
    assert ok


def test_09_trichotomy_split(verdict):
    worst_rec, bad = 0.0, []
    for e in C.corpus():
        W = build_wco(e.map, 64)
        spec = singular_values(W)
        A, X = split_contraction_trace(modulus(W))
        worst_rec = max(worst_rec, np.max(np.abs(A + X - modulus(W))))
        rep = fock_norm(spec)
        s = spec.values[spec.trusted]
        if rep.partial_products[-1] > np.exp(np.sum(np.maximum(s - 1, 0))) * (1 + 1e-12):
            bad.append(e.name)
    ok = worst_rec <= 1e-10 and not bad
    verdict(9, "trichotomy split", ok, f"reconstruction err {worst_rec:.1e}" + (f", bound fails {bad}" if bad else ""))
    assert ok


def test_10_modulus_identity(verdict):
    errs = {e.name: compare_moduli(e.map, 128, 1024, top=10) for e in C.corpus()}
    worst = max(errs, key=errs.get)
    ok = errs[worst] <= 1e-6
    verdict(10, "modulus identity", ok, f"worst {worst} {errs[worst]:.1e}")
    assert ok


def test_11_double_orthogonality(verdict):
    cases = [(f"scale{r}", HoloMap((Scale(r),))) for r in (0.5, 0.8)]
    cases += [(e.name, e.map) for e in C.corpus()]
    worst, used = 0.0, []
    for name, hmap in cases:
        floor = DEFAULT_THRESHOLD if hmap.has_contact() else 1e-6
        pairs = [p for p in top_eigenpairs(gram_matrix(hmap, 128, 1024), floor) if p.trusted]
        if len(pairs) < 2 and not name.startswith("scale"):
            continue
        rv, ru = double_orthogonality(pairs, hmap, 1024)
        worst = max(worst, rv, ru)
        used.append(name)
    ok = worst <= 1e-6 and len(used) >= 3
    verdict(11, "double orthogonality", ok, f"{len(used)} maps, max residual {worst:.1e}")
    assert ok


def test_12_fisher_micchelli(verdict):
    problems = []
    for t in (0.5, 0.8, 0.95):
        hmap = deform(identity(), t)
        pairs = top_eigenpairs(gram_matrix(hmap, 64, 1024), 0.0)[:9]
        for p in pairs:
            mono = np.abs(p.coeffs)
            if abs(mono[p.index] - 1) > 1e-12 or count_zeros(p.coeffs, 1 - 1e-3).count != p.index:
                problems.append(f"t={t} n={p.index}")
    checked = 0
    for e in CONTACT:
        pairs = [p for p in top_eigenpairs(gram_matrix(e.map, 512), DEFAULT_THRESHOLD) if p.trusted]
        lam = [p.lam for p in pairs]
        if any(a - b <= 1e-8 for a, b in zip(lam, lam[1:])):
            problems.append(f"{e.name} gap")
        for p in pairs:
            checked += 1
            if count_zeros(p.coeffs, 1 - 1e-3).count > p.index:
                problems.append(f"{e.name} n={p.index}")
    verdict(12, "Fisher-Micchelli pipeline", not problems,
            f"{checked} trusted contact eigenfunctions" + (f"; {problems}" if problems else ""))
    assert not problems


def test_13_monotone_in_t(verdict):
    bad = [e.name for e in C.corpus()
           if not semigroup_deformation(e.map, [0.5, 0.8, 0.95, 1.0], 128, 1024).checks["monotone"]]
    verdict(13, "monotonicity in t", not bad, ", ".join(bad))
    assert not bad


def test_14_littlewood_paley(verdict):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        d = int(rng.integers(0, 33))
        c = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
        sq = np.sum(np.abs(c) ** 2)
        worst = max(worst, abs(littlewood_paley_norm(c) - sq) / sq)
    ok = worst <= 1e-8
    verdict(14, "Littlewood-Paley quadrature", ok, f"max relative err {worst:.1e}")
    assert ok
