"""Command-line experiment runner.

    hspec <suite> [--config FILE.json] [--out DIR] [--set key=value ...]
    hspec selftest

Suites: singular, fock, restrict, fisher, semigroup, selftest.  Every run
writes ``manifest.json`` (config, input hash, version), the suite's result
files and ``summary.json`` with one pass/fail entry per exercised invariant.

Exit status: 0 all checks pass, 2 a check failed, 3 numerical failure,
64 invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import nullcontext
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import corpus as _corpus
from . import io as hio
from .errors import HspecError
from .fock import fock_norm, modulus, split_contraction_trace
from .holo import HoloMap, default_quadrature_order
from .restrict import (DEFAULT_THRESHOLD, compare_moduli, double_orthogonality, eigen_zero_rows,
                       gram_matrix, semigroup_deformation, top_eigenpairs)
from .spectra import (essential_norm_estimate, fit_K, julia_caratheodory_probe,
                      schwarz_pick_check, singular_values)
from .wco import boundary_gram, build_wco

log = logging.getLogger("hspec")

SUITES = ("singular", "fock", "restrict", "fisher", "semigroup", "selftest")
EXIT_OK, EXIT_FAILED, EXIT_NUMERIC, EXIT_CONFIG = 0, 2, 3, 64


class ConfigError(Exception):
    def __init__(self, field_name, message):
        super().__init__(f"config field '{field_name}': {message}")
        self.field = field_name


@dataclass
class ExperimentConfig:
    suite: str
    map: object = "quadratic"
    N_c: int = 64
    N_r: int | None = None
    M: int | None = None
    t_grid: list | None = None
    threshold: float = DEFAULT_THRESHOLD
    out_dir: str = "hspec-out"
    search: bool = False
    export_matrix: bool = False
    extra: dict = field(default_factory=dict)

    def resolved_map(self) -> HoloMap:
        if isinstance(self.map, str):
            try:
                return _corpus.get(self.map).map
            except KeyError as exc:
                raise ConfigError("map", str(exc)) from None
        try:
            return HoloMap.from_json(self.map)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("map", f"not a valid map description ({exc})") from None

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigError("suite", f"must be one of {', '.join(SUITES)}")
        if not isinstance(self.N_c, int) or self.N_c < 2:
            raise ConfigError("N_c", "must be an integer >= 2")
        if self.N_r is None:
            self.N_r = 4 * self.N_c
        if self.N_r < 4 * self.N_c:
            raise ConfigError("N_r", f"must be >= 4*N_c = {4 * self.N_c}")
        if self.M is None:
            self.M = default_quadrature_order(self.N_r)
        if self.M < 8 * self.N_c or self.M & (self.M - 1):
            raise ConfigError("M", f"must be a power of two >= 8*N_c = {8 * self.N_c}")
        if self.t_grid is not None:
            t = [float(x) for x in self.t_grid]
            if any(b <= a for a, b in zip(t, t[1:])) or not 0 < t[0] or t[-1] > 1.0:
                raise ConfigError("t_grid", "must be increasing within (0, 1]")
            if self.suite == "semigroup" and t[-1] != 1.0:
                raise ConfigError("t_grid", "must end at 1 for the semigroup suite")
            self.t_grid = t
        if self.suite != "selftest" and not self.search:
            self.resolved_map()
        return self

    def to_json(self):
        return {"suite": self.suite, "map": self.map, "N_c": self.N_c, "N_r": self.N_r,
                "M": self.M, "t_grid": self.t_grid, "threshold": self.threshold,
                "search": self.search, "export_matrix": self.export_matrix}


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def load_config(suite, path=None, overrides=(), out=None):
    data = {}
    if path:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("--config", str(exc)) from None
    for item in overrides:
        if "=" not in item:
            raise ConfigError(item, "overrides take the form key=value")
        key, value = item.split("=", 1)
        data[key.strip()] = _parse_value(value)
    data["suite"] = suite
    if out is not None:
        data["out_dir"] = out
    known = set(ExperimentConfig.__dataclass_fields__) - {"extra"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown field")
    return ExperimentConfig(**data).validate()


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------

def _suite_singular(cfg, out):
    hmap = cfg.resolved_map()
    W = build_wco(hmap, cfg.N_c, cfg.N_r, cfg.M)
    spec = singular_values(W)
    hio.write_spectrum_csv(out / "spectrum.csv", spec)
    if cfg.export_matrix:
        hio.write_matrix_bin(out / "matrix.hspm", W)
    n_list = [max(cfg.N_c // 4, 4), max(cfg.N_c // 2, 8), cfg.N_c]
    ess = essential_norm_estimate(hmap, n_list)
    K = fit_K(spec)
    n = np.arange(1, spec.values.size + 1)
    tr = spec.trusted
    checks = {
        "norm_at_least_column0": bool(spec.values[0] >= np.linalg.norm(W[:, 0]) * (1 - 1e-14)),
        "K_bound_on_trusted": bool(np.all(spec.values[tr] <= 1 + K / n[tr] + 1e-6) or K == 0.0
                                   and np.all(spec.values[tr][n[tr] >= 4] <= 1 + 1e-6)),
        "essential_norm_dichotomy": bool(abs(ess.estimate - (1.0 if hmap.has_contact() else 0.0))
                                         <= 0.05),
    }
    if hmap.fixes_origin():
        q, _ = schwarz_pick_check(hmap)
        checks["schwarz_pick"] = bool(q <= 1 + 1e-10)
    if hmap.has_contact():
        jc = julia_caratheodory_probe(hmap, 1 - 10.0 ** -np.arange(1, 5))
        checks["julia_caratheodory_bounded"] = bool(np.all(jc <= 1 + 1e-10))
    results = {"K_hat": K, "essential_norm": {"estimate": ess.estimate, "converged": ess.converged,
                                              "profile": ess.profile},
               "n_trusted": spec.n_trusted}
    return checks, results


def _suite_fock(cfg, out):
    hmap = cfg.resolved_map()
    W = build_wco(hmap, cfg.N_c, cfg.N_r, cfg.M)
    spec = singular_values(W)
    report = fock_norm(spec)
    (out / "fock.json").write_text(report.to_json() + "\n")
    A, X = split_contraction_trace(modulus(W))
    excess = np.maximum(spec.values - 1.0, 0.0)
    checks = {
        "contraction_part": bool(np.linalg.norm(A, 2) <= 1 + 1e-10),
        "reconstruction": bool(np.max(np.abs(A + X - modulus(W))) <= 1e-10),
        "trace_part": bool(abs(np.trace(X).real - excess.sum()) <= 1e-10 * max(1, excess.sum())),
        "product_bound": bool(report.partial_products[-1] <= np.exp(excess.sum()) * (1 + 1e-12)),
    }
    return checks, {"verdict": report.verdict, "lambda_norm_estimate": report.lambda_norm_estimate}


def _suite_restrict(cfg, out):
    hmap = cfg.resolved_map()
    N = cfg.N_c
    G = gram_matrix(hmap, N, cfg.M)
    floor = cfg.threshold if hmap.has_contact() else 1e-6
    pairs = top_eigenpairs(G, floor)
    trusted = [p for p in pairs if p.trusted]
    edir = out / "eigenfunctions"
    edir.mkdir(exist_ok=True)
    for p in trusted:
        hio.write_eigenfunction_json(edir / f"f{p.index:03d}.json", p)
    lam = np.linalg.eigvalsh(G)[::-1]
    with open(out / "gram_eigenvalues.csv", "w") as fh:
        fh.write("n,lambda_n\n")
        fh.writelines(f"{k},{v!r}\n" for k, v in enumerate(lam.tolist()))
    mismatch = compare_moduli(hmap, N, cfg.M)
    res_v, res_u = double_orthogonality(trusted, hmap, cfg.M)
    WG = build_wco(hmap, N, cfg.N_r, cfg.M)
    checks = {
        "modulus_identity": bool(mismatch <= 1e-6),
        "gram_bridge": bool(np.max(np.abs(WG.conj().T @ WG - boundary_gram(hmap, N, cfg.M))) <= 1e-8),
        "double_orthogonality": bool(res_v <= 1e-6 and res_u <= 1e-6),
        "residuals": bool(all(p.residual <= 1e-8 for p in pairs)),
    }
    return checks, {"compare_moduli": mismatch, "n_pairs": len(pairs),
                    "n_trusted_pairs": len(trusted), "resV": res_v, "resU": res_u}


def _suite_fisher(cfg, out):
    if cfg.search:
        return _fisher_search(cfg, out)
    hmap = cfg.resolved_map()
    t_grid = cfg.t_grid or [1.0]
    rows, checks = [], {"compact_exact": True, "contact_bounded": True, "simple": True}
    from .holo import deform
    for t in t_grid:
        mt = deform(hmap, t)
        floor = cfg.threshold if mt.has_contact() else 1e-6
        _, pairs, trows = eigen_zero_rows(mt, cfg.N_c, cfg.M, floor, t=t)
        rows.extend(trows)
        lam = [p.lam for p in pairs if p.trusted]
        if any(a - b <= 1e-8 for a, b in zip(lam, lam[1:])):
            checks["simple"] = False
        for r in trows:
            if r.trusted and not mt.has_contact() and r.zero_count != r.n:
                checks["compact_exact"] = False
            if r.trusted and mt.has_contact() and r.zero_count > r.n:
                checks["contact_bounded"] = False
        for p in pairs:
            if p.trusted:
                hio.write_eigenfunction_json(out / f"eig_t{t:g}_n{p.index:03d}.json", p)
    hio.write_deformation_csv(out / "fisher.csv", rows)
    return checks, {"n_rows": len(rows)}


def _fisher_search(cfg, out):
    found = {}
    for e in _corpus.corpus():
        if not e.contact:
            continue
        pairs = top_eigenpairs(gram_matrix(e.map, cfg.N_c, cfg.M), cfg.threshold)
        found[e.name] = [{"lambda": p.lam, "trusted": p.trusted} for p in pairs]
    (out / "search.json").write_text(json.dumps(found, indent=1) + "\n")
    return {}, {"maps_with_eigenvalues_above_threshold": sorted(k for k, v in found.items() if v)}


def _suite_semigroup(cfg, out):
    hmap = cfg.resolved_map()
    t_grid = cfg.t_grid or [0.5, 0.8, 0.95, 1.0]
    res = semigroup_deformation(hmap, t_grid, cfg.N_c, cfg.M, cfg.threshold)
    hio.write_deformation_csv(out / "deformation.csv", res.rows)
    return dict(res.checks), {"n_rows": len(res.rows)}


def _suite_selftest(cfg, out):
    from .selftest import run_all
    return run_all(), {}


_SUITES = {"singular": _suite_singular, "fock": _suite_fock, "restrict": _suite_restrict,
           "fisher": _suite_fisher, "semigroup": _suite_semigroup, "selftest": _suite_selftest}


def run(cfg: ExperimentConfig):
    """Run one suite; returns the exit status."""
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"config": cfg.to_json(), "input_hash": hio.content_hash(cfg.to_json()),
                "version": __version__}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    try:
        checks, results = _SUITES[cfg.suite](cfg, out)
    except HspecError as exc:
        log.error("numerical failure: %s", exc)
        summary = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
        (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n")
        return EXIT_NUMERIC
    passed = all(checks.values())
    summary = {"passed": passed, "checks": checks, "results": results}
    (out / "summary.json").write_text(json.dumps(summary, indent=1, sort_keys=True,
                                                 default=float) + "\n")
    for name, ok in checks.items():
        log.info("%-48s %s", name, "PASS" if ok else "FAIL")
    return EXIT_OK if passed else EXIT_FAILED


def _thread_limit():
    n = os.environ.get("HSPEC_THREADS")
    if not n:
        return nullcontext()
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        return nullcontext()
    return threadpool_limits(int(n))


def main(argv=None):
    parser = argparse.ArgumentParser(prog="hspec", description=__doc__.split("\n")[0])
    parser.add_argument("suite", choices=SUITES)
    parser.add_argument("--config", help="JSON experiment configuration")
    parser.add_argument("--out", help="output directory (overrides out_dir)")
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config field (JSON value)")
    parser.add_argument("--search", action="store_true",
                        help="fisher suite: scan contact corpus maps for eigenvalues above threshold")
    parser.add_argument("-q", "--quiet", action="store_true")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s")
    overrides = list(args.overrides) + (["search=true"] if args.search else [])
    try:
        cfg = load_config(args.suite, args.config, overrides, args.out)
    except (ConfigError, TypeError) as exc:
        print(f"hspec: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    with _thread_limit():
        return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
