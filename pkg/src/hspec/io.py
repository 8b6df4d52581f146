"""Readers and writers for matrices, spectra, deformation tables and eigenfunctions.

Matrix formats
    CSV: one line per row, ``re,im`` pairs for each column.
    Binary: magic ``HSPM1``, then little-endian uint64 N_r, N_c, then the
    entries as little-endian float64 interleaved (re, im), row-major.
"""
from __future__ import annotations

import csv
import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from .restrict import EigenPair

MAGIC = b"HSPM1"
_HEADER = struct.Struct("<QQ")


def _num(x):
    return repr(float(x))


def write_matrix_csv(path, m):
    m = np.asarray(m, dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in m:
            w.writerow([v for z in row for v in (_num(z.real), _num(z.imag))])


def read_matrix_csv(path):
    with open(path, newline="") as fh:
        rows = [list(map(float, r)) for r in csv.reader(fh) if r]
    a = np.array(rows, dtype=float)
    return a[:, 0::2] + 1j * a[:, 1::2]


def write_matrix_bin(path, m):
    m = np.ascontiguousarray(m, dtype="<c16")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(*m.shape))
        fh.write(m.view("<f8").tobytes())


def read_matrix_bin(path):
    data = Path(path).read_bytes()
    if data[:len(MAGIC)] != MAGIC:
        raise ValueError(f"{path}: not an HSPM1 matrix file")
    n_r, n_c = _HEADER.unpack_from(data, len(MAGIC))
    body = np.frombuffer(data, dtype="<f8", offset=len(MAGIC) + _HEADER.size)
    if body.size != 2 * n_r * n_c:
        raise ValueError(f"{path}: expected {n_r}x{n_c} entries, found {body.size // 2}")
    return body.view("<c16").reshape(n_r, n_c).astype(complex)


def write_spectrum_csv(path, spec):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "s_n", "stab_n", "trusted"])
        for k, (s, d, t) in enumerate(zip(spec.values, spec.stab, spec.trusted), start=1):
            w.writerow([k, _num(s), _num(d), int(bool(t))])


def read_spectrum_csv(path):
    with open(path, newline="") as fh:
        return [{"n": int(r["n"]), "s_n": float(r["s_n"]), "stab_n": float(r["stab_n"]),
                 "trusted": bool(int(r["trusted"]))} for r in csv.DictReader(fh)]


def write_deformation_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "n", "s_n", "lambda_n", "zero_count", "trusted"])
        for r in rows:
            zc = "" if r.zero_count is None else r.zero_count
            w.writerow([_num(r.t), r.n, _num(r.s_n), _num(r.lambda_n), zc, int(r.trusted)])


def write_eigenfunction_json(path, pair: EigenPair):
    Path(path).write_text(json.dumps(pair.to_json()) + "\n")


def read_eigenfunction_json(path):
    return EigenPair.from_json(json.loads(Path(path).read_text()))


def content_hash(obj):
    """sha256 of the canonical JSON encoding of ``obj``."""
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()
