import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hspec import corpus as C
from hspec.errors import PreconditionError, SizeError
from hspec.fock import (FockReport, exterior_power, fock_norm, lambda_norm_formula_check,
                        modulus, split_contraction_trace, wedge_basis)
from hspec.spectra import singular_values
from hspec.wco import build_wco


def _mat(seed, d):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 6), st.integers(1, 6))
def test_cauchy_binet(seed, d, n):
    n = min(n, d)
    a, b = _mat(seed, d), _mat(seed + 1, d)
    lhs = exterior_power(a @ b, n)
    assert np.allclose(lhs, exterior_power(a, n) @ exterior_power(b, n), atol=1e-10 * np.abs(lhs).max())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 6), st.integers(1, 6))
def test_norm_is_product_of_singular_values(seed, d, n):
    lhs, rhs = lambda_norm_formula_check(_mat(seed, d), min(n, d))
    assert np.isclose(lhs, rhs, rtol=1e-10)


def test_adjoint_commutes():
    a = _mat(3, 5)
    assert np.allclose(exterior_power(a.conj().T, 3), exterior_power(a, 3).conj().T)


def test_dimensions():
    assert len(wedge_basis(6, 3)) == 20
    assert exterior_power(np.ones((3, 3)), 0).shape == (1, 1)
    assert exterior_power(np.ones((3, 2)), 3).shape == (1, 0)


def test_size_limit():
    with pytest.raises(SizeError):
        exterior_power(np.eye(9), 2)


def test_fock_verdicts():
    class Spec:
        def __init__(self, v):
            self.values = np.asarray(v, float)
            self.trusted = np.ones(len(v), bool)
    assert fock_norm(Spec([0.9, 0.5])).verdict == "bounded-trivially"
    conv = fock_norm(Spec([1.2, 1.1, 1.0 + 1e-12]))
    assert conv.verdict == "bounded-converged" and np.isclose(conv.lambda_norm_estimate, 1.32)
    assert fock_norm(Spec([1.2, 1.1])).verdict == "unconverged"


def test_fock_report_json():
    r = FockReport([1.0, 1.5], "unconverged", 1.5)
    assert FockReport.from_json(r.to_json()) == r


@pytest.mark.parametrize("name", ["wavy", "quadratic", "affine"])
def test_split_of_operator_modulus(name):
    W = build_wco(C.get(name).map, 64)
    T = modulus(W)
    A, X = split_contraction_trace(T)
    assert np.linalg.norm(A, 2) <= 1 + 1e-10
    assert np.linalg.eigvalsh(X).min() >= -1e-12
    s = singular_values(W).values
    assert np.isclose(np.trace(X).real, np.sum(np.maximum(s - 1, 0)), atol=1e-10)


def test_split_needs_hermitian():
    with pytest.raises(PreconditionError):
        split_contraction_trace(np.array([[1.0, 2.0], [0.0, 1.0]]))
