import json
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hspec.errors import BranchError, ConfigurationError, DomainError, PreconditionError
from hspec.holo import (BoundaryGrid, HoloMap, Mobius, Poly, Scale, compose_maps, deform,
                        fix_origin, identity, kernel, kernel_coeffs, littlewood_paley_norm,
                        normalized_kernel, poly_eval, taylor_coeffs)

disk_pt = st.builds(lambda r, t: r * np.exp(1j * t),
                    st.floats(0.0, 0.95), st.floats(0.0, 2 * np.pi))
mobius = st.builds(lambda a, th: HoloMap((Mobius(a, th),)), disk_pt, st.floats(-np.pi, np.pi))


def test_mobius_convention():
    m = Mobius(0.5, 0.0)
    f, f1, _ = m.jet(np.array([0.5, 0.0]))
    assert np.allclose(f, [0.0, -0.5])
    assert np.isclose(f1[0], 1 / 0.75)


def test_mobius_rotation():
    f, _, _ = Mobius(0, np.pi / 2).jet(np.array([0.3]))
    assert np.isclose(f[0], 0.3j)


def test_primitive_validation():
    with pytest.raises(ValueError):
        Scale(1.5)
    with pytest.raises(ValueError):
        Mobius(1.0)
    with pytest.raises(ValueError):
        Poly(())


def test_map_leaving_disk_rejected():
    with pytest.raises(PreconditionError):
        HoloMap((Poly((0.0, 1.2)),))


def test_non_univalent_warns():
    with pytest.warns(UserWarning):
        HoloMap((Poly((0.0, 0.0, 0.5)), Poly((0.1, 1.0))))


def test_vanishing_derivative_at_origin():
    hmap = HoloMap((Poly((0.0, 0.0, 1.0)),), validate=False)
    with pytest.raises(BranchError):
        hmap.sqrt_derivative(0.5)


def test_outside_disk_evaluation():
    with pytest.raises(DomainError):
        identity()(1.1)


@settings(max_examples=40, deadline=None)
@given(mobius, disk_pt)
def test_sqrt_derivative_squares_to_derivative(hmap, z):
    assert np.isclose(hmap.sqrt_derivative(z) ** 2, hmap.derivative(z), rtol=1e-12, atol=1e-13)


def test_sqrt_derivative_is_continuous_around_circle():
    hmap = HoloMap((Poly((0.0, 1 / 1.11) + (0.0,) * 6 + (0.11 / 1.11,)),))
    z = 0.999 * np.exp(2j * np.pi * np.arange(2048) / 2048)
    s = hmap.sqrt_derivative(z)
    assert np.max(np.abs(np.diff(s))) < 0.05


def test_branch_flip():
    a = HoloMap((Scale(0.5),), 1).sqrt_derivative(0.2)
    b = HoloMap((Scale(0.5),), -1).sqrt_derivative(0.2)
    assert np.isclose(a, -b)


@settings(max_examples=30, deadline=None)
@given(mobius, disk_pt)
def test_chain_rule_against_finite_differences(hmap, z):
    hmap = compose_maps(hmap, HoloMap((Poly((0.0, 0.7, 0.2)),)))
    h = 1e-6
    fd = (hmap(z + h) - hmap(z - h)) / (2 * h)
    assert np.isclose(fd, hmap.derivative(z), rtol=1e-6, atol=1e-7)


@settings(max_examples=30, deadline=None)
@given(mobius, mobius, disk_pt)
def test_composition_branch_matches_product(m1, m2, z):
    c = compose_maps(m1, m2)
    assert np.isclose(c(z), m2(m1(z)))
    assert np.isclose(c.sqrt_derivative(0.0),
                      m1.sqrt_derivative(0.0) * m2.sqrt_derivative(m1(0.0)))


def test_fix_origin_and_deform():
    half = HoloMap((Poly((0.5, 0.5)),))
    assert fix_origin(half).fixes_origin()
    assert fix_origin(half).has_contact()
    d = deform(half, 0.5)
    assert np.isclose(d(0.4), half(0.2))
    assert not d.has_contact()
    assert np.isclose(d.sqrt_derivative(0.4), np.sqrt(0.5) * half.sqrt_derivative(0.2))


def test_json_round_trip():
    hmap = compose_maps(HoloMap((Mobius(0.2 - 0.1j, 0.3),)), HoloMap((Poly((0.1, 0.6)),)))
    again = HoloMap.from_json(json.dumps(hmap.to_json()))
    assert again == hmap
    z = np.array([0.1, -0.4j])
    assert np.allclose(again.sqrt_derivative(z), hmap.sqrt_derivative(z))


def test_unknown_primitive():
    with pytest.raises(ValueError):
        HoloMap.from_json({"compose": [{"spiral": 1}]})


@settings(max_examples=30, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=20))
def test_taylor_coeffs_recover_polynomial(c):
    c = np.array(c)
    z = np.exp(2j * np.pi * np.arange(128) / 128)
    got = taylor_coeffs(poly_eval(c, z), 32)
    assert np.allclose(got[:c.size], c, atol=1e-12 * (1 + np.abs(c).max()))
    assert np.allclose(got[c.size:], 0, atol=1e-12 * (1 + np.abs(c).max()))


def test_taylor_coeffs_aliasing_guard():
    with pytest.raises(ConfigurationError):
        taylor_coeffs(np.ones(16), 8)


def test_boundary_grid_power_of_two():
    with pytest.raises(ConfigurationError):
        BoundaryGrid.of(identity(), 1000)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 32), st.integers(0, 2 ** 32 - 1))
def test_littlewood_paley_is_coefficient_norm(deg, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    assert np.isclose(littlewood_paley_norm(c), np.sum(np.abs(c) ** 2), rtol=1e-10)


@settings(max_examples=30, deadline=None)
@given(disk_pt, disk_pt)
def test_kernel_symmetry_and_coefficients(z, w):
    assert np.isclose(kernel(z, w), np.conj(kernel(w, z)))
    assert np.isclose(poly_eval(kernel_coeffs(w, 400), z), kernel(z, w), atol=1e-8)


def test_normalized_kernel_domain():
    with pytest.raises(DomainError):
        normalized_kernel(1.0, 8)
    with pytest.raises(DomainError):
        kernel(0.1, 1.0)
