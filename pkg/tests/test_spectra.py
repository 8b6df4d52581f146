import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hspec import corpus as C
from hspec.errors import ConfigurationError, PreconditionError
from hspec.holo import HoloMap, Mobius, Poly, Scale, compose_maps
from hspec.spectra import (essential_norm_estimate, fit_K, julia_caratheodory_probe,
                           schwarz_pick_check, singular_values)
from hspec.wco import build_wco


def test_descending_and_trusted_prefix():
    spec = singular_values(build_wco(C.get("quadratic").map, 64))
    assert np.all(np.diff(spec.values) <= 0)
    assert not np.any(spec.trusted[32:])
    assert spec.N_c == 64 and spec.N_r == 256


def test_stabilization_for_compact_map():
    spec = singular_values(build_wco(C.get("affine").map, 64))
    assert spec.n_trusted == 32


def test_essential_norm_needs_three_orders():
    with pytest.raises(ConfigurationError):
        essential_norm_estimate(C.get("affine").map, (32, 64))


def test_essential_norm_profile_monotone():
    est = essential_norm_estimate(C.get("half_disk").map, (32, 64, 128))
    tails = [p["tail_norm"] for p in est.profile]
    assert est.converged and tails == sorted(tails)
    assert 0.95 <= est.estimate <= 1.0


def test_essential_norm_compact():
    assert essential_norm_estimate(C.get("scale_half").map, (16, 32, 64)).estimate < 1e-3


def test_fit_K_ignores_leading_indices():
    class Spec:
        values = np.array([2.0, 1.5, 1.2, 1.1, 1.0])
        trusted = np.ones(5, bool)
    assert np.isclose(fit_K(Spec()), 0.4)
    assert np.isclose(fit_K(Spec(), min_index=1), 1.0)


r_in = st.floats(0.05, 0.95)


@settings(max_examples=20, deadline=None)
@given(r_in, st.floats(-0.4, 0.4), st.floats(-3, 3))
def test_schwarz_pick_for_maps_fixing_origin(r, c, th):
    hmap = compose_maps(HoloMap((Poly((0.0, 1.0, c)),), validate=False),
                        HoloMap((Scale(1 / (1 + abs(c))), Mobius(0, th))))
    assert schwarz_pick_check(hmap, 300)[0] <= 1 + 1e-10


def test_schwarz_pick_precondition():
    with pytest.raises(PreconditionError):
        schwarz_pick_check(C.get("affine").map)


def test_julia_caratheodory_tends_to_one_at_contact():
    q = julia_caratheodory_probe(C.get("quadratic").map, [0.9, 0.99, 0.999])
    assert np.all(np.diff(q) > 0) and q[-1] > 0.99


def test_julia_caratheodory_without_contact_warns():
    with pytest.warns(UserWarning):
        q = julia_caratheodory_probe(C.get("affine").map, [0.999])
    assert q[0] < 0.9
