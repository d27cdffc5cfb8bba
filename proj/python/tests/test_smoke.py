import numpy as np
import pytest

import bszego

TWO_MINUS_ZW = np.array([[2, 0], [0, -1]], dtype=complex)


def test_moments_geometric_series():
    c = bszego.moments_from_density(TWO_MINUS_ZW, 3, 3)
    assert c.shape == (7, 7)
    for j in range(-3, 4):
        assert abs(c[3 + j, 3 + j] - 2.0 ** -abs(j) / 3) < 1e-12


def test_condition_and_reconstruction():
    c = bszego.moments_from_density(TWO_MINUS_ZW, 1, 1)
    rep = bszego.check_matrix_condition(c, 1, 1)
    assert rep["holds"] and rep["dimA"] == 0
    p = bszego.reconstruct(c, 1, 1)
    assert np.allclose(p, TWO_MINUS_ZW, atol=1e-10)


def test_factor_trig():
    t = np.array([[-2, 0, 0], [0, 5, 0], [0, 0, -2]], dtype=complex)
    p = bszego.factor_trig(t, 1, 1)
    assert np.allclose(np.abs(p), np.abs(TWO_MINUS_ZW), atol=1e-9)


def test_enumeration_counts():
    # (3 - z)(2 - z)(2 - zw)
    u = np.array([6, -5, 1], dtype=complex)
    p = np.zeros((4, 2), dtype=complex)
    p[:3, 0] = 2 * u
    p[1:, 1] = -u
    d = sorted(d for _, d in bszego.enumerate_split_polys(p))
    assert d == [0, 1, 1, 2]


def test_certificate_counts():
    cert = bszego.sos_certificate(TWO_MINUS_ZW)
    assert (len(cert["A"]), cert["n1"], cert["n2"]) == (1, 1, 0)
    assert cert["residual"] < 1e-12
    cert = bszego.sos_certificate(np.array([[1], [-2]], dtype=complex))
    assert cert["inside_roots"] == 1


def test_detrep_z_minus_w():
    rep = bszego.build_detrep(np.array([[0, -1], [1, 0]], dtype=complex))
    assert rep["unitarity"] < 1e-8
    z, w = 0.3 + 0.1j, -0.4 + 0.2j
    det = bszego.detrep_eval(rep["U"], rep["m"], rep["n1"], rep["n2"], z, w)
    assert abs(det - rep["scale"] * (z - w)) < 1e-10


def test_full_measure_and_ar():
    c = bszego.moments_from_density(TWO_MINUS_ZW, 5, 4)
    assert bszego.check_full_measure(c, 1, 1)["verdict"] == "pass"
    ar = bszego.solve_ar(bszego.moments_from_density(TWO_MINUS_ZW, 1, 1), 1, 1)
    assert ar["classification"] == "causal"


def test_errors_carry_codes():
    with pytest.raises(bszego.Error) as info:
        bszego.moments_from_density(np.array([[1, 0], [0, -1]], dtype=complex), 1, 1)
    assert info.value.code == "MomentDivergence"
    with pytest.raises(bszego.Error) as info:
        bszego.build_detrep(np.array([[0, -2], [1, 0]], dtype=complex))
    assert info.value.code == "NotGdv"
