from __future__ import annotations

import numpy as np
import pytest

from frwspin._linalg import MINKOWSKI
from frwspin.charts import Point, transition
from frwspin.frames import (ChartMismatchError, Frame, commutators, frame_coefficients,
                            frame_transition, jacobi_residual, metric_in_frame,
                            minkowski_residual)
from frwspin.scale_factor import ScaleFactor
from frwspin.spin_lift import is_special_orthochronous
from frwspin.verification import FRAME_CHART, sample_points

R1, R2 = ScaleFactor.constant(1.0), ScaleFactor.constant(2.0)
HALF_PI = np.pi / 2


def test_x_frame_on_unit_sphere():
    f = frame_coefficients("X", Point("north", [0, 1, 0, 0]), R2)
    assert np.allclose(f, np.diag([0.5] * 4))


def test_ytilde_negates_spatial_columns(south, sf):
    y = frame_coefficients("Y", south, sf)
    yt = frame_coefficients("Ytilde", south, sf)
    assert np.allclose(yt, y @ MINKOWSKI)


def test_e_frame_on_equator():
    f = frame_coefficients("E", Point("spherical", [0, HALF_PI, HALF_PI, 0.3]), R1)
    assert np.allclose(f, np.eye(4))


def test_time_leg(north, sf):
    f = frame_coefficients("X", north, sf)
    r = sf.evaluate(north.eta)[0]
    assert np.allclose(f[..., :, 0], np.stack([1 / r, 0 * r, 0 * r, 0 * r], axis=-1))


@pytest.mark.parametrize("frame", list(Frame))
def test_frame_metric_is_minkowski(frame, rng, sf):
    p = sample_points(FRAME_CHART[frame], 30, rng)
    assert np.allclose(metric_in_frame(frame, p, sf), MINKOWSKI, atol=1e-10, rtol=0)
    assert np.max(minkowski_residual(frame, p, sf)) <= 1e-10


def test_chart_mismatch_is_rejected():
    with pytest.raises(ChartMismatchError):
        frame_coefficients("X", Point("south", [0, 1, 1, 1]), R1)


def test_unknown_frame():
    with pytest.raises(ValueError, match="unknown frame"):
        Frame.parse("Z")


def test_time_commutator_of_x_frame(north, sf):
    c = commutators("X", north, sf)
    r, d1, _ = sf.evaluate(north.eta)
    for k in (1, 2, 3):
        assert np.allclose(c[..., k, 0, k], -d1 / r ** 2)


def test_constant_radius_kills_time_brackets(north):
    c = commutators("X", north, R2)
    assert np.allclose(c[..., :, 0, :], 0) and np.allclose(c[..., :, :, 0], 0)
    assert np.allclose(c[..., 0, :, :], 0)


def test_spatial_bracket_hand_derivation(north, sf):
    # [a d1, a d2] = a (d1 a) d2 - a (d2 a) d1 with a = (1 + |x|^2) / (2R)
    c = commutators("X", north, sf)
    x = north.coords[..., 1:]
    r = sf.evaluate(north.eta)[0]
    for i in range(3):
        for j in range(3):
            if i != j:
                assert np.allclose(c[..., j + 1, i + 1, j + 1], x[..., i] / r)
                assert np.allclose(c[..., i + 1, i + 1, j + 1], -x[..., j] / r)


def test_bracket_at_unit_point():
    c = commutators("X", Point("north", [0, 1, 0, 0]), R2)
    assert np.isclose(c[2, 1, 2], 0.5)


@pytest.mark.parametrize("frame", list(Frame))
def test_ad_and_fd_brackets_agree(frame, rng, sf):
    p = sample_points(FRAME_CHART[frame], 10, rng)
    ad = commutators(frame, p, sf)
    fd = commutators(frame, p, sf, method="fd")
    assert np.allclose(ad, fd, atol=1e-6, rtol=0)
    assert np.allclose(ad, -np.swapaxes(ad, -1, -2), atol=1e-15)


@pytest.mark.parametrize("frame", list(Frame))
def test_jacobi_identity(frame, rng, sf):
    p = sample_points(FRAME_CHART[frame], 10, rng)
    assert np.max(jacobi_residual(frame, p, sf)) <= 1e-8


def test_unknown_differentiation_method(north):
    with pytest.raises(ValueError):
        commutators("X", north, R1, method="symbolic")


def test_y_to_x_is_an_improper_involution(north):
    s = frame_transition("Y", "X", north)
    assert np.allclose(np.linalg.det(s), -1, atol=1e-10)
    assert np.allclose(s @ s, np.eye(4), atol=1e-10)
    assert np.allclose(s, frame_transition("X", "Y", north))
    assert not is_special_orthochronous(s[0])


def test_ytilde_to_x_is_special_orthochronous(north):
    st = frame_transition("Ytilde", "X", north)
    for m in st:
        assert is_special_orthochronous(m)


def test_transition_independent_of_scale(north):
    a = frame_transition("E", "X", north, ScaleFactor.cosh(1.0))
    b = frame_transition("E", "X", north)
    assert np.allclose(a, b)


def test_transition_round_trips(north):
    for a in Frame:
        for b in Frame:
            m = frame_transition(b, a, north) @ frame_transition(a, b, north)
            assert np.allclose(m, np.eye(4), atol=1e-10)


def test_transition_expands_source_in_target(spherical):
    # source_i = sum_j M[j, i] target_j, checked on holonomic components
    m = frame_transition("E", "X", spherical)
    fe = frame_coefficients("E", spherical, R1)
    pn = transition(spherical, "north")
    from frwspin.charts import jacobian
    fx = jacobian(spherical, "north") @ fe
    assert np.allclose(fx, frame_coefficients("X", pn, R1) @ m)


def test_spherical_factorization(spherical):
    lhs = frame_transition("E", "X", spherical)
    rhs = frame_transition("Ytilde", "X", spherical) @ frame_transition("E", "Ytilde", spherical)
    assert np.allclose(lhs, rhs, atol=1e-9)
