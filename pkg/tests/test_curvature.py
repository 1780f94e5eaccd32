from __future__ import annotations

import numpy as np
import pytest

from frwspin.charts import Point, transition
from frwspin.connection import FramePair
from frwspin.curvature import (antisymmetry_residual, bianchi_residual, curvature,
                               intertwining_residual, ricci_and_scalar, ricci_offdiagonal,
                               riemann, spinor_curvature, spinor_from_riemann)
from frwspin.frames import Frame
from frwspin.scale_factor import ScaleFactor
from frwspin.verification import FRAME_CHART, sample_points


def _radii(p, sf):
    return sf.evaluate(p.eta)


def test_sectional_curvature_entry(north, sf):
    r, d1, _ = _radii(north, sf)
    rm = riemann("X", north, sf)
    for a, b in [(1, 2), (2, 3), (3, 1)]:
        assert np.allclose(rm[..., a, b, a, b], 1 / r ** 2 + d1 ** 2 / r ** 4)


def test_unit_sphere_curvature():
    rm = riemann("X", Point("north", [0, 0.5, 0.2, 1.0]), ScaleFactor.constant(1.0))
    assert np.isclose(rm[1, 2, 1, 2], 1.0)


def test_frames_give_identical_components(spherical, sf):
    base = riemann("E", spherical, sf)
    for f in (Frame.X, Frame.Y, Frame.YTILDE):
        assert np.allclose(riemann(f, transition(spherical, f.chart), sf), base, atol=1e-9)


def test_spinor_curvature_entries(north, sf):
    r, d1, d2 = _radii(north, sf)
    s = spinor_curvature("Psi-X", north, sf)
    assert np.allclose(s[..., 0, 1, 0, 1], -d1 ** 2 / (2 * r ** 4) + d2 / (2 * r ** 3))
    assert np.allclose(s[..., 0, 1, 3, 1], 1 / (2 * r ** 2) + d1 ** 2 / (2 * r ** 4))


def test_constant_radius_has_no_time_curvature(north):
    sf = ScaleFactor.constant(1.7)
    cv = curvature("X", north, sf)
    assert np.allclose(cv.spinor[..., 0, :], 0, atol=1e-12)
    assert np.allclose(cv.riemann[..., 0, :, :, :], 0, atol=1e-12)
    assert not np.allclose(cv.spinor[..., 1:, 1:], 0)


@pytest.mark.parametrize("pair", list(FramePair))
def test_intertwining(pair, rng, sf):
    p = sample_points(FRAME_CHART[pair.frame], 10, rng)
    assert np.max(intertwining_residual(pair, p, sf)) <= 1e-9


def test_intertwining_exact_for_unit_radius(north):
    assert np.max(intertwining_residual("X", north, ScaleFactor.constant(1.0))) <= 1e-12


@pytest.mark.parametrize("frame", list(Frame))
def test_symmetries(frame, rng, sf):
    p = sample_points(FRAME_CHART[frame], 10, rng)
    assert np.max(antisymmetry_residual(frame, p, sf)) <= 1e-10
    assert np.max(bianchi_residual(frame, p, sf)) <= 1e-9
    s = spinor_curvature(frame, p, sf)
    assert np.allclose(s, -np.swapaxes(s, -1, -2), atol=1e-10)


@pytest.mark.parametrize("frame", list(Frame))
def test_ricci(frame, rng, sf):
    p = sample_points(FRAME_CHART[frame], 10, rng)
    r, d1, d2 = _radii(p, sf)
    ric, scal = ricci_and_scalar(frame, p, sf)
    assert np.max(ricci_offdiagonal(frame, p, sf)) <= 1e-10
    assert np.allclose(ric[..., 0, 0], 3 * d1 ** 2 / r ** 4 - 3 * d2 / r ** 3)
    for k in (1, 2, 3):
        assert np.allclose(ric[..., k, k], 2 / r ** 2 + d1 ** 2 / r ** 4 + d2 / r ** 3)
    # textbook closed-universe scalar in this signature
    assert np.allclose(scal, -6 / r ** 2 - 6 * d2 / r ** 3, atol=1e-9)


def test_constant_radius_scalar():
    _, scal = ricci_and_scalar("E", Point("spherical", [0, 1, 1, 1]), ScaleFactor.constant(2.0))
    assert np.isclose(scal, -1.5)


def test_cached_arrays_are_read_only(north):
    cv = curvature("X", north, ScaleFactor.constant(1.0))
    assert cv is curvature(FramePair.PSI_X, north, ScaleFactor.constant(1.0))
    with pytest.raises(ValueError):
        cv.riemann[0, 0, 0, 0, 0] = 1.0


def test_spinor_from_riemann_is_linear(north, sf):
    rm = riemann("X", north, sf)
    assert np.allclose(spinor_from_riemann(2 * rm), 2 * spinor_from_riemann(rm))
