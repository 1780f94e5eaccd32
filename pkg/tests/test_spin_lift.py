from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frwspin.charts import Point
from frwspin.frames import frame_transition
from frwspin.spin_lift import (GroupMembershipError, closed_form_lift, equal_up_to_sign, fix_sign,
                               is_sl2c, is_special_orthochronous, lift, phi, spherical_stilde)

I2 = np.eye(2)


def test_phi_identity():
    assert np.allclose(phi(I2), np.eye(4))


def test_phi_of_diag_i():
    assert np.allclose(phi(np.diag([1j, -1j])), np.diag([1, -1, -1, 1]))


def test_phi_is_even(sl2c):
    assert np.allclose(phi(-sl2c), phi(sl2c))


def test_phi_lands_in_so_plus(sl2c):
    assert is_special_orthochronous(phi(sl2c))


def test_phi_rejects_non_unimodular():
    with pytest.raises(GroupMembershipError):
        phi(2 * I2)


def test_phi_homomorphism(sl2c):
    a, b = sl2c[:25], sl2c[25:]
    assert np.allclose(phi(a @ b), phi(a) @ phi(b), atol=1e-9)


def test_lift_identity_picks_plus():
    assert np.allclose(lift(np.eye(4)), I2)


def test_lift_round_trip(sl2c):
    for s in sl2c:
        m = phi(s)
        t = lift(m)
        assert np.allclose(phi(t), m, atol=1e-9)
        assert np.isclose(np.linalg.det(t), 1)
        assert equal_up_to_sign(t, s, 1e-9)


def test_lift_of_inversion_transition():
    p = Point("south", [0, 0, 0, 1])
    m = frame_transition("Ytilde", "X", p)
    assert equal_up_to_sign(lift(m), np.diag([1j, -1j]), 1e-12)


@pytest.mark.parametrize("m", [np.diag([1.0, 1, 1, -1]), np.diag([-1.0, -1, 1, 1]), 2 * np.eye(4)])
def test_lift_rejects_non_members(m):
    with pytest.raises(GroupMembershipError):
        lift(m)


def test_lift_rejects_bad_shape():
    with pytest.raises(ValueError):
        lift(np.eye(3))


def test_sign_convention():
    s = np.array([[0, -1], [1, 0]], dtype=complex)
    assert np.allclose(fix_sign(s), [[0, 1], [-1, 0]])
    s = np.array([[-1j, 0], [0, 1j]])
    assert np.allclose(fix_sign(s), np.diag([1j, -1j]))


def test_membership_predicates():
    assert is_special_orthochronous(np.eye(4))
    assert not is_special_orthochronous(np.diag([1.0, 1, 1, -1]))
    assert is_sl2c(I2)
    assert not is_sl2c(np.diag([1.0, 2.0]))


def test_closed_form_stilde_on_axis():
    assert np.allclose(closed_form_lift(("Ytilde", "X"), Point("south", [0, 0, 0, 1])),
                       np.diag([1j, -1j]))


def test_closed_form_identities(north):
    st_ = closed_form_lift(("Ytilde", "X"), north)
    tt = closed_form_lift(("X", "Ytilde"), north)
    assert np.allclose(st_ @ st_, -I2, atol=1e-12)
    assert np.allclose(np.linalg.det(st_), 1) and np.allclose(np.linalg.det(tt), 1)
    assert np.allclose(st_, -tt)


@pytest.mark.parametrize("pair, chart", [(("Ytilde", "X"), "south"), (("X", "Ytilde"), "north"),
                                         (("E", "X"), "spherical"), (("E", "Ytilde"), "spherical")])
def test_closed_forms_cover_frame_transitions(pair, chart, rng):
    from frwspin.verification import sample_points
    p = sample_points(chart, 20, rng)
    assert np.allclose(phi(closed_form_lift(pair, p)), frame_transition(*pair, p), atol=1e-9)


def test_spin_factorization(spherical):
    hat = closed_form_lift(("E", "X"), spherical)
    prod = spherical_stilde(spherical) @ closed_form_lift(("E", "Ytilde"), spherical)
    assert equal_up_to_sign(hat, prod, 1e-9)


def test_spherical_stilde_matches_stereographic(spherical):
    a = spherical_stilde(spherical)
    b = closed_form_lift(("Ytilde", "X"), spherical)
    assert np.allclose(a, b, atol=1e-12)


def test_unknown_pair():
    with pytest.raises(ValueError):
        closed_form_lift(("Y", "X"), Point("north", [0, 1, 1, 1]))


entry = st.floats(-2, 2)


@settings(max_examples=50)
@given(st.lists(entry, min_size=8, max_size=8))
def test_lift_inverts_phi_on_random_matrices(vals):
    s = np.array(vals[:4]).reshape(2, 2) + 1j * np.array(vals[4:]).reshape(2, 2)
    d = np.linalg.det(s)
    if abs(d) < 0.1 or np.max(np.abs(s)) / np.sqrt(abs(d)) > 5:
        return
    s = s / np.sqrt(d)
    assert equal_up_to_sign(lift(phi(s)), s, 1e-9)
