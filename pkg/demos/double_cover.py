"""Spin matrices behind the frame transitions.

Run: python3 demos/double_cover.py
"""

from __future__ import annotations

import numpy as np

from frwspin import Point, closed_form_lift, frame_transition, lift, phi
from frwspin.spin_bundles import basic_field, chiral_extension, p_reversion, transform
from frwspin.spin_lift import equal_up_to_sign

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# phi is two-to-one: s and -s have the same image
s = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
s /= np.sqrt(np.linalg.det(s))
m = phi(s)
print("a random Lorentz matrix phi(s):")
print(m)
print("phi(-s) == phi(s):", np.allclose(phi(-s), m))
t = lift(m)
print("lift recovers s up to sign:", equal_up_to_sign(t, s, 1e-9))

# the Ytilde -> X transition lifts to a closed-form unitary matrix
p = Point("south", [0.0, 0.3, -1.1, 0.7])
st = closed_form_lift(("Ytilde", "X"), p)
print("\nspin matrix for Ytilde -> X at", p.coords[1:])
print(st)
print("covers the Lorentz transition:", np.allclose(phi(st), frame_transition("Ytilde", "X", p)))
print("squares to -1:", np.allclose(st @ st, -np.eye(2)))

# Dirac version: the gamma matrices are invariant under (ext(s), phi(s))
g = basic_field("gamma")
moved = transform(g, chiral_extension(s), phi(s))
print("\ngamma invariant under a canonical pair change:", np.allclose(moved.values, g.values))

# swapping the chiral halves gives the off-block matrix used for the Y frame
print("\nP-reversed Dirac transition (off-diagonal blocks):")
print(p_reversion(chiral_extension(st), "source"))
