"""Walk through the charts and frames on R x S^3.

Run: python3 demos/frames_and_brackets.py
"""

from __future__ import annotations

import numpy as np

from frwspin import Point, ScaleFactor, commutators, frame_coefficients, frame_transition, transition
from frwspin.frames import metric_in_frame

np.set_printoptions(precision=4, suppress=True)

sf = ScaleFactor.cosh(1.0)
p = Point("north", [0.4, 0.8, -0.3, 1.2])

print("one event in the three charts")
for chart in ("north", "south", "spherical"):
    q = p if chart == "north" else transition(p, chart)
    print(f"  {chart:9s} {q.coords}")

print("\nX frame (columns are frame vectors in d/dx components)")
print(frame_coefficients("X", p, sf))
print("metric in the X frame:")
print(metric_in_frame("X", p, sf))

# The frame is not holonomic: its legs have non-trivial brackets.
c = commutators("X", p, sf)
r, dr, _ = sf.evaluate(p.eta)
print(f"\n[X0, X1] = c^1_01 X1 with c^1_01 = {c[1, 0, 1]:.6f}  (-R'/R^2 = {-dr / r**2:.6f})")
print(f"[X1, X2] = {c[1, 1, 2]:.6f} X1 + {c[2, 1, 2]:.6f} X2  (-x2/R, x1/R)")
print("finite differences agree to", np.max(np.abs(commutators("X", p, sf, method="fd") - c)))

print("\nthe Y frame is related to X by an improper Lorentz matrix")
s = frame_transition("Y", "X", p)
print(s)
print("det =", round(np.linalg.det(s), 12), " S @ S = I:", np.allclose(s @ s, np.eye(4)))

print("\nflipping the spatial legs of Y fixes the orientation")
st = frame_transition("Ytilde", "X", p)
print("det =", round(np.linalg.det(st), 12), " time-time entry =", st[0, 0])
