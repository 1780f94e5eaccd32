"""Connection and curvature of a bouncing closed universe, R = cosh(eta).

Run: python3 demos/curvature_of_a_bounce.py
"""

from __future__ import annotations

import numpy as np

from frwspin import A_components, Point, ScaleFactor, curvature, gamma_special
from frwspin.curvature import spinor_from_riemann

np.set_printoptions(precision=4, suppress=True)

sf = ScaleFactor.cosh(1.0)

print(" eta      R        scalar    -6/R^2-6R''/R^3   Ricci_00")
for eta in np.linspace(-1.5, 1.5, 7):
    p = Point("spherical", [eta, 1.0, 1.2, 0.4])
    cv = curvature("E", p, sf)
    r, _, r2 = sf.evaluate(eta)
    print(f"{eta:5.2f}  {r:7.4f}  {cv.scalar:9.5f}  {-6 / r**2 - 6 * r2 / r**3:9.5f}  {cv.ricci[0, 0]:9.5f}")

p = Point("north", [0.5, 0.2, -0.7, 1.1])
g = gamma_special("X", p, sf)
a = A_components("Psi-X", p, sf)
print("\nnonzero Gamma^k_ij in the X frame:", int(np.sum(np.abs(g) > 1e-12)))
print("A is complex; its conjugate is the antichiral connection:", np.allclose(a.Abar, a.A.conj()))

cv = curvature("X", p, sf)
print("spinor curvature from gamma-intertwining of Riemann matches the direct one:",
      np.allclose(cv.spinor, spinor_from_riemann(cv.riemann)))
print("Ricci tensor (diagonal):")
print(cv.ricci)
