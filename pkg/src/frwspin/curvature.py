"""Riemann and spinor curvature, their intertwining, Ricci and scalar curvature.

``riemann[p, q, i, j]`` is R^p_qij and ``spinor[p, q, i, j]`` is the spinor
curvature with p, q spinor indices (0..3 for 1..4) and i, j frame indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._linalg import MINKOWSKI
from .charts import Point
from .connection import FramePair, _prepare, connection_fields
from .frames import along_frame
from .scale_factor import ScaleFactor
from .spin_bundles import DIRAC_GAMMA


@dataclass(frozen=True)
class Curvature:
    riemann: np.ndarray
    spinor: np.ndarray

    @property
    def ricci(self) -> np.ndarray:
        return ricci_from_riemann(self.riemann)

    @property
    def scalar(self) -> np.ndarray:
        return scalar_from_ricci(self.ricci)


def _curvature_form(conn, dconn, c):
    # conn[p, i, q] = K^p_iq; dconn[i, p, j, q] = X_i(K^p_jq)
    d = np.einsum("...ipjq->...pqij", dconn)
    quad = np.einsum("...pih,...hjq->...pqij", conn, conn)
    lin = np.einsum("...kij,...pkq->...pqij", c, conn)
    return d - np.swapaxes(d, -1, -2) + quad - np.swapaxes(quad, -1, -2) - lin


def curvature(pair: FramePair | str, p: Point, sf: ScaleFactor) -> Curvature:
    """Both curvature tensors from one AD pass over the connection.

    Results are cached per (pair, point batch, scale factor); points are
    immutable and hashed by identity, and the returned arrays are read-only.
    """
    return _curvature(FramePair.parse(pair), p, sf)


@lru_cache(maxsize=32)
def _curvature(pair: FramePair, p: Point, sf: ScaleFactor) -> Curvature:
    frame, p = _prepare(pair.frame, p, sf)
    coords = p.coords
    c, gamma, a = connection_fields(frame, coords, sf)
    dgamma, da = along_frame(frame, lambda q: connection_fields(frame, q, sf)[1:], coords, sf)
    r, sp = _curvature_form(gamma, dgamma, c), _curvature_form(a, da, c)
    r.flags.writeable = False
    sp.flags.writeable = False
    return Curvature(r, sp)


def riemann(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    return curvature(pair, p, sf).riemann


def spinor_curvature(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    return curvature(pair, p, sf).spinor


def ricci_from_riemann(r) -> np.ndarray:
    """R_qj = sum_p R^p_qpj."""
    return np.einsum("...pqpj->...qj", r)


def scalar_from_ricci(ric, g=MINKOWSKI) -> np.ndarray:
    return np.einsum("qj,...qj->...", np.linalg.inv(g), ric)


def ricci_and_scalar(pair: FramePair | str, p: Point, sf: ScaleFactor):
    cv = curvature(pair, p, sf)
    return cv.ricci, cv.scalar


def spinor_from_riemann(r, g=MINKOWSKI, dirac=DIRAC_GAMMA) -> np.ndarray:
    """(1/4) sum R^r_mij gamma^alpha_qn g^mn gamma^p_alpha r."""
    ginv = np.linalg.inv(g)
    return 0.25 * np.einsum("...rmij,nxq,mn,rpx->...pqij", r, dirac, ginv, dirac)


def intertwining_residual(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs difference between the spinor curvature and its image of R."""
    cv = curvature(pair, p, sf)
    return np.max(np.abs(cv.spinor - spinor_from_riemann(cv.riemann)), axis=(-4, -3, -2, -1))


def antisymmetry_residual(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs of R^p_qij + R^p_qji and of R_pqij + R_qpij (indices lowered)."""
    r = riemann(pair, p, sf)
    low = np.einsum("pk,...kqij->...pqij", MINKOWSKI, r)
    a = np.abs(r + np.swapaxes(r, -1, -2))
    b = np.abs(low + np.swapaxes(low, -3, -4))
    return np.maximum(np.max(a, axis=(-4, -3, -2, -1)), np.max(b, axis=(-4, -3, -2, -1)))


def bianchi_residual(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs of the cyclic sum R^p_qij + R^p_ijq + R^p_jqi."""
    r = riemann(pair, p, sf)
    cyc = r + np.einsum("...pijq->...pqij", r) + np.einsum("...pjqi->...pqij", r)
    return np.max(np.abs(cyc), axis=(-4, -3, -2, -1))


def ricci_offdiagonal(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    ric = ricci_and_scalar(pair, p, sf)[0]
    off = ric * (1 - np.eye(4))
    return np.max(np.abs(off), axis=(-2, -1))
