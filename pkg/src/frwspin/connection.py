"""Metric connection components: spatial Gamma, spinor A and conjugate Abar.

Index layout: ``gamma[k, i, j]`` is Gamma^k_ij with nabla_{X_i} X_j =
sum_k Gamma^k_ij X_k, and ``A[a, i, b]`` is A^a_{ib} with spinor indices
0..3 standing for 1..4.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._linalg import MINKOWSKI
from .charts import Point
from .frames import Frame, _home, along_frame, commutator_components, frame_metric
from .scale_factor import ScaleFactor
from .spin_bundles import DIRAC_GAMMA, FramePairClass


class FramePairError(ValueError):
    """The requested spinor/tangent frame pair is not canonically associated."""


class FramePair(enum.Enum):
    """The canonically associated Dirac/tangent frame pairs used on R x S^3."""

    PSI_X = ("Psi-X", Frame.X, FramePairClass.CANON_CHIRAL)
    PHITILDE_YTILDE = ("Phitilde-Ytilde", Frame.YTILDE, FramePairClass.CANON_CHIRAL)
    PHI_Y = ("Phi-Y", Frame.Y, FramePairClass.P_REVERSE_ANTICHIRAL)
    XI_E = ("Xi-E", Frame.E, FramePairClass.CANON_CHIRAL)

    def __init__(self, label: str, frame: Frame, kind: FramePairClass):
        self.label = label
        self.frame = frame
        self.kind = kind

    @classmethod
    def parse(cls, name: str | FramePair | Frame) -> FramePair:
        if isinstance(name, FramePair):
            return name
        if isinstance(name, Frame):
            return cls.for_frame(name)
        key = name.lower()
        for pair in cls:
            if key in (pair.label.lower(), pair.name.lower(), pair.frame.label.lower()):
                return pair
        raise FramePairError(
            f"{name!r} is not a canonically associated frame pair; "
            f"expected one of {[p.label for p in cls]} (or X, Ytilde, Y, E)")

    @classmethod
    def for_frame(cls, frame: Frame) -> FramePair:
        return next(p for p in cls if p.frame is frame)


@dataclass(frozen=True)
class ConnectionComponents:
    gamma: np.ndarray
    A: np.ndarray

    @property
    def Abar(self) -> np.ndarray:
        return np.conj(self.A)


def gamma_from_commutators(c, g=MINKOWSKI):
    """Gamma^k_ij for a frame with constant metric g, from c^k_ij."""
    ginv = np.linalg.inv(g)
    t1 = np.einsum("...sir,kr,sj->...kij", c, ginv, g)
    t2 = np.einsum("...sjr,kr,si->...kij", c, ginv, g)
    return 0.5 * (c - t1 - t2)


def _spinor_kernel(g, dirac):
    # K[a, b, n, s] collects the constant factors so that A = K . Gamma
    return 0.25 * np.einsum("mxb,ms,nax->abns", dirac, np.linalg.inv(g), dirac)


_KERNEL = _spinor_kernel(MINKOWSKI, DIRAC_GAMMA)


def spinor_from_gamma(gamma, g=MINKOWSKI, dirac=DIRAC_GAMMA):
    """A^a_ib = (1/4) sum gamma^alpha_{bm} Gamma^n_is g^{ms} gamma^a_{alpha n}."""
    k = _KERNEL if g is MINKOWSKI and dirac is DIRAC_GAMMA else _spinor_kernel(g, dirac)
    return np.einsum("abns,...nis->...aib", k, gamma)


def connection_fields(frame: Frame, coords, sf: ScaleFactor):
    """(c, Gamma, A) at (possibly dual) coordinates for an orthonormal frame."""
    c = commutator_components(frame, coords, sf)
    gamma = gamma_from_commutators(c)
    return c, gamma, spinor_from_gamma(gamma)


def _prepare(frame, p: Point, sf: ScaleFactor) -> tuple[Frame, Point]:
    frame = Frame.parse(frame)
    p = _home(frame, p)
    sf.evaluate(p.eta)
    return frame, p


def gamma_special(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Gamma from commutators only; valid because the frame metric is Minkowski."""
    frame, p = _prepare(frame, p, sf)
    return gamma_from_commutators(commutator_components(frame, p.coords, sf))


def gamma_general(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Gamma including the frame-derivative terms of the metric.

    The metric in the frame and its derivatives along the frame are
    computed, not assumed constant.
    """
    frame, p = _prepare(frame, p, sf)
    coords = p.coords
    c = commutator_components(frame, coords, sf)
    g = frame_metric(frame, coords, sf)
    ginv = np.linalg.inv(g)
    dg = along_frame(frame, lambda q: frame_metric(frame, q, sf), coords, sf)
    # dg[..., i, r, j] = X_i(g_rj)
    lie = (np.einsum("...irj->...rij", dg) + np.einsum("...jir->...rij", dg)
           - np.einsum("...rij->...rij", dg))
    t0 = 0.5 * np.einsum("...kr,...rij->...kij", ginv, lie)
    t1 = np.einsum("...sir,...kr,...sj->...kij", c, ginv, g)
    t2 = np.einsum("...sjr,...kr,...si->...kij", c, ginv, g)
    return t0 + 0.5 * (c - t1 - t2)


def A_components(pair: FramePair | str, p: Point, sf: ScaleFactor) -> ConnectionComponents:
    """Gamma, A and (via conjugation) Abar in a canonically associated pair."""
    pair = FramePair.parse(pair)
    frame, p = _prepare(pair.frame, p, sf)
    _, gamma, a = connection_fields(frame, p.coords, sf)
    return ConnectionComponents(gamma, a)


def torsion_residual(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs of Gamma^k_ij - Gamma^k_ji - c^k_ij."""
    frame, p = _prepare(frame, p, sf)
    c, gamma, _ = connection_fields(frame, p.coords, sf)
    return np.max(np.abs(gamma - np.swapaxes(gamma, -1, -2) - c), axis=(-3, -2, -1))


def metric_compatibility_residual(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs of Gamma_kij + Gamma_jik (lowered with the Minkowski metric).

    For a constant frame metric, nabla g = 0 is exactly this antisymmetry.
    """
    gamma = gamma_special(frame, p, sf)
    low = np.einsum("kr,...rij->...kij", MINKOWSKI, gamma)
    # low[k, i, j] = Gamma_{k i j}; compatibility: Gamma_{k i j} + Gamma_{j i k} = 0
    return np.max(np.abs(low + np.einsum("...jik->...kij", low)), axis=(-3, -2, -1))


def gamma_field_residual(pair: FramePair | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs of the covariant derivative of the Dirac gamma-field.

    nabla_i gamma^a_{bq} = A^a_ic gamma^c_bq - A^c_ib gamma^a_cq - Gamma^r_iq gamma^a_br,
    the frame-derivative term vanishing since the components are constant.
    """
    conn = A_components(pair, p, sf)
    gm = DIRAC_GAMMA  # gm[q, a, b]
    t1 = np.einsum("...aic,qcb->...iqab", conn.A, gm)
    t2 = np.einsum("...cib,qac->...iqab", conn.A, gm)
    t3 = np.einsum("...riq,rab->...iqab", conn.gamma, gm)
    return np.max(np.abs(t1 - t2 - t3), axis=(-4, -3, -2, -1))
