"""Orthonormal non-holonomic frames, their brackets and Lorentz transitions.

A frame is stored as a 4x4 matrix whose column ``j`` holds the components
of frame vector ``j`` in the holonomic basis of the frame's home chart.
"""

from __future__ import annotations

import enum

import numpy as np

from . import dual
from ._linalg import MINKOWSKI, diag
from .charts import Chart, Point, check_domain, jacobian, metric_components, transition
from .scale_factor import ScaleFactor

FD_STEP = 1e-5


class ChartMismatchError(ValueError):
    """A frame was evaluated at a point given in a chart other than its home chart."""


class Frame(enum.Enum):
    X = ("X", Chart.NORTH)
    Y = ("Y", Chart.SOUTH)
    YTILDE = ("Ytilde", Chart.SOUTH)
    E = ("E", Chart.SPHERICAL)

    def __init__(self, label: str, chart: Chart):
        self.label = label
        self.chart = chart

    @classmethod
    def parse(cls, name: str | Frame) -> Frame:
        if isinstance(name, Frame):
            return name
        for f in cls:
            if f.label.lower() == name.lower() or f.name.lower() == name.lower():
                return f
        raise ValueError(f"unknown frame {name!r}; expected one of X, Y, Ytilde, E")


def frame_components(frame: Frame, coords, sf: ScaleFactor):
    """Frame matrix at (possibly dual) home-chart coordinates."""
    r = sf.radius(coords[..., 0])
    if frame is Frame.E:
        s1 = np.sin(coords[..., 1])
        s2 = np.sin(coords[..., 2])
        return diag(1.0 / r, 1.0 / r, 1.0 / (r * s1), 1.0 / (r * s1 * s2))
    n2 = coords[..., 1] ** 2 + coords[..., 2] ** 2 + coords[..., 3] ** 2
    a = (1.0 + n2) / (2.0 * r)
    if frame is Frame.YTILDE:
        return diag(1.0 / r, -a, -a, -a)
    return diag(1.0 / r, a, a, a)


def _home(frame: Frame, p: Point) -> Point:
    if p.chart is not frame.chart:
        raise ChartMismatchError(
            f"frame {frame.label} lives on the {frame.chart.value} chart, "
            f"point is in the {p.chart.value} chart")
    check_domain(p)
    return p


def frame_coefficients(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    frame = Frame.parse(frame)
    p = _home(frame, p)
    sf.evaluate(p.eta)
    return frame_components(frame, p.coords, sf)


def frame_metric(frame: Frame, coords, sf: ScaleFactor):
    f = frame_components(frame, coords, sf)
    g = metric_components(frame.chart, coords, sf)
    return np.einsum("...mi,...mn,...nj->...ij", f, g, f)


def metric_in_frame(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """F^T g F; equals the Minkowski matrix for every frame here."""
    frame = Frame.parse(frame)
    p = _home(frame, p)
    sf.evaluate(p.eta)
    return frame_metric(frame, p.coords, sf)


def along_frame(frame: Frame, fn, coords, sf: ScaleFactor):
    """Derivatives X_i(fn) of a field along each frame vector, stacked on a new axis -k-1.

    ``fn`` maps (possibly dual) home-chart coordinates to an array; the
    result has shape ``batch + (4,) + fn_shape`` with the frame index first
    after the batch dims. Tuple-valued ``fn`` gives a tuple of such arrays.
    """
    f = frame_components(frame, coords, sf)
    derivs = [dual.derivative(fn, coords, f[..., :, i]) for i in range(4)]
    batch = len(np.shape(dual.primal(coords))) - 1
    if isinstance(derivs[0], tuple):
        return tuple(np.stack(parts, axis=batch) for parts in zip(*derivs))
    return np.stack(derivs, axis=batch)


def _along_frame_fd(frame: Frame, fn, coords, sf: ScaleFactor, h: float):
    f = frame_components(frame, coords, sf)
    derivs = [(fn(coords + h * f[..., :, i]) - fn(coords - h * f[..., :, i])) / (2 * h)
              for i in range(4)]
    return np.stack(derivs, axis=coords.ndim - 1)


def commutator_components(frame: Frame, coords, sf: ScaleFactor, method: str = "ad", h: float = FD_STEP):
    """c[k, i, j] with [X_i, X_j] = sum_k c[k, i, j] X_k, at (possibly dual) coords."""
    f = frame_components(frame, coords, sf)

    def fn(c):
        return frame_components(frame, c, sf)

    if method == "ad":
        d = along_frame(frame, fn, coords, sf)
    elif method == "fd":
        d = _along_frame_fd(frame, fn, coords, sf, h)
    else:
        raise ValueError(f"unknown differentiation method {method!r}")
    # d[..., i, mu, j] = X_i(F^mu_j)
    bracket = np.einsum("...imj->...mij", d) - np.einsum("...jmi->...mij", d)
    return np.einsum("...km,...mij->...kij", np.linalg.inv(f), bracket)


def commutators(frame: Frame | str, p: Point, sf: ScaleFactor, method: str = "ad",
                h: float = FD_STEP) -> np.ndarray:
    """Commutation coefficients c[k, i, j], antisymmetric in (i, j).

    ``method="fd"`` swaps forward-mode AD for central differences with step
    ``h``; it exists as an independent cross-check.
    """
    frame = Frame.parse(frame)
    p = _home(frame, p)
    sf.evaluate(p.eta)
    return commutator_components(frame, p.coords, sf, method, h)


def jacobi_residual(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    """Max abs of sum_cyc(i,j,k) [X_i(c^m_jk) + c^l_jk c^m_il] over all free indices."""
    frame = Frame.parse(frame)
    p = _home(frame, p)
    c = commutator_components(frame, p.coords, sf)
    dc = along_frame(frame, lambda q: commutator_components(frame, q, sf), p.coords, sf)
    # term[m, i, j, k] = X_i(c^m_jk) + c^l_jk c^m_il
    term = np.einsum("...imjk->...mijk", dc) + np.einsum("...ljk,...mil->...mijk", c, c)
    cyc = term + np.einsum("...mjki->...mijk", term) + np.einsum("...mkij->...mijk", term)
    return np.max(np.abs(cyc), axis=(-4, -3, -2, -1))


def frame_transition(source: Frame | str, target: Frame | str, p: Point,
                     sf: ScaleFactor | None = None) -> np.ndarray:
    """Matrix M with source_i = sum_j M[j, i] target_j at p.

    ``p`` may be given in any chart covering the point; it is moved to both
    home charts. The result does not depend on the scale factor (both
    frames share the time leg 1/R d/d(eta)), so ``sf`` defaults to R = 1.
    """
    source, target = Frame.parse(source), Frame.parse(target)
    sf = sf or ScaleFactor.constant(1.0)
    ps = p if p.chart is source.chart else transition(p, source.chart)
    pt = ps if target.chart is source.chart else transition(ps, target.chart)
    sf.evaluate(ps.eta)
    f_src = frame_components(source, ps.coords, sf)
    f_tgt = frame_components(target, pt.coords, sf)
    j = jacobian(ps, target.chart)
    return np.linalg.inv(f_tgt) @ j @ f_src


def minkowski_residual(frame: Frame | str, p: Point, sf: ScaleFactor) -> np.ndarray:
    g = metric_in_frame(frame, p, sf)
    return np.max(np.abs(g - MINKOWSKI), axis=(-2, -1))
