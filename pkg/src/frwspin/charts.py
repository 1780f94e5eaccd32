"""Coordinate charts on R x S^3.

Three charts are supported: stereographic projection from the north pole
(coordinates x), from the south pole (coordinates y) and hyperspherical
coordinates (eta, chi, theta, phi). The time coordinate is shared by all
three. Coordinates are numpy arrays with trailing dimension 4; any leading
dimensions are treated as a batch of points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import dual
from ._linalg import diag
from .scale_factor import ScaleFactor

POLE_TOL = 1e-13


class ChartError(ValueError):
    """Point outside the domain of a chart or of a chart overlap."""


class Chart(enum.Enum):
    NORTH = "north"
    SOUTH = "south"
    SPHERICAL = "spherical"

    @classmethod
    def parse(cls, name: str | Chart) -> Chart:
        if isinstance(name, Chart):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown chart {name!r}; expected north, south or spherical") from None


@dataclass(frozen=True, eq=False)
class Point:
    """One event (or a batch of events) in a given chart."""

    chart: Chart
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        if c.shape[-1:] != (4,):
            raise ValueError(f"coordinates need a trailing dimension of 4, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coordinates must be finite")
        object.__setattr__(self, "chart", Chart.parse(self.chart))
        if self.chart is Chart.SPHERICAL:
            c[..., 3] = np.mod(c[..., 3], 2 * np.pi)
        c.flags.writeable = False
        object.__setattr__(self, "coords", c)

    @property
    def eta(self) -> np.ndarray:
        return self.coords[..., 0]

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.coords.shape[:-1]

    def __getitem__(self, idx) -> Point:
        return Point(self.chart, self.coords[idx])

    def __repr__(self) -> str:
        return f"Point({self.chart.value}, {self.coords.tolist()})"


@dataclass(frozen=True)
class EmbeddedPoint:
    z: np.ndarray
    radius: np.ndarray


# ---- domain checks ---------------------------------------------------------

def _spatial_norm(c) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(c)[..., 1:] ** 2, axis=-1))


def check_domain(p: Point) -> None:
    """Raise ChartError unless every point lies in the domain of its chart."""
    if p.chart is Chart.SPHERICAL:
        s = np.sin(p.coords[..., 1]) * np.sin(p.coords[..., 2])
        ok = (np.abs(s) > POLE_TOL) & (p.coords[..., 1] > 0) & (p.coords[..., 1] < np.pi) \
            & (p.coords[..., 2] > 0) & (p.coords[..., 2] < np.pi)
        if not np.all(ok):
            raise ChartError("spherical chart needs chi and theta strictly inside (0, pi)")


def check_overlap(p: Point, target: Chart) -> None:
    """Raise ChartError unless every point lies in the overlap of p.chart and target."""
    check_domain(p)
    charts = {p.chart, target}
    if p.chart in (Chart.NORTH, Chart.SOUTH) and len(charts) > 1:
        if np.any(_spatial_norm(p.coords) < POLE_TOL):
            name = "x" if p.chart is Chart.NORTH else "y"
            raise ChartError(f"|{name}| = 0 is a pole, outside the chart overlap")
        if target is Chart.SPHERICAL and np.any(
                np.hypot(p.coords[..., 1], p.coords[..., 2]) < POLE_TOL):
            raise ChartError("points on the polar axis (sin chi * sin theta = 0) "
                             "have no spherical coordinates")


# ---- coordinate maps (dual-friendly where differentiated) ------------------

def _invert(c):
    """Spatial inversion x -> x/|x|^2, shared by north<->south."""
    n2 = c[..., 1] ** 2 + c[..., 2] ** 2 + c[..., 3] ** 2
    return np.stack([c[..., 0], c[..., 1] / n2, c[..., 2] / n2, c[..., 3] / n2], axis=-1)


def _spherical_to_stereo(c, sign: int):
    chi, theta, phi = c[..., 1], c[..., 2], c[..., 3]
    s = np.sin(chi)
    den = 1.0 - sign * np.cos(chi)
    return np.stack([c[..., 0],
                     s * np.sin(theta) * np.sin(phi) / den,
                     s * np.sin(theta) * np.cos(phi) / den,
                     s * np.cos(theta) / den], axis=-1)


def _unit_embedding(p: Point) -> np.ndarray:
    """Point on the unit 3-sphere in R^4."""
    c = p.coords
    if p.chart is Chart.SPHERICAL:
        chi, theta, phi = c[..., 1], c[..., 2], c[..., 3]
        return np.stack([np.sin(chi) * np.sin(theta) * np.sin(phi),
                         np.sin(chi) * np.sin(theta) * np.cos(phi),
                         np.sin(chi) * np.cos(theta),
                         np.cos(chi)], axis=-1)
    n2 = np.sum(c[..., 1:] ** 2, axis=-1)
    sign = 1.0 if p.chart is Chart.NORTH else -1.0
    head = 2.0 * c[..., 1:] / (n2 + 1.0)[..., None]
    tail = sign * (n2 - 1.0) / (n2 + 1.0)
    return np.concatenate([head, tail[..., None]], axis=-1)


def _map(source: Chart, target: Chart):
    """Coordinate map source -> target usable on dual arrays, or None."""
    if source is target:
        return lambda c: c
    if {source, target} == {Chart.NORTH, Chart.SOUTH}:
        return _invert
    if source is Chart.SPHERICAL:
        sign = 1 if target is Chart.NORTH else -1
        return lambda c: _spherical_to_stereo(c, sign)
    return None


def transition(p: Point, target: Chart | str) -> Point:
    """Same event(s) expressed in the target chart."""
    target = Chart.parse(target)
    check_overlap(p, target)
    f = _map(p.chart, target)
    if f is not None:
        return Point(target, f(p.coords))
    u = _unit_embedding(p)
    chi = np.arctan2(np.hypot(np.hypot(u[..., 0], u[..., 1]), u[..., 2]), u[..., 3])
    theta = np.arctan2(np.hypot(u[..., 0], u[..., 1]), u[..., 2])
    phi = np.mod(np.arctan2(u[..., 0], u[..., 1]), 2 * np.pi)
    return Point(Chart.SPHERICAL, np.stack([p.coords[..., 0], chi, theta, phi], axis=-1))


def embed(p: Point, sf: ScaleFactor) -> EmbeddedPoint:
    """Embed the spatial part into R^4 as a point on the sphere of radius R(eta)."""
    check_domain(p)
    r, _, _ = sf.evaluate(p.eta)
    return EmbeddedPoint(np.asarray(r)[..., None] * _unit_embedding(p), np.asarray(r))


def metric_components(chart: Chart, coords, sf: ScaleFactor):
    """Diagonal holonomic metric of signature (+,-,-,-); accepts dual coordinates."""
    r = sf.radius(coords[..., 0])
    r2 = r * r
    if chart is Chart.SPHERICAL:
        s1 = np.sin(coords[..., 1])
        s2 = np.sin(coords[..., 2])
        return diag(r2, -r2, -r2 * s1 * s1, -r2 * s1 * s1 * s2 * s2)
    n2 = coords[..., 1] ** 2 + coords[..., 2] ** 2 + coords[..., 3] ** 2
    conf = -4.0 * r2 / ((n2 + 1.0) * (n2 + 1.0))
    return diag(r2, conf, conf, conf)


def holonomic_metric(p: Point, sf: ScaleFactor) -> np.ndarray:
    check_domain(p)
    sf.evaluate(p.eta)
    return metric_components(p.chart, p.coords, sf)


def jacobian(p: Point, target: Chart | str) -> np.ndarray:
    """Matrix d(target coords)/d(source coords), row = target index."""
    target = Chart.parse(target)
    check_overlap(p, target)
    f = _map(p.chart, target)
    if f is None:
        q = transition(p, target)
        return np.linalg.inv(jacobian(q, p.chart))
    cols = [dual.derivative(f, p.coords, np.broadcast_to(e, p.coords.shape))
            for e in np.eye(4)]
    return np.stack(cols, axis=-1)
