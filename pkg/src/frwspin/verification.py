"""Seeded end-to-end verification: every reference table plus the invariant suites.

Invariants are reported alongside the table comparisons as pseudo-quantities
``invariant.<name>`` whose reference value is 0 and whose computed value is
the worst residual over the sampled points.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import reference as ref
from ._linalg import MINKOWSKI, SPACE_INVERSION
from .charts import Chart, Point, embed, holonomic_metric, jacobian, transition
from .connection import (FramePair, gamma_field_residual, gamma_general, gamma_special,
                         metric_compatibility_residual, torsion_residual)
from .curvature import (antisymmetry_residual, bianchi_residual, curvature,
                        intertwining_residual, ricci_offdiagonal)
from .frames import Frame, commutators, frame_transition, jacobi_residual, minkowski_residual
from .scale_factor import ScaleFactor, parse_spec
from .spin_bundles import (P_PERMUTATION, FramePairClass, basic_field,
                           chiral_extension, classify_frame_pair, clifford_residual, transform)
from .spin_lift import PAULI, closed_form_lift, lift, phi, spherical_stilde

DEFAULT_SCALES = ("cosh:1.0", "const:2.0")
SAFE_LOW, SAFE_HIGH = 0.2, 3.0
ANGLE_MARGIN = 0.2
NOISE_FLOOR = 1e-9
FRAME_CHART = {Frame.X: Chart.NORTH, Frame.Y: Chart.SOUTH, Frame.YTILDE: Chart.SOUTH, Frame.E: Chart.SPHERICAL}


@dataclass(frozen=True)
class VerifyConfig:
    points: int = 100
    seed: int = 42
    tol: float = 1e-9
    scales: tuple[str, ...] = DEFAULT_SCALES

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("point count must be at least 1")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.scales:
            raise ValueError("at least one scale factor is required")
        for s in self.scales:
            parse_spec(s)

    def to_dict(self) -> dict:
        return {"points": self.points, "seed": self.seed, "tol": self.tol, "scales": list(self.scales)}


# ---- sampling ---------------------------------------------------------------

def sample_points(chart: Chart | str, n: int, rng: np.random.Generator) -> Point:
    """n events uniformly in the safe box of a chart, clear of poles."""
    chart = Chart.parse(chart)
    eta = rng.uniform(-1.0, 1.0, n)
    if chart is Chart.SPHERICAL:
        lo, hi = ANGLE_MARGIN, np.pi - ANGLE_MARGIN
        c = np.stack([eta, rng.uniform(lo, hi, n), rng.uniform(lo, hi, n),
                      rng.uniform(0.0, 2 * np.pi, n)], axis=-1)
    else:
        mag = rng.uniform(SAFE_LOW, SAFE_HIGH, (n, 3))
        sign = rng.choice([-1.0, 1.0], (n, 3))
        c = np.concatenate([eta[:, None], mag * sign], axis=-1)
    return Point(chart, c)


def random_sl2c(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random SL(2,C) matrices with entries of order one."""
    s = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    det = np.linalg.det(s)
    return s / np.sqrt(det)[:, None, None]


@dataclass
class Samples:
    """Point sets shared by every check in one run."""

    charts: dict
    sl2c: np.ndarray
    rng: np.random.Generator = field(repr=False)
    _moved: dict = field(default_factory=dict, repr=False)

    def moved(self, source: Chart, target: Chart) -> Point:
        """The source-chart samples re-expressed in the target chart (cached)."""
        if source is target:
            return self.charts[source]
        key = (source, target)
        if key not in self._moved:
            self._moved[key] = transition(self.charts[source], target)
        return self._moved[key]

    def at(self, chart: Chart) -> Point:
        return self.charts[chart]

    def for_frame(self, frame: Frame) -> Point:
        return self.charts[FRAME_CHART[frame]]


def draw_samples(config: VerifyConfig) -> Samples:
    rng = np.random.default_rng(config.seed)
    charts = {c: sample_points(c, config.points, rng) for c in Chart}
    return Samples(charts, random_sl2c(10 * config.points, rng), rng)


# ---- invariant checks -------------------------------------------------------

def _worst(x) -> float:
    return float(np.max(np.abs(np.asarray(x)))) if np.size(x) else 0.0


def _angle_diff(a, b):
    d = np.asarray(a) - np.asarray(b)
    return (d + np.pi) % (2 * np.pi) - np.pi


def _round_trip(s: Samples, sf) -> float:
    out = 0.0
    for a in Chart:
        for b in Chart:
            if a is b:
                continue
            p = s.at(a)
            back = transition(transition(p, b), a).coords
            d = back - p.coords
            if a is Chart.SPHERICAL:
                d[..., 3] = _angle_diff(back[..., 3], p.coords[..., 3])
            out = max(out, _worst(d))
    return out


def _embedding(s: Samples, sf) -> float:
    out = 0.0
    for a in Chart:
        p = s.at(a)
        z = embed(p, sf)
        out = max(out, _worst(np.linalg.norm(z.z, axis=-1) - z.radius))
        for b in Chart:
            if b is not a:
                out = max(out, _worst(embed(transition(p, b), sf).z - z.z))
    return out


def _jacobian_inverse(s: Samples, sf) -> float:
    out = 0.0
    for a in Chart:
        for b in Chart:
            if a is b:
                continue
            p = s.at(a)
            prod = jacobian(transition(p, b), a) @ jacobian(p, b)
            out = max(out, _worst(prod - np.eye(4)))
    return out


def _metric_transport(s: Samples, sf) -> float:
    """Holonomic metrics agree as tensors across every chart overlap."""
    out = 0.0
    for a in Chart:
        for b in Chart:
            if a is b:
                continue
            p = s.at(a)
            j = jacobian(p, b)
            pulled = np.einsum("...ma,...mn,...nb->...ab", j, holonomic_metric(transition(p, b), sf), j)
            out = max(out, _worst(pulled - holonomic_metric(p, sf)))
    return out


def _scale_factor_fd(s: Samples, sf, h: float = 1e-5) -> float:
    eta = s.at(Chart.NORTH).eta
    r, d1, d2 = sf.evaluate(eta)
    rp, d1p, _ = sf.evaluate(eta + h)
    rm, d1m, _ = sf.evaluate(eta - h)
    e1 = np.abs((rp - rm) / (2 * h) - d1) / np.maximum(np.abs(d1), 1.0)
    e2 = np.abs((d1p - d1m) / (2 * h) - d2) / np.maximum(np.abs(d2), 1.0)
    return max(_worst(e1), _worst(e2))


def _per_frame(fn) -> Callable:
    return lambda s, sf: max(_worst(fn(f, s.for_frame(f), sf)) for f in Frame)


def _fd_vs_ad(f, p, sf):
    return commutators(f, p, sf, method="fd") - commutators(f, p, sf)


def _det_s(s: Samples, sf) -> float:
    return _worst(np.linalg.det(frame_transition("Y", "X", s.at(Chart.NORTH))) + 1)


def _lorentz_defect(m) -> np.ndarray:
    gram = np.swapaxes(m, -1, -2) @ MINKOWSKI @ m - MINKOWSKI
    return np.maximum(np.max(np.abs(gram), axis=(-2, -1)),
                      np.maximum(np.abs(np.linalg.det(m) - 1), np.maximum(0.0, 1.0 - m[..., 0, 0])))


def _stilde_so_plus(s: Samples, sf) -> float:
    return _worst(_lorentz_defect(frame_transition("Ytilde", "X", s.at(Chart.NORTH))))


def _s_squared(s: Samples, sf) -> float:
    m = frame_transition("Y", "X", s.at(Chart.NORTH))
    return _worst(m @ m - np.eye(4))


def _transition_round_trip(s: Samples, sf) -> float:
    out = 0.0
    p = s.at(Chart.NORTH)
    for a in Frame:
        for b in Frame:
            if a is not b:
                out = max(out, _worst(frame_transition(b, a, p) @ frame_transition(a, b, p) - np.eye(4)))
    return out


def _lorentz_factorization(s: Samples, sf) -> float:
    p = s.at(Chart.SPHERICAL)
    prod = frame_transition("Ytilde", "X", p) @ frame_transition("E", "Ytilde", p)
    return _worst(frame_transition("E", "X", p) - prod)


def _lift_round_trip(s: Samples, sf) -> float:
    ls = phi(s.sl2c)
    return max(_worst(phi(lift(m)) - m) for m in ls)


def _lift_recovers(s: Samples, sf) -> float:
    ls = phi(s.sl2c)
    return max(min(_worst(lift(m) - x), _worst(lift(m) + x)) for m, x in zip(ls, s.sl2c))


def _phi_homomorphism(s: Samples, sf) -> float:
    a, b = s.sl2c[0::2], s.sl2c[1::2]
    n = min(len(a), len(b))
    a, b = a[:n], b[:n]
    return _worst(phi(a @ b) - phi(a) @ phi(b))


_CLOSED = [(("Ytilde", "X"), Chart.SOUTH), (("X", "Ytilde"), Chart.NORTH),
           (("E", "X"), Chart.SPHERICAL), (("E", "Ytilde"), Chart.SPHERICAL)]


def _closed_forms(s: Samples, sf) -> float:
    out = 0.0
    for pair, chart in _CLOSED:
        p = s.at(chart)
        out = max(out, _worst(phi(closed_form_lift(pair, p)) - frame_transition(*pair, p)))
    return out


def _spin_factorization(s: Samples, sf) -> float:
    p = s.at(Chart.SPHERICAL)
    prod = spherical_stilde(p) @ closed_form_lift(("E", "Ytilde"), p)
    hat = closed_form_lift(("E", "X"), p)
    return min(_worst(hat - prod), _worst(hat + prod))


def _stilde_identities(s: Samples, sf) -> float:
    """Stilde^2 = -I, det = 1 and Stilde = -Ttilde at the same event."""
    p = s.at(Chart.NORTH)
    st = closed_form_lift(("Ytilde", "X"), p)
    tt = closed_form_lift(("X", "Ytilde"), p)
    return max(_worst(st @ st + np.eye(2)), _worst(np.linalg.det(st) - 1),
               _worst(np.linalg.det(tt) - 1), _worst(st + tt))


def _clifford(s: Samples, sf) -> float:
    return clifford_residual()


def _pauli_traces(s: Samples, sf) -> float:
    tr = np.einsum("paa->p", PAULI)
    herm = PAULI - np.conj(np.swapaxes(PAULI, -1, -2))
    return max(_worst(tr - np.array([2, 0, 0, 0])), _worst(herm))


def _gamma_equivariance(s: Samples, sf) -> float:
    g = basic_field("gamma")
    out = 0.0
    for x in s.sl2c:
        out = max(out, _worst(transform(g, chiral_extension(x), phi(x)).values - g.values))
    return out


def _pauli_equivariance(s: Samples, sf) -> float:
    g = basic_field("G")
    return max(_worst(transform(g, x, phi(x)).values - g.values) for x in s.sl2c)


def _extension_homomorphism(s: Samples, sf) -> float:
    a, b = s.sl2c[0::2], s.sl2c[1::2]
    n = min(len(a), len(b))
    a, b = a[:n], b[:n]
    return _worst(chiral_extension(a @ b) - chiral_extension(a) @ chiral_extension(b))


def _pair_classes(s: Samples, sf) -> float:
    """Each canonical pair classifies as declared (0) or not (1)."""
    reps = {FramePairClass.CANON_CHIRAL: (np.eye(4), np.eye(4)),
            FramePairClass.P_REVERSE_ANTICHIRAL: (P_PERMUTATION, SPACE_INVERSION)}
    names = ("d4", "H", "D")
    bad = 0
    for pair in FramePair:
        spin, lor = reps[pair.kind]
        fields = [transform(basic_field(n), spin, lor) for n in names]
        bad += classify_frame_pair(*fields) is not pair.kind
    return float(bad)


def _gamma_general(s: Samples, sf) -> float:
    return max(_worst(gamma_general(f, s.for_frame(f), sf) - gamma_special(f, s.for_frame(f), sf))
               for f in Frame)


def _gamma_field(s: Samples, sf) -> float:
    return max(_worst(gamma_field_residual(p, s.for_frame(p.frame), sf)) for p in FramePair)


def _frame_coincidence(s: Samples, sf) -> float:
    """Raw Riemann component arrays in X, Y, Ytilde and E coincide at the same events."""
    base = curvature(Frame.X, s.moved(Chart.SPHERICAL, Chart.NORTH), sf).riemann
    return max(_worst(curvature(f, s.moved(Chart.SPHERICAL, f.chart), sf).riemann - base)
               for f in (Frame.Y, Frame.YTILDE, Frame.E))


@dataclass(frozen=True)
class Invariant:
    name: str
    check: Callable[[Samples, ScaleFactor], float]
    tol: float
    scale_free: bool = False


INVARIANTS = [
    Invariant("scale_factor.fd_derivatives", _scale_factor_fd, 1e-7),
    Invariant("charts.round_trip", _round_trip, 1e-12, True),
    Invariant("charts.embedding", _embedding, 1e-10),
    Invariant("charts.jacobian_inverse", _jacobian_inverse, 1e-10, True),
    Invariant("charts.metric_transport", _metric_transport, 1e-9),
    Invariant("frames.minkowski", _per_frame(minkowski_residual), 1e-10),
    Invariant("frames.fd_vs_ad", _per_frame(_fd_vs_ad), 1e-6),
    Invariant("frames.jacobi", _per_frame(jacobi_residual), 1e-8),
    Invariant("frames.det_Y_to_X", _det_s, 1e-10, True),
    Invariant("frames.Ytilde_to_X_so_plus", _stilde_so_plus, 1e-10, True),
    Invariant("frames.S_squared", _s_squared, 1e-10, True),
    Invariant("frames.transition_round_trip", _transition_round_trip, 1e-10, True),
    Invariant("frames.factorization", _lorentz_factorization, 1e-9, True),
    Invariant("lift.round_trip", _lift_round_trip, 1e-9, True),
    Invariant("lift.recovers_up_to_sign", _lift_recovers, 1e-9, True),
    Invariant("lift.phi_homomorphism", _phi_homomorphism, 1e-9, True),
    Invariant("lift.closed_forms", _closed_forms, 1e-9, True),
    Invariant("lift.factorization", _spin_factorization, 1e-9, True),
    Invariant("lift.Stilde_identities", _stilde_identities, 1e-10, True),
    Invariant("bundles.clifford", _clifford, 0.0, True),
    Invariant("bundles.pauli_traces", _pauli_traces, 0.0, True),
    Invariant("bundles.pauli_equivariance", _pauli_equivariance, 1e-9, True),
    Invariant("bundles.gamma_equivariance", _gamma_equivariance, 1e-9, True),
    Invariant("bundles.extension_homomorphism", _extension_homomorphism, 1e-9, True),
    Invariant("bundles.pair_classes", _pair_classes, 0.0, True),
    Invariant("connection.general_vs_special", _gamma_general, 1e-12),
    Invariant("connection.torsion", _per_frame(torsion_residual), 1e-10),
    Invariant("connection.metric_compatibility", _per_frame(metric_compatibility_residual), 1e-10),
    Invariant("connection.gamma_field", _gamma_field, 1e-9),
    Invariant("curvature.antisymmetry", _per_frame(antisymmetry_residual), 1e-10),
    Invariant("curvature.bianchi", _per_frame(bianchi_residual), 1e-9),
    Invariant("curvature.intertwining", _per_frame(intertwining_residual), 1e-9),
    Invariant("curvature.ricci_offdiagonal", _per_frame(ricci_offdiagonal), 1e-10),
    Invariant("curvature.frame_coincidence", _frame_coincidence, 1e-9),
]


def effective_tol(own: float, tol: float) -> float:
    """Tighten an invariant's own tolerance when the run tolerance is below the noise floor."""
    return own * min(1.0, tol / NOISE_FLOOR)


def run_invariant(inv: Invariant, samples: Samples, sf: ScaleFactor, tol: float,
                  label: str) -> ref.ReportEntry:
    residual = float(inv.check(samples, sf))
    limit = effective_tol(inv.tol, tol)
    status = ref.MATCH if residual <= limit else ref.MISMATCH
    return ref.ReportEntry(label, (), complex(residual), 0j, residual, status)


# ---- full run ---------------------------------------------------------------

def _reference_jobs():
    """(id, frame or None) for every registered table."""
    for id, entry in sorted(ref.REFERENCES.items()):
        if entry.frame_dependent:
            for f in Frame:
                yield id, f
        else:
            yield id, None


def run_verification(config: VerifyConfig = VerifyConfig()) -> ref.ComparisonReport:
    """Compare every reference table and check every invariant, per scale factor."""
    samples = draw_samples(config)
    report = ref.ComparisonReport()
    scale_free_done = set()
    for spec in config.scales:
        sf = parse_spec(spec)
        tag = f"[{sf.spec()}]"
        for id, frame in _reference_jobs():
            entry = ref.get_entry(id)
            chart = FRAME_CHART[frame] if frame is not None else entry.chart
            part = ref.compare(id, samples.at(chart), sf, config.tol, frame=frame)
            for e in part.entries:
                report.entries.append(ref.ReportEntry(e.quantity + tag, e.indices, e.computed,
                                                      e.reference, e.abs_err, e.status))
        for inv in INVARIANTS:
            if inv.scale_free:
                if inv.name in scale_free_done:
                    continue
                scale_free_done.add(inv.name)
                label = f"invariant.{inv.name}"
            else:
                label = f"invariant.{inv.name}{tag}"
            report.entries.append(run_invariant(inv, samples, sf, config.tol, label))
    return report.sorted()


def covered_ids(report: ref.ComparisonReport) -> set[str]:
    """Reference ids that produced at least one entry in a report."""
    out = set()
    for e in report.entries:
        base = e.quantity.split("[")[0].split("@")[0]
        if base in ref.REFERENCES:
            out.add(base)
    return out


# ---- serialization ----------------------------------------------------------

def report_dict(config: VerifyConfig, report: ref.ComparisonReport) -> dict:
    report = report.sorted()
    return {"config": config.to_dict(), "entries": [e.to_dict() for e in report.entries],
            "summary": report.summary}


def to_json(config: VerifyConfig, report: ref.ComparisonReport) -> str:
    return json.dumps(report_dict(config, report), indent=1, sort_keys=True) + "\n"


CSV_FIELDS = ["quantity", "indices", "computed_re", "computed_im", "reference_re",
              "reference_im", "abs_err", "status"]


def to_csv(config: VerifyConfig, report: ref.ComparisonReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for e in report.sorted().entries:
        w.writerow([e.quantity, " ".join(str(i) for i in e.indices),
                    repr(e.computed.real), repr(e.computed.imag),
                    repr(e.reference.real), repr(e.reference.imag), repr(e.abs_err), e.status])
    return buf.getvalue()
