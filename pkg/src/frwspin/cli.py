"""Command-line front end: ``eval``, ``verify`` and ``lift``.

Exit codes: 0 success, 1 verification or group-membership failure,
2 I/O failure, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

import numpy as np

from . import verification
from .charts import Chart, ChartError, Point, holonomic_metric, transition
from .connection import A_components, FramePair, FramePairError, gamma_special
from .curvature import curvature
from .frames import ChartMismatchError, Frame, commutators, frame_coefficients, frame_transition
from .scale_factor import ScaleFactorError, parse_spec
from .spin_bundles import basic_field
from .spin_lift import ConditioningError, GroupMembershipError, lift, phi

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3

QUANTITIES = ("metric", "frames", "commutators", "transition", "gamma", "A", "riemann",
              "spinor-curvature", "ricci", "scalar", "G", "dirac-gamma")
HOME_FRAME = {Chart.NORTH: Frame.X, Chart.SOUTH: Frame.Y, Chart.SPHERICAL: Frame.E}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---- parsing helpers ----------------------------------------------------------

def _numbers(text: str) -> list[float]:
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise UsageError(f"could not parse numbers from {text!r}") from None


def parse_point(chart: Chart, texts: list[str]) -> Point:
    rows = []
    for t in texts:
        vals = _numbers(t)
        if len(vals) != 4:
            raise UsageError(f"a point needs 4 coordinates (eta and three spatial), got {t!r}")
        rows.append(vals)
    try:
        return Point(chart, np.array(rows))
    except ValueError as e:
        raise UsageError(str(e)) from None


def parse_frame_pair(text: str | None):
    """``"Y->X"`` style transition pair, or None."""
    if text is None:
        return None
    parts = re.split(r"\s*(?:->|:|,)\s*", text.strip())
    if len(parts) != 2:
        raise UsageError(f"transition needs a pair like 'Y->X', got {text!r}")
    try:
        return Frame.parse(parts[0]), Frame.parse(parts[1])
    except ValueError as e:
        raise UsageError(str(e)) from None


def _pair(text: str | None, chart: Chart) -> FramePair:
    if text is None:
        return FramePair.for_frame(HOME_FRAME[chart])
    try:
        return FramePair.parse(text)
    except FramePairError as e:
        raise UsageError(str(e)) from None


def _at_home(p: Point, frame: Frame) -> Point:
    return p if p.chart is frame.chart else transition(p, frame.chart)


# ---- eval -------------------------------------------------------------------

def evaluate(quantity: str, chart: Chart, p: Point, sf, frame_pair: str | None):
    """(values with a leading point axis, index offsets, extra fields) for one quantity."""
    extra = {}
    if quantity == "metric":
        return holonomic_metric(p, sf), (0, 0), extra
    if quantity == "transition":
        src, tgt = parse_frame_pair(frame_pair) or (Frame.Y, Frame.X)
        m = frame_transition(src, tgt, p, sf)
        extra["source"], extra["target"] = src.label, tgt.label
        extra["det"] = [float(d) for d in np.linalg.det(m)]
        return m, (0, 0), extra
    if quantity in ("G", "dirac-gamma"):
        v = basic_field("G" if quantity == "G" else "gamma").values
        return np.broadcast_to(v, p.batch_shape + v.shape), (1, 1, 0), extra
    pair = _pair(frame_pair, chart)
    q = _at_home(p, pair.frame)
    extra["frame"] = pair.frame.label
    extra["frame_pair"] = pair.label
    if quantity == "frames":
        return frame_coefficients(pair.frame, q, sf), (0, 0), extra
    if quantity == "commutators":
        return commutators(pair.frame, q, sf), (0, 0, 0), extra
    if quantity == "gamma":
        return gamma_special(pair.frame, q, sf), (0, 0, 0), extra
    if quantity == "A":
        return A_components(pair, q, sf).A, (1, 0, 1), extra
    cv = curvature(pair, q, sf)
    if quantity == "riemann":
        return cv.riemann, (0, 0, 0, 0), extra
    if quantity == "spinor-curvature":
        return cv.spinor, (1, 1, 0, 0), extra
    if quantity == "ricci":
        return cv.ricci, (0, 0), extra
    return cv.scalar, (), extra


def _components(values, offsets) -> list[dict]:
    values = np.asarray(values, dtype=complex)
    out = []
    for k in range(values.shape[0]):
        for idx in np.ndindex(*values.shape[1:]):
            v = values[(k,) + idx]
            out.append({"point": k, "indices": [i + o for i, o in zip(idx, offsets)],
                        "value": [float(v.real), float(v.imag)]})
    return out


def cmd_eval(args) -> tuple[str, int]:
    quantity = args.quantity
    try:
        chart = Chart.parse(args.chart)
        sf = parse_spec(args.scale)
    except ValueError as e:
        raise UsageError(str(e)) from None
    p = parse_point(chart, args.point or ["0,1,0,0"])
    try:
        values, offsets, extra = evaluate(quantity, chart, p, sf, args.frame_pair)
    except (ChartError, ChartMismatchError, ScaleFactorError) as e:
        raise UsageError(str(e)) from None
    comps = _components(values, offsets)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["point", "indices", "re", "im"])
        for c in comps:
            w.writerow([c["point"], " ".join(map(str, c["indices"])), repr(c["value"][0]), repr(c["value"][1])])
        return buf.getvalue(), EXIT_OK
    doc = {"quantity": quantity, "chart": chart.value, "scale": sf.spec(),
           "points": p.coords.tolist(), **extra, "components": comps}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n", EXIT_OK


# ---- verify -----------------------------------------------------------------

def cmd_verify(args) -> tuple[str, int]:
    try:
        config = verification.VerifyConfig(points=args.points, seed=args.seed, tol=args.tol,
                                            scales=tuple(args.scale or verification.DEFAULT_SCALES))
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = verification.run_verification(config)
    text = (verification.to_csv if args.format == "csv" else verification.to_json)(config, report)
    s = report.summary
    print(f"verify: {s['matches']} match, {s['mismatches']} mismatch, {s['errata']} suspected-erratum",
          file=sys.stderr)
    for e in report.by_status("mismatch")[:20]:
        print(f"  mismatch {e.quantity} {tuple(e.indices)} abs_err={e.abs_err:.3e}", file=sys.stderr)
    return text, EXIT_OK if report.ok else EXIT_FAIL


# ---- lift -------------------------------------------------------------------

def _complex_pair(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def cmd_lift(args) -> tuple[str, int]:
    vals = _numbers(" ".join(args.matrix))
    if len(vals) != 16:
        raise UsageError(f"lift needs 16 reals (row-major 4x4), got {len(vals)}")
    m = np.array(vals).reshape(4, 4)
    try:
        s = lift(m)
    except (GroupMembershipError, ConditioningError) as e:
        print(f"lift: {e}", file=sys.stderr)
        return "", EXIT_FAIL
    residual = float(np.max(np.abs(phi(s) - m)))
    det = np.linalg.det(s)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "re", "im"])
        for (i, j), z in np.ndenumerate(s):
            w.writerow([i, j, repr(float(z.real)), repr(float(z.imag))])
        w.writerow(["det", "", repr(float(det.real)), repr(float(det.imag))])
        w.writerow(["residual", "", repr(residual), "0.0"])
        return buf.getvalue(), EXIT_OK
    doc = {"lift": [[_complex_pair(z) for z in row] for row in s],
           "det": _complex_pair(det), "residual": residual}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n", EXIT_OK


# ---- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frwspin", description="Frames, spinors and curvature on R x S^3.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    e = sub.add_parser("eval", help="evaluate one quantity at one or more points")
    e.add_argument("quantity", choices=QUANTITIES)
    e.add_argument("--chart", default="north", help="north, south or spherical")
    e.add_argument("--frame-pair", help="frame or pair (X, Ytilde, Y, E, Psi-X, ...); "
                                        "for transition a pair like 'Y->X'")
    e.add_argument("--point", action="append",
                   help="coordinates 'eta,a,b,c' in the chart (repeatable; default 0,1,0,0)")
    e.add_argument("--scale", default="const:1.0", help="const:R0, linear:a,b, cosh:a or poly:c0,c1,c2,c3")
    common(e)
    e.set_defaults(run=cmd_eval)

    v = sub.add_parser("verify", help="compare every reference table and invariant at seeded points")
    v.add_argument("--points", type=int, default=100)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--scale", action="append", help="scale-factor spec (repeatable)")
    common(v)
    v.set_defaults(run=cmd_verify)

    lf = sub.add_parser("lift", help="lift a special orthochronous Lorentz matrix to SL(2,C)")
    lf.add_argument("matrix", nargs="+", help="16 reals, row-major, separated by commas or spaces")
    common(lf)
    lf.set_defaults(run=cmd_lift)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = args.run(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if text:
        try:
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        except OSError as e:
            print(f"I/O error: {e}", file=sys.stderr)
            return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
