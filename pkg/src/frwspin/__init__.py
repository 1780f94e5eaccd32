"""Frames, Weyl and Dirac spinors, spin connection and curvature on R x S^3."""

from .charts import Chart, ChartError, Point, embed, holonomic_metric, jacobian, transition
from .connection import A_components, FramePair, FramePairError, gamma_general, gamma_special
from .curvature import Curvature, curvature
from .frames import Frame, commutators, frame_coefficients, frame_transition, metric_in_frame
from .scale_factor import ScaleFactor, ScaleFactorError, parse_spec
from .spin_bundles import basic_field, chiral_extension, classify_frame_pair, p_reversion, transform
from .spin_lift import GroupMembershipError, closed_form_lift, lift, phi

__all__ = [
    "A_components", "Chart", "ChartError", "Curvature", "Frame", "FramePair", "FramePairError",
    "GroupMembershipError", "Point", "ScaleFactor", "ScaleFactorError", "basic_field",
    "chiral_extension", "classify_frame_pair", "closed_form_lift", "commutators", "curvature",
    "embed", "frame_coefficients", "frame_transition", "gamma_general", "gamma_special",
    "holonomic_metric", "jacobian", "lift", "metric_in_frame", "p_reversion", "parse_spec",
    "phi", "transform", "transition",
]
