"""Sphere radius R as a function of the shared time coordinate eta."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ScaleFactorError(ValueError):
    """Invalid scale-factor model or evaluation outside its domain."""


@dataclass(frozen=True)
class ScaleFactor:
    """Closed-form model of R(eta).

    ``kind`` is one of ``"const"``, ``"linear"``, ``"cosh"``, ``"poly"`` and
    ``params`` holds the model coefficients:

    - const: (R0,)              R = R0
    - linear: (a, b)            R = a + b*eta
    - cosh: (a,)                R = a*cosh(eta)
    - poly: (c0, c1, c2, c3)    R = c0 + c1*eta + c2*eta**2 + c3*eta**3
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        arity = _ARITY.get(self.kind)
        if arity is None:
            raise ScaleFactorError(f"unknown scale-factor model {self.kind!r}")
        if len(self.params) != arity:
            raise ScaleFactorError(
                f"{self.kind} takes {arity} parameter(s), got {len(self.params)}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if not all(np.isfinite(self.params)):
            raise ScaleFactorError("scale-factor parameters must be finite")
        if self.kind in ("const", "cosh") and self.params[0] <= 0:
            raise ScaleFactorError(f"{self.kind} model needs a positive radius, got {self.params[0]}")

    @classmethod
    def constant(cls, r0: float) -> ScaleFactor:
        return cls("const", (r0,))

    @classmethod
    def linear(cls, a: float, b: float) -> ScaleFactor:
        return cls("linear", (a, b))

    @classmethod
    def cosh(cls, a: float) -> ScaleFactor:
        return cls("cosh", (a,))

    @classmethod
    def polynomial(cls, c0: float, c1: float, c2: float, c3: float) -> ScaleFactor:
        return cls("poly", (c0, c1, c2, c3))

    def radius(self, eta):
        """R(eta), written so that dual-number arguments differentiate through it."""
        p = self.params
        if self.kind == "const":
            return p[0] + 0.0 * eta
        if self.kind == "linear":
            return p[0] + p[1] * eta
        if self.kind == "cosh":
            return p[0] * np.cosh(eta)
        return p[0] + eta * (p[1] + eta * (p[2] + eta * p[3]))

    def evaluate(self, eta):
        """Return ``(R, R', R'')`` at ``eta`` from the analytic derivatives.

        Raises ScaleFactorError where R <= 0.
        """
        eta = np.asarray(eta, dtype=float)
        p = self.params
        if self.kind == "const":
            r = np.full_like(eta, p[0])
            d1 = np.zeros_like(eta)
            d2 = np.zeros_like(eta)
        elif self.kind == "linear":
            r = p[0] + p[1] * eta
            d1 = np.full_like(eta, p[1])
            d2 = np.zeros_like(eta)
        elif self.kind == "cosh":
            r = p[0] * np.cosh(eta)
            d1 = p[0] * np.sinh(eta)
            d2 = r.copy()
        else:
            c0, c1, c2, c3 = p
            r = c0 + eta * (c1 + eta * (c2 + eta * c3))
            d1 = c1 + eta * (2 * c2 + 3 * c3 * eta)
            d2 = 2 * c2 + 6 * c3 * eta
        if np.any(r <= 0):
            raise ScaleFactorError(f"{self} is not positive at eta={eta[r <= 0].ravel()[:3]}")
        if r.ndim == 0:
            return float(r), float(d1), float(d2)
        return r, d1, d2

    def spec(self) -> str:
        return f"{self.kind}:" + ",".join(repr(v) for v in self.params)

    def __str__(self) -> str:
        return self.spec()


_ARITY = {"const": 1, "linear": 2, "cosh": 1, "poly": 4}


def parse_spec(text: str) -> ScaleFactor:
    """Parse ``const:<R0>``, ``linear:<a>,<b>``, ``cosh:<a>`` or ``poly:<c0>,..,<c3>``."""
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise ScaleFactorError(f"malformed scale spec {text!r}: missing ':'")
    if kind not in _ARITY:
        raise ScaleFactorError(f"malformed scale spec {text!r}: unknown model {kind!r}")
    values = []
    for token in rest.split(","):
        try:
            values.append(float(token))
        except ValueError:
            raise ScaleFactorError(f"malformed scale spec {text!r}: bad number {token!r}") from None
    return ScaleFactor(kind, tuple(values))
