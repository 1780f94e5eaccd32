"""Tagged forward-mode dual numbers over numpy arrays.

A :class:`Dual` carries a primal array and a tangent array of the same shape.
Every seeding gets a fresh integer tag, so nested differentiation (a
derivative of a function that itself differentiates internally) never
confuses perturbations: a dual with a lower tag is treated as a constant by
arithmetic at a higher tag.

Numpy ufuncs (``+``, ``*``, ``np.sin``, ``@`` ...) and the array functions
``np.stack``, ``np.einsum`` and ``np.linalg.inv`` dispatch to duals, so
geometry code is written once against plain numpy and differentiated by
passing duals in.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable

import numpy as np

_tags = itertools.count(1)


class Dual:
    __slots__ = ("re", "ep", "tag")
    __array_priority__ = 100

    def __init__(self, re, ep, tag: int):
        self.re = re
        self.ep = ep
        self.tag = tag

    def __repr__(self) -> str:
        return f"Dual(re={self.re!r}, ep={self.ep!r}, tag={self.tag})"

    @property
    def shape(self) -> tuple[int, ...]:
        return np.shape(primal(self))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    def __len__(self) -> int:
        return self.shape[0]

    def __getitem__(self, idx) -> Dual:
        return Dual(self.re[idx], self.ep[idx], self.tag)

    @property
    def T(self) -> Dual:
        return Dual(_transpose(self.re), _transpose(self.ep), self.tag)

    def swapaxes(self, a: int, b: int) -> Dual:
        return Dual(np.swapaxes(self.re, a, b), np.swapaxes(self.ep, a, b), self.tag)

    def conj(self) -> Dual:
        return np.conjugate(self)

    # operators route through the ufunc machinery below
    def __add__(self, o): return np.add(self, o)
    def __radd__(self, o): return np.add(o, self)
    def __sub__(self, o): return np.subtract(self, o)
    def __rsub__(self, o): return np.subtract(o, self)
    def __mul__(self, o): return np.multiply(self, o)
    def __rmul__(self, o): return np.multiply(o, self)
    def __truediv__(self, o): return np.true_divide(self, o)
    def __rtruediv__(self, o): return np.true_divide(o, self)
    def __matmul__(self, o): return np.matmul(self, o)
    def __rmatmul__(self, o): return np.matmul(o, self)
    def __neg__(self): return np.negative(self)
    def __pos__(self): return self

    def __pow__(self, n):
        if isinstance(n, Dual):
            raise TypeError("dual exponents are not supported")
        return np.power(self, n)

    def __array_ufunc__(self, ufunc, method, *inputs, **kwargs):
        if method != "__call__" or kwargs.get("out") is not None:
            return NotImplemented
        rule = _UFUNCS.get(ufunc)
        if rule is None:
            return NotImplemented
        return rule(*inputs)

    def __array_function__(self, func, types, args, kwargs):
        impl = _FUNCTIONS.get(func)
        if impl is None:
            return NotImplemented
        return impl(*args, **kwargs)


def _transpose(a):
    return a.T if isinstance(a, Dual) else np.transpose(a)


def _top(*xs) -> int:
    return max((x.tag for x in xs if isinstance(x, Dual)), default=0)


def _split(x, tag: int):
    """Primal and tangent of ``x`` at ``tag``; tangent is None when constant."""
    if isinstance(x, Dual) and x.tag == tag:
        return x.re, x.ep
    return x, None


def primal(x):
    """Strip every dual layer, returning the plain numpy value."""
    while isinstance(x, Dual):
        x = x.re
    return x


def _zeros(like):
    return np.zeros(np.shape(primal(like)), dtype=np.result_type(primal(like)))


# ---- ufunc rules -----------------------------------------------------------

def _add(x, y):
    t = _top(x, y)
    xr, xe = _split(x, t)
    yr, ye = _split(y, t)
    re = xr + yr
    if xe is None:
        ep = ye
    elif ye is None:
        ep = xe
    else:
        ep = xe + ye
    return Dual(re, _fit(ep, re), t)


def _sub(x, y):
    return _add(x, np.negative(y))


def _fit(ep, re):
    """Broadcast a tangent up to the primal's shape."""
    if np.shape(primal(ep)) == np.shape(primal(re)):
        return ep
    return ep + _zeros(re)


def _mul(x, y):
    t = _top(x, y)
    xr, xe = _split(x, t)
    yr, ye = _split(y, t)
    re = xr * yr
    if xe is None:
        ep = xr * ye
    elif ye is None:
        ep = xe * yr
    else:
        ep = xe * yr + xr * ye
    return Dual(re, _fit(ep, re), t)


def _div(x, y):
    t = _top(x, y)
    xr, xe = _split(x, t)
    yr, ye = _split(y, t)
    re = xr / yr
    if ye is None:
        ep = xe / yr
    elif xe is None:
        ep = -(re * ye) / yr
    else:
        ep = (xe - re * ye) / yr
    return Dual(re, _fit(ep, re), t)


def _matmul(x, y):
    t = _top(x, y)
    xr, xe = _split(x, t)
    yr, ye = _split(y, t)
    re = xr @ yr
    if xe is None:
        ep = xr @ ye
    elif ye is None:
        ep = xe @ yr
    else:
        ep = xe @ yr + xr @ ye
    return Dual(re, _fit(ep, re), t)


def _unary(f, df):
    def rule(x):
        re = f(x.re)
        return Dual(re, df(x.re, re) * x.ep, x.tag)
    return rule


def _power(x, n):
    if isinstance(n, Dual):
        raise TypeError("dual exponents are not supported")
    return Dual(x.re ** n, n * x.re ** (n - 1) * x.ep, x.tag)


_UFUNCS: dict[Any, Callable] = {
    np.add: _add,
    np.subtract: _sub,
    np.multiply: _mul,
    np.true_divide: _div,
    np.matmul: _matmul,
    np.power: _power,
    np.negative: lambda x: Dual(-x.re, -x.ep, x.tag),
    np.positive: lambda x: x,
    np.conjugate: lambda x: Dual(np.conjugate(x.re), np.conjugate(x.ep), x.tag),
    np.square: lambda x: Dual(x.re * x.re, 2 * x.re * x.ep, x.tag),
    np.reciprocal: lambda x: _div(1.0, x),
    np.sin: _unary(np.sin, lambda r, _: np.cos(r)),
    np.cos: _unary(np.cos, lambda r, _: -np.sin(r)),
    np.exp: _unary(np.exp, lambda _, e: e),
    np.sinh: _unary(np.sinh, lambda r, _: np.cosh(r)),
    np.cosh: _unary(np.cosh, lambda r, _: np.sinh(r)),
    np.sqrt: _unary(np.sqrt, lambda _, s: 0.5 / s),
    np.log: _unary(np.log, lambda r, _: 1.0 / r),
}


# ---- array functions -------------------------------------------------------

def _stack(arrays, axis=0):
    arrays = list(arrays)
    t = _top(*arrays)
    parts = [_split(a, t) for a in arrays]
    re = np.stack([r for r, _ in parts], axis=axis)
    ep = np.stack([_zeros(r) if e is None else e for r, e in parts], axis=axis)
    return Dual(re, ep, t)


def _einsum(subscripts, *operands, **kwargs):
    t = _top(*operands)
    parts = [_split(o, t) for o in operands]
    re = np.einsum(subscripts, *[r for r, _ in parts], **kwargs)
    ep = None
    for k, (_, e) in enumerate(parts):
        if e is None:
            continue
        ops = [e if j == k else r for j, (r, _) in enumerate(parts)]
        term = np.einsum(subscripts, *ops, **kwargs)
        ep = term if ep is None else ep + term
    return Dual(re, ep, t)


def _inv(a):
    ai = np.linalg.inv(a.re)
    return Dual(ai, -(ai @ a.ep @ ai), a.tag)


def _trace(a, axis1=0, axis2=1):
    return Dual(np.trace(a.re, axis1=axis1, axis2=axis2),
                np.trace(a.ep, axis1=axis1, axis2=axis2), a.tag)


def _moveaxis(a, source, destination):
    return Dual(np.moveaxis(a.re, source, destination),
                np.moveaxis(a.ep, source, destination), a.tag)


_FUNCTIONS: dict[Any, Callable] = {
    np.stack: _stack,
    np.einsum: _einsum,
    np.linalg.inv: _inv,
    np.trace: _trace,
    np.moveaxis: _moveaxis,
    np.swapaxes: lambda a, x, y: a.swapaxes(x, y),
    np.conjugate: lambda a: a.conj(),
    np.shape: lambda a: a.shape,
    np.ndim: lambda a: a.ndim,
}


# ---- differentiation -------------------------------------------------------

def tangent(y, tag: int):
    """Extract the derivative carried at ``tag`` from an output ``y``."""
    if isinstance(y, tuple):
        return tuple(tangent(v, tag) for v in y)
    if not isinstance(y, Dual) or y.tag < tag:
        return _zeros(y) if not isinstance(y, Dual) else _zero_like_dual(y)
    if y.tag == tag:
        return y.ep
    return Dual(tangent(y.re, tag), tangent(y.ep, tag), y.tag)


def _zero_like_dual(y):
    return _zeros(y)


def strip(y, tag: int):
    """Primal of ``y`` at ``tag`` (lower-tag layers are kept)."""
    if isinstance(y, tuple):
        return tuple(strip(v, tag) for v in y)
    if not isinstance(y, Dual) or y.tag < tag:
        return y
    if y.tag == tag:
        return y.re
    return Dual(strip(y.re, tag), strip(y.ep, tag), y.tag)


def jvp(f: Callable, x, v):
    """Value and directional derivative of ``f`` at ``x`` along ``v``.

    ``x`` and ``v`` may themselves be duals from an enclosing differentiation.
    Tuple outputs are handled elementwise.
    """
    tag = next(_tags)
    y = f(Dual(x, _fit(v, x), tag))
    return strip(y, tag), tangent(y, tag)


def derivative(f: Callable, x, v):
    """Directional derivative of ``f`` at ``x`` along ``v``."""
    return jvp(f, x, v)[1]
