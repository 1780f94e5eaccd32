"""The double cover SL(2,C) -> SO+(1,3) and its inverse up to sign."""

from __future__ import annotations

import numpy as np

from ._linalg import MINKOWSKI
from .charts import Chart, Point, check_overlap, transition

GROUP_TOL = 1e-10
SIGN_TOL = 1e-12

PAULI = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

_EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])


class GroupMembershipError(ValueError):
    """Matrix is not in the group an operation requires."""


class ConditioningError(ArithmeticError):
    """The lift equations are numerically degenerate."""


def is_sl2c(s, tol: float = GROUP_TOL) -> bool:
    s = np.asarray(s)
    return s.shape[-2:] == (2, 2) and bool(np.all(np.abs(np.linalg.det(s) - 1) <= tol))


def is_special_orthochronous(m, tol: float = GROUP_TOL) -> bool:
    m = np.asarray(m)
    if m.shape[-2:] != (4, 4) or np.iscomplexobj(m) and np.any(np.abs(m.imag) > tol):
        return False
    m = np.real(m)
    lorentz = np.abs(np.swapaxes(m, -1, -2) @ MINKOWSKI @ m - MINKOWSKI) <= tol
    return bool(np.all(lorentz)
                and np.all(np.abs(np.linalg.det(m) - 1) <= tol)
                and np.all(m[..., 0, 0] >= 1 - tol))


def phi(s) -> np.ndarray:
    """Lorentz image L of s, entrywise L[p, q] = tr(sigma_p s sigma_q s^H) / 2.

    Batched over leading dimensions.
    """
    s = np.asarray(s, dtype=complex)
    if not is_sl2c(s):
        raise GroupMembershipError("phi needs det(s) = 1")
    h = np.einsum("...ab,qbc,...dc->...qad", s, PAULI, s.conj())
    out = 0.5 * np.einsum("pda,...qad->...pq", PAULI, h)
    return out.real


def _lift_equations(m: np.ndarray) -> np.ndarray:
    """Real 32x8 system whose null space is the real line through the lift.

    With s in SL(2,C) the inverse conjugate transpose is eps^T conj(s) eps,
    so s sigma_q s^H = H_q becomes s sigma_q - H_q eps^T conj(s) eps = 0,
    which is real-linear in (Re s, Im s).
    """
    targets = np.einsum("pq,pab->qab", m, PAULI)
    cols = []
    for k in range(8):
        e = np.zeros(4, dtype=complex)
        e[k % 4] = 1.0 if k < 4 else 1j
        s = e.reshape(2, 2)
        resid = np.einsum("ab,qbc->qac", s, PAULI) - targets @ (_EPS.T @ s.conj() @ _EPS)
        cols.append(np.concatenate([resid.real.ravel(), resid.imag.ravel()]))
    return np.stack(cols, axis=-1)


def fix_sign(s: np.ndarray) -> np.ndarray:
    """Pick the representative of +/-s whose first nonzero entry (row-major)
    has positive real part, or positive imaginary part if the real part is ~0."""
    s = np.asarray(s, dtype=complex)
    for v in s.ravel():
        if abs(v) <= SIGN_TOL:
            continue
        if abs(v.real) > SIGN_TOL:
            return s if v.real > 0 else -s
        return s if v.imag > 0 else -s
    return s


def lift(m, sign: str = "canonical") -> np.ndarray:
    """Solve phi(s) = m for s in SL(2,C).

    ``sign="canonical"`` applies :func:`fix_sign`; ``"raw"`` returns the
    solver's representative.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"lift takes a single 4x4 matrix, got shape {m.shape}")
    if not is_special_orthochronous(m):
        raise GroupMembershipError("matrix is not in SO+(1,3)")
    _, sv, vt = np.linalg.svd(_lift_equations(m))
    scale = max(sv[0], 1.0)
    if sv[-1] > 1e-8 * scale or sv[-2] < 1e-6 * scale:
        raise ConditioningError(f"lift equations degenerate (singular values {sv[-2]:.3e}, {sv[-1]:.3e})")
    v = vt[-1]
    s = (v[:4] + 1j * v[4:]).reshape(2, 2)
    s = s / np.sqrt(np.linalg.det(s))
    if sign == "canonical":
        return fix_sign(s)
    if sign == "raw":
        return s
    raise ValueError(f"unknown sign convention {sign!r}")


def equal_up_to_sign(a, b, tol: float) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) <= tol


# ---- closed forms ----------------------------------------------------------

def _hat(theta, phi_):
    e = lambda a: np.exp(0.5j * a)
    return np.stack([
        np.stack([e(phi_ + theta), -e(phi_ - theta)], axis=-1),
        np.stack([e(theta - phi_), e(-theta - phi_)], axis=-1),
    ], axis=-2) / np.sqrt(2)


def _check_tilde(theta, phi_):
    e = lambda a: np.exp(0.5j * a)
    return 1j * np.stack([
        np.stack([-e(phi_ - theta), e(phi_ + theta)], axis=-1),
        np.stack([e(-theta - phi_), e(theta - phi_)], axis=-1),
    ], axis=-2) / np.sqrt(2)


def _quaternion_unit(v, scale):
    v1, v2, v3 = v[..., 0], v[..., 1], v[..., 2]
    return np.stack([
        np.stack([1j * v3, 1j * v1 + v2], axis=-1),
        np.stack([1j * v1 - v2, -1j * v3], axis=-1),
    ], axis=-2) * scale[..., None, None]


PAIRS = {
    ("Ytilde", "X"): "spin transition from the Ytilde frame to X (south coordinates)",
    ("X", "Ytilde"): "inverse of the above, in north coordinates",
    ("E", "X"): "spin transition from E to X (spherical coordinates)",
    ("E", "Ytilde"): "spin transition from E to Ytilde (spherical coordinates)",
}


def closed_form_lift(pair: tuple[str, str], p: Point) -> np.ndarray:
    """Explicit SL(2,C) matrices covering the frame transitions.

    ``pair = (source, target)`` matches :func:`frames.frame_transition`:
    phi of the result is the Lorentz transition source -> target.
    """
    pair = tuple(pair)
    if pair not in PAIRS:
        raise ValueError(f"no closed-form lift for {pair}; choose from {sorted(PAIRS)}")
    if pair == ("Ytilde", "X"):
        q = p if p.chart is Chart.SOUTH else transition(p, Chart.SOUTH)
        check_overlap(q, Chart.NORTH)
        y = q.coords[..., 1:]
        return _quaternion_unit(y, 1.0 / np.linalg.norm(y, axis=-1))
    if pair == ("X", "Ytilde"):
        q = p if p.chart is Chart.NORTH else transition(p, Chart.NORTH)
        check_overlap(q, Chart.SOUTH)
        x = q.coords[..., 1:]
        return _quaternion_unit(x, -1.0 / np.linalg.norm(x, axis=-1))
    q = p if p.chart is Chart.SPHERICAL else transition(p, Chart.SPHERICAL)
    theta, phi_ = q.coords[..., 2], q.coords[..., 3]
    if pair == ("E", "X"):
        return _hat(theta, phi_)
    return _check_tilde(theta, phi_)


def spherical_stilde(p: Point) -> np.ndarray:
    """The Ytilde -> X spin transition written in spherical angles."""
    q = p if p.chart is Chart.SPHERICAL else transition(p, Chart.SPHERICAL)
    theta, phi_ = q.coords[..., 2], q.coords[..., 3]
    return np.stack([
        np.stack([1j * np.cos(theta), np.sin(theta) * np.exp(1j * phi_)], axis=-1),
        np.stack([-np.sin(theta) * np.exp(-1j * phi_), -1j * np.cos(theta)], axis=-1),
    ], axis=-2)
