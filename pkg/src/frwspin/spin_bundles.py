"""Basic fields of the Weyl and Dirac bundles and their component calculus."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._linalg import MINKOWSKI
from .spin_lift import PAULI


class ClassificationError(ValueError):
    """A representation is not plus or minus its canonical matrix."""


@dataclass(frozen=True)
class SpinTensorType:
    """Index counts (r,s | rho,sigma | m,n): upper/lower spinor, upper/lower
    conjugate spinor, upper/lower spatial."""

    r: int = 0
    s: int = 0
    rho: int = 0
    sigma: int = 0
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if min(self.counts) < 0:
            raise ValueError(f"index counts must be non-negative, got {self.counts}")

    @property
    def counts(self) -> tuple[int, ...]:
        return (self.r, self.s, self.rho, self.sigma, self.m, self.n)

    @property
    def rank(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return f"({self.r},{self.s}|{self.rho},{self.sigma}|{self.m},{self.n})"


@dataclass(frozen=True)
class SpinTensorComponents:
    """Components of a spin-tensor in a chosen frame pair.

    Array axes follow the type order: upper spinor, lower spinor, upper
    conjugate, lower conjugate, upper spatial, lower spatial. Spinor axes
    have length ``dim`` (2 for Weyl, 4 for Dirac), spatial axes length 4.
    """

    type: SpinTensorType
    values: np.ndarray
    dim: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        t = self.type
        expected = (self.dim,) * (t.r + t.s + t.rho + t.sigma) + (4,) * (t.m + t.n)
        if v.shape != expected:
            raise ValueError(f"type {t} with spinor dim {self.dim} needs shape {expected}, got {v.shape}")
        object.__setattr__(self, "values", v)


class FramePairClass(enum.Enum):
    CANON_CHIRAL = "canonically orthonormal chiral"
    P_REVERSE_ANTICHIRAL = "P-reverse antichiral"
    T_REVERSE_ANTICHIRAL = "T-reverse antichiral"
    PT_REVERSE_CHIRAL = "PT-reverse chiral"


D2 = np.array([[0, 1], [-1, 0]], dtype=complex)
D4 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=complex)
CHIRALITY = np.diag([1, 1, -1, -1]).astype(complex)
DIRAC_FORM = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
# DIRAC_GAMMA[q, a, b] = gamma^a_{b q}: row a, column b of matrix q
DIRAC_GAMMA = np.array([
    [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
    [[0, 0, 0, -1j], [0, 0, 1j, 0], [0, 1j, 0, 0], [-1j, 0, 0, 0]],
    [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
], dtype=complex)
P_PERMUTATION = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)

_BASIC = {
    "d2": (SpinTensorType(s=2), D2, 2),
    "d4": (SpinTensorType(s=2), D4, 4),
    "H": (SpinTensorType(r=1, s=1), CHIRALITY, 4),
    "D": (SpinTensorType(s=1, sigma=1), DIRAC_FORM, 4),
    # G^{i ibar}_q: spinor, conjugate, spatial
    "G": (SpinTensorType(r=1, rho=1, n=1), np.moveaxis(PAULI, 0, -1), 2),
    # gamma^a_{b q}
    "gamma": (SpinTensorType(r=1, s=1, n=1), np.moveaxis(DIRAC_GAMMA, 0, -1), 4),
}


def basic_field(name: str, variant: str = "standard") -> SpinTensorComponents:
    """Canonical components of d (2x2 or 4x4), H, D, G or gamma.

    ``variant="opposite"`` negates, which is how d, H and D look in anti-
    orthonormal, antichiral or anti-self-adjoint frames.
    """
    if name not in _BASIC:
        raise ValueError(f"unknown basic field {name!r}; expected one of {sorted(_BASIC)}")
    if variant not in ("standard", "opposite"):
        raise ValueError(f"variant must be 'standard' or 'opposite', got {variant!r}")
    t, values, dim = _BASIC[name]
    values = values.copy() if variant == "standard" else -values
    return SpinTensorComponents(t, values, dim)


def chiral_extension(s) -> np.ndarray:
    """Block-diagonal Dirac extension diag(s, inv(s^H)) of a 2x2 spin matrix.

    The antichiral legs are the conjugate dual frame, hence inv(s^H). For
    unitary s (every frame rotation on S^3) this is diag(s, s). Batched.
    """
    s = np.asarray(s, dtype=complex)
    out = np.zeros(s.shape[:-2] + (4, 4), dtype=complex)
    out[..., :2, :2] = s
    out[..., 2:, 2:] = np.linalg.inv(np.swapaxes(s.conj(), -1, -2))
    return out


def p_reversion(t, side: str = "source") -> np.ndarray:
    """Relabel Dirac frame legs 1<->3, 2<->4 in a 4x4 transition matrix.

    For ``new_i = sum_j t[j, i] old_j`` the permutation can act on the frame
    being produced (``side="source"``: columns are permuted) or on the frame
    it is expanded in (``side="target"``: rows are permuted).
    """
    t = np.asarray(t, dtype=complex)
    if side == "source":
        return t @ P_PERMUTATION
    if side == "target":
        return P_PERMUTATION @ t
    raise ValueError(f"side must be 'source' or 'target', got {side!r}")


def transform(c: SpinTensorComponents, spin, lorentz) -> SpinTensorComponents:
    """Components of the same field after a change of frame pair.

    ``spin`` and ``lorentz`` act on components: an upper spinor index goes
    to ``spin @ v``, a lower one to ``v @ inv(spin)``; conjugate indices use
    the complex conjugates; spatial indices use ``lorentz`` likewise. For a
    frame change new_i = sum_j S[j, i] old_j pass the inverse matrices.
    """
    spin = np.asarray(spin, dtype=complex)
    lorentz = np.asarray(lorentz, dtype=float)
    if spin.shape != (c.dim, c.dim):
        raise ValueError(f"spin matrix must be {c.dim}x{c.dim} for this field, got {spin.shape}")
    if lorentz.shape != (4, 4):
        raise ValueError(f"Lorentz matrix must be 4x4, got {lorentz.shape}")
    spin_inv = np.linalg.inv(spin)
    lor_inv = np.linalg.inv(lorentz)
    t = c.type
    mats = ([spin] * t.r + [spin_inv.T] * t.s + [spin.conj()] * t.rho
            + [spin_inv.conj().T] * t.sigma + [lorentz] * t.m + [lor_inv.T] * t.n)
    v = c.values
    for axis, m in enumerate(mats):
        v = np.moveaxis(np.tensordot(m, v, axes=([1], [axis])), 0, axis)
    return SpinTensorComponents(t, v, c.dim)


def _sign_of(rep: SpinTensorComponents, name: str, tol: float) -> int:
    canon = _BASIC[name][1]
    v = rep.values
    if v.shape != canon.shape:
        raise ClassificationError(f"{name} representation has shape {v.shape}, expected {canon.shape}")
    if np.max(np.abs(v - canon)) <= tol:
        return 1
    if np.max(np.abs(v + canon)) <= tol:
        return -1
    raise ClassificationError(f"{name} representation is not +/- its canonical form")


_CLASSES = {
    (1, 1, 1): FramePairClass.CANON_CHIRAL,
    (-1, -1, 1): FramePairClass.P_REVERSE_ANTICHIRAL,
    (1, -1, -1): FramePairClass.T_REVERSE_ANTICHIRAL,
    (-1, 1, -1): FramePairClass.PT_REVERSE_CHIRAL,
}


def classify_frame_pair(d_rep: SpinTensorComponents, h_rep: SpinTensorComponents,
                        dirac_rep: SpinTensorComponents, tol: float = 1e-10) -> FramePairClass:
    """Frame type from the signs of d, H and D relative to their canonical forms."""
    key = (_sign_of(d_rep, "d4", tol), _sign_of(h_rep, "H", tol), _sign_of(dirac_rep, "D", tol))
    try:
        return _CLASSES[key]
    except KeyError:
        raise ClassificationError(f"sign pattern {key} matches no special Dirac frame") from None


def clifford_residual(gamma=DIRAC_GAMMA, g=MINKOWSKI) -> float:
    """Max abs of gamma_m gamma_n + gamma_n gamma_m - 2 g_mn I."""
    anti = np.einsum("mab,nbc->mnac", gamma, gamma)
    anti = anti + np.swapaxes(anti, 0, 1)
    return float(np.max(np.abs(anti - 2 * np.einsum("mn,ac->mnac", g, np.eye(4)))))
