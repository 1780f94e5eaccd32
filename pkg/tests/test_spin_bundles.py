from __future__ import annotations

import numpy as np
import pytest

from frwspin._linalg import MINKOWSKI, SPACE_INVERSION
from frwspin.connection import FramePair
from frwspin.spin_bundles import (CHIRALITY, D4, DIRAC_FORM, DIRAC_GAMMA, P_PERMUTATION,
                                  ClassificationError, FramePairClass, SpinTensorComponents,
                                  SpinTensorType, basic_field, chiral_extension,
                                  classify_frame_pair, clifford_residual, p_reversion, transform)
from frwspin.spin_lift import PAULI, closed_form_lift, phi


def test_weyl_metric_spinor():
    assert np.array_equal(basic_field("d2").values, [[0, 1], [-1, 0]])
    assert np.array_equal(basic_field("d2", "opposite").values, [[0, -1], [1, 0]])


def test_pauli_components():
    g = basic_field("G").values
    assert np.array_equal(g[..., 3], np.diag([1, -1]))
    assert np.array_equal(g[..., 0], np.eye(2))


def test_gamma_zero_is_block_antidiagonal_identity():
    g0 = basic_field("gamma").values[..., 0]
    expected = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
    assert np.array_equal(g0, expected)


def test_unknown_basic_field():
    with pytest.raises(ValueError):
        basic_field("Q")
    with pytest.raises(ValueError):
        basic_field("H", "sideways")


def test_clifford_relation_is_exact():
    assert clifford_residual() == 0.0
    anti = np.einsum("mab,nbc->mnac", DIRAC_GAMMA, DIRAC_GAMMA)
    anti = anti + np.swapaxes(anti, 0, 1)
    assert np.array_equal(anti, 2 * np.einsum("mn,ac->mnac", MINKOWSKI, np.eye(4)))


def test_pauli_traces():
    tr = np.einsum("pab,qba->pq", PAULI[1:], PAULI[1:])
    assert np.array_equal(tr, 2 * np.eye(3))


def test_chiral_extension_of_identity():
    assert np.array_equal(chiral_extension(np.eye(2)), np.eye(4))


def test_chiral_extension_of_unitary_is_block_copy(spherical):
    s = closed_form_lift(("E", "X"), spherical)
    ext = chiral_extension(s)
    assert np.allclose(ext[..., :2, :2], s) and np.allclose(ext[..., 2:, 2:], s)
    assert np.allclose(ext[..., :2, 2:], 0) and np.allclose(ext[..., 2:, :2], 0)


def test_chiral_extension_homomorphism(sl2c):
    a, b = sl2c[:25], sl2c[25:]
    assert np.allclose(chiral_extension(a @ b), chiral_extension(a) @ chiral_extension(b), atol=1e-9)


def test_p_reversion_swaps_blocks(sl2c):
    ext = chiral_extension(sl2c[0])
    t = p_reversion(ext, "source")
    assert np.allclose(t[:2, :2], 0) and np.allclose(t[2:, 2:], 0)
    assert np.allclose(t[:2, 2:], ext[:2, :2]) and np.allclose(t[2:, :2], ext[2:, 2:])
    assert np.allclose(p_reversion(ext, "target")[2:, :2], ext[:2, :2])


@pytest.mark.parametrize("side", ["source", "target"])
def test_p_reversion_is_an_involution(side, sl2c):
    t = chiral_extension(sl2c[0])
    assert np.allclose(p_reversion(p_reversion(t, side), side), t)


def test_p_reversion_bad_side():
    with pytest.raises(ValueError):
        p_reversion(np.eye(4), "middle")


def test_space_inversion_of_pauli_symbols():
    g = transform(basic_field("G"), np.eye(2), SPACE_INVERSION).values
    assert np.allclose(g[..., 0], PAULI[0])
    for q in (1, 2, 3):
        assert np.allclose(g[..., q], -PAULI[q])


def test_identity_transform_is_identity():
    for name in ("d4", "H", "D", "gamma"):
        c = basic_field(name)
        assert np.allclose(transform(c, np.eye(4), np.eye(4)).values, c.values)


def test_gamma_equivariance(sl2c):
    g = basic_field("gamma")
    for s in sl2c:
        assert np.allclose(transform(g, chiral_extension(s), phi(s)).values, g.values, atol=1e-9)


def test_pauli_equivariance(sl2c):
    g = basic_field("G")
    for s in sl2c:
        assert np.allclose(transform(g, s, phi(s)).values, g.values, atol=1e-9)


def test_canonical_fields_are_invariant_under_extensions(sl2c):
    for s in sl2c[:5]:
        ext = chiral_extension(s)
        for name in ("d4", "H", "D"):
            c = basic_field(name)
            assert np.allclose(transform(c, ext, np.eye(4)).values, c.values, atol=1e-9)


def test_transform_shape_errors():
    with pytest.raises(ValueError):
        transform(basic_field("G"), np.eye(4), np.eye(4))
    with pytest.raises(ValueError):
        transform(basic_field("G"), np.eye(2), np.eye(3))


def _rep(name, sign):
    return basic_field(name, "standard" if sign > 0 else "opposite")


@pytest.mark.parametrize("signs, kind", [
    ((1, 1, 1), FramePairClass.CANON_CHIRAL),
    ((-1, -1, 1), FramePairClass.P_REVERSE_ANTICHIRAL),
    ((1, -1, -1), FramePairClass.T_REVERSE_ANTICHIRAL),
    ((-1, 1, -1), FramePairClass.PT_REVERSE_CHIRAL),
])
def test_classification_table(signs, kind):
    reps = [_rep(n, s) for n, s in zip(("d4", "H", "D"), signs)]
    assert classify_frame_pair(*reps) is kind


def test_unlisted_sign_pattern():
    with pytest.raises(ClassificationError, match="matches no"):
        classify_frame_pair(_rep("d4", 1), _rep("H", 1), _rep("D", -1))


def test_non_canonical_rep():
    bad = SpinTensorComponents(SpinTensorType(s=2), 2 * D4, 4)
    with pytest.raises(ClassificationError):
        classify_frame_pair(bad, basic_field("H"), basic_field("D"))


def test_p_reversed_pair_is_antichiral():
    fields = [transform(basic_field(n), P_PERMUTATION, SPACE_INVERSION) for n in ("d4", "H", "D")]
    assert np.allclose(fields[1].values, -CHIRALITY)
    assert np.allclose(fields[2].values, DIRAC_FORM)
    assert classify_frame_pair(*fields) is FramePair.PHI_Y.kind is FramePairClass.P_REVERSE_ANTICHIRAL
    g = transform(basic_field("gamma"), P_PERMUTATION, SPACE_INVERSION)
    assert np.allclose(g.values, basic_field("gamma").values)


def test_spin_tensor_type():
    t = SpinTensorType(r=1, s=1, n=1)
    assert t.rank == 3 and str(t) == "(1,1|0,0|0,1)"
    with pytest.raises(ValueError):
        SpinTensorType(r=-1)
    with pytest.raises(ValueError):
        SpinTensorComponents(t, np.zeros((4, 4)), 4)
