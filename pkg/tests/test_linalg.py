"""Dense linear-algebra helpers against hand-computed cases."""

import numpy as np
import pytest

from sympspec.errors import NumericalContractError, ValidationError
from sympspec.linalg import (
    check_symmetric,
    fnorm,
    max_principal_angle,
    null_space_basis,
    orthonormal_columns,
    pd_sqrt_invsqrt,
    principal_angles,
    skew_canonical,
    span_residual,
    subspace_contains,
    subspace_intersect,
    sym_eig,
)

RNG = np.random.default_rng(101)


def test_sym_eig_two_by_two():
    w, v = sym_eig(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(w, [1.0, 3.0], atol=1e-14)
    assert fnorm(v @ np.diag(w) @ v.T - [[2.0, 1.0], [1.0, 2.0]]) < 1e-14


def test_check_symmetric_rejects_asymmetry():
    with pytest.raises(ValidationError):
        check_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))
    sym = check_symmetric(np.array([[1.0, 2.0 + 1e-14], [2.0, 1.0]]))
    assert fnorm(sym - sym.T) == 0.0


def test_pd_sqrt_invsqrt_diagonal():
    root, inv_root = pd_sqrt_invsqrt(np.diag([4.0, 9.0]))
    assert np.allclose(root, np.diag([2.0, 3.0]), atol=1e-14)
    assert np.allclose(inv_root, np.diag([0.5, 1.0 / 3.0]), atol=1e-14)


def test_pd_sqrt_invsqrt_random_consistency():
    x = RNG.normal(size=(5, 5))
    a = x @ x.T + 5 * np.eye(5)
    root, inv_root = pd_sqrt_invsqrt(a)
    assert fnorm(root @ root - a) <= 1e-12 * fnorm(a)
    assert fnorm(root @ inv_root - np.eye(5)) <= 1e-12


def test_pd_sqrt_rejects_indefinite():
    with pytest.raises(ValidationError):
        pd_sqrt_invsqrt(np.diag([1.0, -1.0]))


def test_orthonormal_columns_spans_input():
    x = RNG.normal(size=(6, 3))
    q = orthonormal_columns(x)
    assert q.shape == (6, 3)
    assert fnorm(q.T @ q - np.eye(3)) < 1e-12
    assert max_principal_angle(q, x) < 1e-12


def test_orthonormal_columns_drops_dependent():
    x = np.column_stack([np.ones(4), 2 * np.ones(4)])
    assert orthonormal_columns(x).shape == (4, 1)


def test_null_space_basis_plane():
    g = np.array([[1.0, 0.0, 0.0]])
    z = null_space_basis(g)
    assert z.shape == (3, 2)
    assert fnorm(g @ z) < 1e-12


def test_null_space_basis_full_rank_is_empty():
    assert null_space_basis(np.eye(3)).shape == (3, 0)


def test_span_residual_and_contains():
    basis = np.eye(4)[:, :2]
    assert span_residual(basis, np.array([1.0, 1.0, 0.0, 0.0])) < 1e-14
    assert span_residual(basis, np.array([0.0, 0.0, 1.0, 0.0])) == pytest.approx(1.0)
    assert subspace_contains(basis, np.array([2.0, -1.0, 0.0, 0.0]))
    assert not subspace_contains(basis, np.array([0.0, 0.0, 1.0, 0.0]))


def test_principal_angles_orthogonal_planes():
    x = np.eye(4)[:, :2]
    y = np.eye(4)[:, 1:3]
    angles = principal_angles(x, y)
    assert np.allclose(angles, [0.0, np.pi / 2], atol=1e-12)


def test_max_principal_angle_detects_rotated_span():
    x = orthonormal_columns(RNG.normal(size=(8, 3)))
    rot = np.linalg.qr(RNG.normal(size=(3, 3)))[0]
    assert max_principal_angle(x, x @ rot) < 1e-12
    y = orthonormal_columns(RNG.normal(size=(8, 3)))
    assert max_principal_angle(x, y) > 1e-2


def test_max_principal_angle_small_angles_not_flushed():
    # arccos of a cosine loses tiny angles; the sine path keeps them.
    theta = 1e-9
    x = np.eye(4)[:, :1]
    y = np.array([[np.cos(theta)], [np.sin(theta)], [0.0], [0.0]])
    assert max_principal_angle(x, y) == pytest.approx(theta, rel=1e-4)


def test_subspace_intersect_shared_line():
    x = np.eye(4)[:, :2]
    y = np.eye(4)[:, 1:3]
    z = subspace_intersect(x, y)
    assert z.shape == (4, 1)
    assert abs(abs(z[1, 0]) - 1.0) < 1e-12


def test_subspace_intersect_trivial():
    x = np.eye(4)[:, :1]
    y = np.eye(4)[:, 1:2]
    assert subspace_intersect(x, y).shape == (4, 0)


def test_skew_canonical_form_of_j():
    j = np.zeros((4, 4))
    j[:2, 2:] = np.eye(2)
    j[2:, :2] = -np.eye(2)
    q, d = skew_canonical(j)
    assert np.allclose(d, [1.0, 1.0], atol=1e-12)
    assert fnorm(q.T @ q - np.eye(4)) < 1e-12


def test_skew_canonical_single_block():
    k = np.array([[0.0, 5.0], [-5.0, 0.0]])
    q, d = skew_canonical(k)
    assert d.shape == (1,)
    assert d[0] == pytest.approx(5.0, abs=1e-12)
    canon = np.array([[0.0, 5.0], [-5.0, 0.0]])
    assert fnorm(q.T @ k @ q - canon) < 1e-12


def test_skew_canonical_random_roundtrip():
    for _ in range(20):
        m = int(RNG.integers(1, 7))
        x = RNG.normal(size=(2 * m, 2 * m))
        k = x - x.T
        q, d = skew_canonical(k)
        canon = np.zeros((2 * m, 2 * m))
        canon[:m, m:] = np.diag(d)
        canon[m:, :m] = -np.diag(d)
        assert fnorm(q.T @ k @ q - canon) <= 1e-9 * max(1.0, fnorm(k))
        assert fnorm(q.T @ q - np.eye(2 * m)) <= 1e-12
        assert np.all(np.diff(d) >= 0)


def test_skew_canonical_rejects_odd_dimension():
    with pytest.raises(ValidationError):
        skew_canonical(np.zeros((3, 3)))


def test_skew_canonical_rejects_singular():
    with pytest.raises((ValidationError, NumericalContractError)):
        skew_canonical(np.zeros((2, 2)))
