"""Basis coordinates, the prime map, sharp subspaces, chain extension."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympspec.basis import (
    BDiagonalOperator,
    SymplecticBasis,
    b_gram_schmidt,
    chain_extend,
    dual_chain_construct,
    is_isotropic,
    prime_coords,
    prime_subspace,
    same_span_trace_check,
    subspace_prime_sharp,
    symplectic_complement,
)
from sympspec.core import (
    random_pd,
    random_symplectic,
    symplectic_form,
    symplectic_gram,
    symplectic_inner,
    tuple_form_defect,
    williamson,
)
from sympspec.errors import ValidationError
from sympspec.extremal import random_orthogonal
from sympspec.linalg import fnorm, max_principal_angle, span_residual

RNG = np.random.default_rng(303)


def _random_basis(n):
    return SymplecticBasis(random_symplectic(n, RNG))


def test_standard_basis_round_trip():
    basis = SymplecticBasis.standard(3)
    x = RNG.normal(size=6)
    assert np.allclose(basis.coords(x), x)
    assert np.allclose(basis.lift(x), x)
    y = RNG.normal(size=6)
    assert basis.b_inner(x, y) == pytest.approx(float(x @ y))


def test_coords_inverts_lift_in_random_basis():
    basis = _random_basis(4)
    a = RNG.normal(size=(8, 3))
    assert fnorm(basis.coords(basis.lift(a)) - a) <= 1e-9 * fnorm(a)
    x = RNG.normal(size=8)
    assert fnorm(basis.lift(basis.coords(x)) - x) <= 1e-9 * fnorm(x)


def test_basis_rejects_non_symplectic_columns():
    with pytest.raises(ValidationError):
        SymplecticBasis(2.0 * np.eye(4))


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_prime_coords_is_a_quarter_turn(m, seed):
    a = np.random.default_rng(seed).normal(size=2 * m)
    p = prime_coords(a)
    assert np.allclose(prime_coords(p), -a)
    assert np.linalg.norm(p) == pytest.approx(float(np.linalg.norm(a)))


def test_prime_of_standard_vectors():
    basis = SymplecticBasis.standard(2)
    e = np.eye(4)
    assert np.allclose(basis.prime(e[:, 0]), e[:, 2])
    assert np.allclose(basis.prime(e[:, 2]), -e[:, 0])


def test_prime_swaps_basis_halves():
    basis = _random_basis(3)
    assert fnorm(basis.prime(basis.u) - basis.v) <= 1e-9
    assert fnorm(basis.prime(basis.v) + basis.u) <= 1e-9


def test_b_inner_via_form_and_prime():
    # <x, y>_B equals <x, J y'> for every pair in the span.
    basis = _random_basis(3)
    x, y = RNG.normal(size=6), RNG.normal(size=6)
    xa, ya = basis.lift(x), basis.lift(y)
    direct = basis.b_inner(xa, ya)
    assert direct == pytest.approx(float(x @ y), rel=1e-10, abs=1e-12)
    assert direct == pytest.approx(
        symplectic_inner(xa, basis.prime(ya)), rel=1e-9, abs=1e-10
    )


def test_prime_is_b_isometry():
    basis = _random_basis(4)
    x = basis.lift(RNG.normal(size=8))
    assert basis.b_norm(basis.prime(x)) == pytest.approx(basis.b_norm(x), rel=1e-10)


def test_b_diagonal_operator_matches_quadratic_form():
    a = random_pd(3, RNG)
    dec = williamson(a)
    basis = SymplecticBasis(dec.m)
    op = BDiagonalOperator(basis, dec.d)
    x = RNG.normal(size=6)
    assert op.quad(x) == pytest.approx(float(x @ a @ x), rel=1e-8)
    scaled = op.apply(dec.m)
    assert fnorm(scaled - dec.m * np.tile(dec.d, 2)) <= 1e-8 * fnorm(scaled)


def test_sharp_of_prime_closed_plane():
    # In the standard basis with n = 2, span{e1, e3} is its own prime.
    basis = SymplecticBasis.standard(2)
    w = np.eye(4)[:, [0, 2]]
    prime, sharp = subspace_prime_sharp(w, basis)
    assert max_principal_angle(prime, w) <= 1e-12
    assert max_principal_angle(sharp, w) <= 1e-12


def test_sharp_of_a_line_is_empty():
    basis = SymplecticBasis.standard(2)
    w = np.eye(4)[:, :1]
    prime, sharp = subspace_prime_sharp(w, basis)
    assert sharp.shape[1] == 0
    assert np.allclose(prime, np.eye(4)[:, 2:3])


def test_sharp_dimension_is_even_and_prime_invariant():
    basis = _random_basis(3)
    for _ in range(10):
        w = basis.cols @ random_orthogonal(6, RNG)[:, : int(RNG.integers(2, 6))]
        prime, sharp = subspace_prime_sharp(w, basis)
        assert sharp.shape[1] % 2 == 0
        assert prime.shape[1] == w.shape[1]
        if sharp.shape[1]:
            image = basis.prime(sharp)
            assert max_principal_angle(sharp, image) <= 1e-7


def test_prime_subspace_double_application():
    basis = _random_basis(3)
    w = basis.cols @ random_orthogonal(6, RNG)[:, :3]
    again = prime_subspace(prime_subspace(w, basis), basis)
    assert max_principal_angle(again, w) <= 1e-8


def test_symplectic_complement_standard_plane():
    # The skew-complement of span{e1, e3} in n = 2 is span{e2, e4}.
    s = np.eye(4)[:, [0, 2]]
    comp = symplectic_complement(s)
    assert comp.shape == (4, 2)
    assert max_principal_angle(comp, np.eye(4)[:, [1, 3]]) <= 1e-12


def test_symplectic_complement_dimension_count():
    for _ in range(5):
        n = int(RNG.integers(2, 6))
        k = int(RNG.integers(1, n))
        s = random_orthogonal(2 * n, RNG)[:, :k]
        comp = symplectic_complement(s)
        assert comp.shape[1] == 2 * n - k
        assert np.max(np.abs(symplectic_gram(comp, s))) <= 1e-8


def test_is_isotropic():
    e = np.eye(4)
    assert is_isotropic(e[:, :2])
    assert not is_isotropic(e[:, [0, 2]])
    assert is_isotropic(e[:, :0])


def test_b_gram_schmidt_standard_case():
    basis = SymplecticBasis.standard(2)
    e = np.eye(4)
    vecs = np.column_stack([e[:, 0], e[:, 0] + e[:, 1]])
    out = b_gram_schmidt(vecs, basis)
    assert np.allclose(out, e[:, :2], atol=1e-12)


def test_b_gram_schmidt_rejects_dependent_input():
    basis = SymplecticBasis.standard(2)
    e = np.eye(4)
    with pytest.raises(ValidationError):
        b_gram_schmidt(np.column_stack([e[:, 0], 2 * e[:, 0]]), basis)


def test_b_gram_schmidt_preserves_skew_constraint():
    basis = _random_basis(3)
    anchor = basis.cols[:, :1]
    candidates = basis.cols[:, [1, 2]] @ np.array([[1.0, 0.3], [0.0, 1.0]])
    out = b_gram_schmidt(candidates, basis, skew_constraint=anchor)
    assert np.max(np.abs(symplectic_gram(out, anchor))) <= 1e-8


def test_chain_extend_produces_sharp_member():
    basis = _random_basis(3)
    q = random_orthogonal(6, RNG)
    chain = [q[:, :5], q[:, :4]]
    _, sharp0 = subspace_prime_sharp(chain[1], basis)
    seed = sharp0[:, :1]
    seed = seed / basis.b_norm(seed)
    v, x = chain_extend(chain, seed, basis, RNG)
    assert x.shape == (6, 2)
    _, sharp_top = subspace_prime_sharp(chain[0], basis)
    assert span_residual(sharp_top, v) <= 1e-8
    assert np.max(np.abs(symplectic_gram(x, x))) <= 1e-8


def test_chain_extend_validates_seed_count():
    basis = _random_basis(3)
    q = random_orthogonal(6, RNG)
    chain = [q[:, :5], q[:, :4]]
    with pytest.raises(ValidationError):
        chain_extend(chain, np.zeros((6, 0)), basis, RNG)


def test_dual_chain_construct_postconditions():
    for _ in range(5):
        n = int(RNG.integers(2, 5))
        basis = _random_basis(n)
        k = int(RNG.integers(1, min(n, 3) + 1))
        idx = np.sort(RNG.choice(np.arange(1, n + 1), size=k, replace=False))
        vq = random_orthogonal(2 * n, RNG)
        wq = random_orthogonal(2 * n, RNG)
        vchain = [vq[:, : n + int(i)] for i in idx]
        wchain = [wq[:, : 2 * n - int(i) + 1] for i in idx]
        vs, ws = dual_chain_construct(vchain, wchain, basis, RNG)
        assert vs.shape == (2 * n, k) and ws.shape == (2 * n, k)
        for j in range(k):
            _, vsharp = subspace_prime_sharp(vchain[j], basis)
            _, wsharp = subspace_prime_sharp(wchain[j], basis)
            assert span_residual(vsharp, vs[:, j]) <= 1e-8
            assert span_residual(wsharp, ws[:, j]) <= 1e-8
        vf = np.hstack([vs, basis.prime(vs)])
        wf = np.hstack([ws, basis.prime(ws)])
        assert max_principal_angle(vf, wf) <= 1e-8
        assert tuple_form_defect(ws, basis.prime(ws)) <= 1e-8


def test_dual_chain_rejects_mismatched_dimensions():
    basis = SymplecticBasis.standard(2)
    q = random_orthogonal(4, RNG)
    with pytest.raises(ValidationError):
        dual_chain_construct([q[:, :3]], [q[:, :3]], basis, RNG)


def test_same_span_trace_check_on_eigen_tuple():
    a = random_pd(3, RNG)
    dec = williamson(a)
    basis = SymplecticBasis(dec.m)
    x = basis.u[:, :2]
    lhs, rhs = same_span_trace_check(a, x, x, basis, d=dec.d)
    assert lhs == pytest.approx(rhs)
    assert lhs == pytest.approx(2.0 * float(np.sum(dec.d[:2])), rel=1e-9)


def test_same_span_trace_check_rejects_span_mismatch():
    a = random_pd(2, RNG)
    dec = williamson(a)
    basis = SymplecticBasis(dec.m)
    with pytest.raises(ValidationError):
        same_span_trace_check(a, basis.u[:, :1], basis.u[:, 1:2], basis)
