"""Dense linear-algebra primitives with explicit accuracy contracts.

Everything here is plain numpy on real float64 arrays.  Routines that
can fail quietly (eigendecompositions, rank decisions, skew pairing)
re-check their own output and raise NumericalContractError instead of
returning garbage.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalContractError, ValidationError

RANK_RTOL = 1e-10
CLUSTER_RTOL = 1e-8
INTERSECT_COS_TOL = 1e-8


def fnorm(a):
    """Frobenius norm for matrices, Euclidean norm for vectors."""
    return float(np.linalg.norm(a))


def check_square(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    return a


def check_symmetric(a, tol=1e-12, name="matrix"):
    """Validate approximate symmetry and return the symmetrized matrix."""
    a = check_square(a, name)
    gap = fnorm(a - a.T)
    if gap > tol * max(1.0, fnorm(a)):
        raise ValidationError(
            f"{name} is not symmetric: asymmetry {gap:.3e} exceeds tolerance"
        )
    return 0.5 * (a + a.T)


def sym_eig(s, tol=1e-12):
    """Eigendecomposition of a symmetric matrix, ascending eigenvalues.

    The residual ||S V - V diag(w)|| is checked against tol * max(1, ||S||).
    """
    s = 0.5 * (s + s.T)
    try:
        w, v = np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:
        raise NumericalContractError(f"symmetric eigensolve failed: {exc}") from exc
    resid = fnorm(s @ v - v * w)
    bound = tol * max(1.0, fnorm(s))
    if resid > bound:
        raise NumericalContractError(
            f"eigendecomposition residual {resid:.3e} exceeds {bound:.3e}"
        )
    return w, v


def pd_sqrt_invsqrt(a, tol=1e-12):
    """Symmetric square root and inverse square root of a PD matrix."""
    w, v = sym_eig(a, tol=tol)
    if w[0] <= 0.0:
        raise ValidationError(
            f"matrix is not positive definite: smallest eigenvalue {w[0]:.6e}"
        )
    sq = np.sqrt(w)
    root = (v * sq) @ v.T
    inv_root = (v / sq) @ v.T
    return 0.5 * (root + root.T), 0.5 * (inv_root + inv_root.T)


def orthonormal_columns(x, rank_rtol=RANK_RTOL):
    """Orthonormal basis for the column span of x (may drop rank)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValidationError(f"expected a 2-d array, got shape {x.shape}")
    if x.shape[1] == 0:
        return x.copy()
    u, s, _ = np.linalg.svd(x, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros((x.shape[0], 0))
    k = int(np.sum(s > rank_rtol * s[0]))
    return u[:, :k]


def null_space_basis(g, rank_rtol=RANK_RTOL):
    """Orthonormal basis of the kernel of g (rows are constraints)."""
    g = np.asarray(g, dtype=float)
    rows, cols = g.shape
    if rows == 0:
        return np.eye(cols)
    _, s, vt = np.linalg.svd(g, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        return np.eye(cols)
    rank = int(np.sum(s > rank_rtol * s[0]))
    return vt[rank:].T


def subspace_contains(basis, x, tol=1e-8):
    """True when the vector x lies in the column span of basis."""
    x = np.asarray(x, dtype=float)
    nx = fnorm(x)
    if nx == 0.0:
        return True
    q = orthonormal_columns(basis)
    resid = x - q @ (q.T @ x)
    return fnorm(resid) <= tol * nx


def span_residual(basis, x):
    """Relative distance from x to the column span of basis."""
    x = np.asarray(x, dtype=float)
    nx = fnorm(x)
    if nx == 0.0:
        return 0.0
    q = orthonormal_columns(basis)
    return fnorm(x - q @ (q.T @ x)) / nx


def principal_angles(u, w):
    """Principal angles between two column spans, ascending, in radians."""
    uo = orthonormal_columns(u)
    wo = orthonormal_columns(w)
    if uo.shape[1] == 0 or wo.shape[1] == 0:
        return np.zeros(0)
    sig = np.linalg.svd(uo.T @ wo, compute_uv=False)
    sig = np.clip(sig, -1.0, 1.0)
    return np.arccos(sig)


def max_principal_angle(u, w):
    """Largest principal angle between two spans, via the sine residual.

    Accurate for nearly equal spans, where the arccos route loses half
    the digits.  Symmetric in its arguments.
    """
    uo = orthonormal_columns(u)
    wo = orthonormal_columns(w)
    if uo.shape[1] == 0 and wo.shape[1] == 0:
        return 0.0
    if uo.shape[1] == 0 or wo.shape[1] == 0:
        return 0.5 * np.pi
    s1 = np.linalg.norm(wo - uo @ (uo.T @ wo), 2)
    s2 = np.linalg.norm(uo - wo @ (wo.T @ uo), 2)
    return float(np.arcsin(min(1.0, max(s1, s2))))


def subspace_intersect(u, w, cos_tol=INTERSECT_COS_TOL):
    """Orthonormal basis for the intersection of two column spans.

    Principal directions with cosine within cos_tol of 1 are treated as
    common; each returned vector is the matched pair averaged, so it lies
    in both spans to working accuracy.
    """
    uo = orthonormal_columns(u)
    wo = orthonormal_columns(w)
    if uo.shape[1] == 0 or wo.shape[1] == 0:
        return np.zeros((np.asarray(u).shape[0], 0))
    p, sig, qt = np.linalg.svd(uo.T @ wo)
    keep = sig >= 1.0 - cos_tol
    k = int(np.sum(keep))
    if k == 0:
        return np.zeros((uo.shape[0], 0))
    left = uo @ p[:, :k]
    right = wo @ qt[:k].T
    return orthonormal_columns(left + right)


def skew_canonical(k, tol=1e-9):
    """Orthogonal reduction of a nonsingular skew-symmetric matrix.

    Returns (q, d) with q orthogonal, d ascending positive, and
    q.T K q = [[0, diag(d)], [-diag(d), 0]].  Eigenvector clusters of
    K.T K are paired as (u, -K u / ||K u||); per-pair norms keep the
    pairing relation exact even inside near-degenerate clusters.
    """
    k = check_square(k, "skew input")
    dim = k.shape[0]
    if dim == 0 or dim % 2 == 1:
        raise ValidationError(f"skew canonical form needs even dimension, got {dim}")
    skew_gap = fnorm(k + k.T)
    if skew_gap > 1e-12 * max(1.0, fnorm(k)):
        raise ValidationError(
            f"matrix is not skew-symmetric: defect {skew_gap:.3e}"
        )
    k = 0.5 * (k - k.T)

    gram = k.T @ k
    w, vecs = sym_eig(gram)
    sing = np.sqrt(np.maximum(w, 0.0))
    if sing[0] <= RANK_RTOL * sing[-1]:
        raise ValidationError(
            "skew matrix is numerically singular: singular values span "
            f"[{sing[0]:.3e}, {sing[-1]:.3e}]"
        )

    # Cluster on singular-value gaps relative to the spectral norm.
    splits = np.nonzero(np.diff(sing) > CLUSTER_RTOL * sing[-1])[0] + 1
    groups = np.split(np.arange(dim), splits)

    us = []
    ws = []
    ds = []
    for idx in groups:
        if len(idx) % 2 == 1:
            raise NumericalContractError(
                f"odd eigenvalue cluster of size {len(idx)} near {sing[idx[0]]:.6e}; "
                "cluster separation is ill-defined for this input"
            )
        block = vecs[:, idx].copy()
        while block.shape[1] > 0:
            u = block[:, 0]
            ku = k @ u
            d = fnorm(ku)
            if d == 0.0:
                raise NumericalContractError("zero pairing norm inside skew cluster")
            wv = -ku / d
            us.append(u)
            ws.append(wv)
            ds.append(d)
            rest = block[:, 1:]
            if rest.shape[1] == 0:
                break
            rest = rest - np.outer(u, u @ rest) - np.outer(wv, wv @ rest)
            uu, ss, _ = np.linalg.svd(rest, full_matrices=False)
            keep = int(np.sum(ss > 0.5))
            if keep != rest.shape[1] - 1:
                raise NumericalContractError(
                    f"skew cluster deflation kept {keep} of {rest.shape[1]} columns"
                )
            block = uu[:, :keep]

    order = np.argsort(ds, kind="stable")
    d = np.asarray(ds)[order]
    q = np.column_stack([np.column_stack(us)[:, order], np.column_stack(ws)[:, order]])

    # Nearly degenerate clusters leave O(eps/gap) cross terms in q; the
    # polar correction restores orthogonality without moving the span.
    w_q, v_q = sym_eig(q.T @ q)
    q = q @ (v_q * (1.0 / np.sqrt(w_q))) @ v_q.T

    m = dim // 2
    canon = np.zeros((dim, dim))
    canon[:m, m:] = np.diag(d)
    canon[m:, :m] = -np.diag(d)
    resid = fnorm(q.T @ k @ q - canon)
    if resid > tol * max(1.0, fnorm(k)):
        raise NumericalContractError(
            f"skew canonical residual {resid:.3e} exceeds tolerance"
        )
    orth = fnorm(q.T @ q - np.eye(dim))
    if orth > 1e-10:
        raise NumericalContractError(f"skew canonical basis lost orthogonality: {orth:.3e}")
    return q, d
