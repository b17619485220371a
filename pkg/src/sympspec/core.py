"""Symplectic spectra and Williamson normal forms.

Conventions used throughout the package:

* the ambient space is R^(2n) with the standard form matrix
  J = [[0, I], [-I, 0]],
* symplectic eigenvalues are reported ascending as a length-n vector d,
* a Williamson basis M satisfies M.T A M = diag(d, d) and M.T J M = J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalContractError, ValidationError
from .linalg import (
    check_square,
    check_symmetric,
    fnorm,
    pd_sqrt_invsqrt,
    skew_canonical,
)

SYM_RTOL = 1e-12
WILLIAMSON_RTOL_A = 1e-8
WILLIAMSON_TOL_J = 1e-9
TUPLE_TOL = 1e-8
COND_WARN = 1e12

METHODS = ("skew-canonical", "ja-eigen", "williamson")


def half_dim(a, name="matrix"):
    """Half-dimension n of a 2n x 2n matrix."""
    a = check_square(a, name)
    if a.shape[0] % 2 == 1 or a.shape[0] == 0:
        raise ValidationError(f"{name} must have even positive size, got {a.shape[0]}")
    return a.shape[0] // 2


def symplectic_form(n):
    """The 2n x 2n standard form matrix J."""
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def apply_form(x):
    """J @ x without materializing J; works on vectors and matrices."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0] // 2
    return np.concatenate([x[n:], -x[:n]], axis=0)


def symplectic_inner(x, y):
    """The bilinear form <x, J y>."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.shape[0] // 2
    return float(x[:n] @ y[n:] - x[n:] @ y[:n])


def symplectic_gram(x, y):
    """Matrix of pairwise form values X.T J Y for column stacks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.shape[0] // 2
    return x[:n].T @ y[n:] - x[n:].T @ y[:n]


def check_positive_definite(a, name="matrix"):
    """Symmetrize, verify positive definiteness, return (A, wmin, wmax)."""
    a = check_symmetric(a, tol=SYM_RTOL, name=name)
    w = np.linalg.eigvalsh(a)
    if w[0] <= 0.0:
        raise ValidationError(
            f"{name} is not positive definite: smallest eigenvalue {w[0]:.6e}"
        )
    return a, float(w[0]), float(w[-1])


def condition_number(a):
    _, wmin, wmax = check_positive_definite(a)
    return wmax / wmin


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Output of williamson(): spectrum, basis, and achieved residuals.

    residual_a is ||M.T A M - diag(d, d)|| relative to ||diag(d, d)||;
    residual_j is the absolute form defect ||M.T J M - J||.
    """

    d: np.ndarray
    m: np.ndarray
    residual_a: float
    residual_j: float

    def normal_form(self):
        return np.diag(np.concatenate([self.d, self.d]))


def williamson(a, tol_a=WILLIAMSON_RTOL_A, tol_j=WILLIAMSON_TOL_J):
    """Symplectic diagonalization of a positive definite matrix.

    Reduces A^(-1/2) J A^(-1/2) to skew canonical form and undoes the
    square-root scaling.  The returned basis M satisfies both defining
    identities to the stated tolerances or the call raises.
    """
    a, _, _ = check_positive_definite(a)
    n = half_dim(a)
    _, inv_root = pd_sqrt_invsqrt(a)

    k = inv_root @ apply_form(inv_root)
    k = 0.5 * (k - k.T)
    q, omega = skew_canonical(k)

    # Angles of K are reciprocals of the spectrum, so reverse to ascend.
    d = 1.0 / omega[::-1]
    qu = q[:, :n][:, ::-1]
    qw = q[:, n:][:, ::-1]
    scale = np.sqrt(d)
    m = inv_root @ np.hstack([qu * scale, qw * scale])

    normal = np.diag(np.concatenate([d, d]))
    residual_a = fnorm(m.T @ a @ m - normal) / max(1.0, fnorm(normal))
    residual_j = fnorm(m.T @ symplectic_form(n) @ m - symplectic_form(n))
    if residual_a > tol_a:
        raise NumericalContractError(
            f"diagonalization residual {residual_a:.3e} exceeds {tol_a:.1e}"
        )
    if residual_j > tol_j:
        raise NumericalContractError(
            f"basis form defect {residual_j:.3e} exceeds {tol_j:.1e}"
        )
    return WilliamsonDecomposition(d=d, m=m, residual_a=residual_a, residual_j=residual_j)


def symplectic_eigenvalues(a, method="skew-canonical"):
    """Ascending symplectic spectrum of a positive definite matrix.

    Methods:
      skew-canonical  angles of A^(1/2) J A^(1/2)
      ja-eigen        imaginary parts of the spectrum of J A
      williamson      spectrum reported by the full decomposition
    """
    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}, expected one of {METHODS}")
    a, _, _ = check_positive_definite(a)
    half_dim(a)
    if method == "williamson":
        return williamson(a).d
    if method == "ja-eigen":
        vals = np.linalg.eigvals(apply_form(a))
        imag = np.sort(np.abs(vals.imag))
        # Spectrum comes in +/- pairs; average the two copies of each d.
        return 0.5 * (imag[::2] + imag[1::2])
    root, _ = pd_sqrt_invsqrt(a)
    k = root @ apply_form(root)
    k = 0.5 * (k - k.T)
    _, d = skew_canonical(k)
    return d


def eigenpair_residual(a, u, v, d):
    """Defects of the pair relations A u = d J v and A v = -d J u."""
    a = np.asarray(a, dtype=float)
    r1 = fnorm(a @ u - d * apply_form(v))
    r2 = fnorm(a @ v + d * apply_form(u))
    return r1, r2


def tuple_form_defect(x, y):
    """How far the columns (x_i, y_i) are from symplectic pairing."""
    k = x.shape[1]
    gxy = symplectic_gram(x, y) - np.eye(k)
    gxx = symplectic_gram(x, x)
    gyy = symplectic_gram(y, y)
    return max(fnorm(gxy), fnorm(gxx), fnorm(gyy))


def compress(a, x, y, tol=TUPLE_TOL):
    """Restriction of A to the span of a symplectic tuple.

    The columns of x and y must satisfy <x_i, J y_j> = delta_ij with all
    other pairings zero.  Returns (A_M, d_M): the compressed matrix in
    the tuple's own coordinates and its symplectic spectrum.
    """
    a, _, _ = check_positive_definite(a)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 2 or x.shape[0] != a.shape[0]:
        raise ValidationError(
            f"tuple shapes {x.shape} and {y.shape} do not match matrix of size {a.shape[0]}"
        )
    defect = tuple_form_defect(x, y)
    if defect > tol:
        raise ValidationError(
            f"columns are not a symplectic tuple: pairing defect {defect:.3e}"
        )
    t = np.hstack([x, y])
    a_m = t.T @ a @ t
    a_m = 0.5 * (a_m + a_m.T)
    d_m = symplectic_eigenvalues(a_m)
    return a_m, d_m


def as_generator(seed):
    """Coerce an int seed, SeedSequence, or Generator to a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_symplectic(n, rng, spread=2.0):
    """Random symplectic matrix exp(J H) with H symmetric, ||H|| <= spread."""
    rng = as_generator(rng)
    g = rng.standard_normal((2 * n, 2 * n))
    h = 0.5 * (g + g.T)
    norm = np.linalg.norm(h, 2)
    if norm > spread:
        h *= spread / norm
    m = scipy.linalg.expm(apply_form(h))
    defect = fnorm(m.T @ symplectic_form(n) @ m - symplectic_form(n))
    if defect > 1e-10 * max(1.0, fnorm(m) ** 2):
        raise NumericalContractError(f"symplectic exponential defect {defect:.3e}")
    return m


def random_pd(n, rng, spectrum=None):
    """Random 2n x 2n positive definite matrix.

    With spectrum=None a regularized Wishart draw; otherwise a matrix
    whose symplectic spectrum equals the given positive values (sorted
    ascending), realized through a random symplectic congruence.
    """
    rng = as_generator(rng)
    if spectrum is None:
        r = rng.standard_normal((2 * n, 2 * n))
        a = r @ r.T
        a += 1e-3 * (np.trace(a) / (2 * n)) * np.eye(2 * n)
        return 0.5 * (a + a.T)
    d = np.sort(np.asarray(spectrum, dtype=float))
    if d.shape != (n,) or np.any(d <= 0.0):
        raise ValidationError(f"spectrum must be {n} positive values, got {spectrum!r}")
    s = random_symplectic(n, rng)
    normal = np.diag(np.concatenate([d, d]))
    a = s.T @ normal @ s
    return 0.5 * (a + a.T)
