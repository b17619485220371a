"""Geometry relative to a symplectic basis: coordinates, the prime map,
sharp subspaces, and the constructive chain machinery.

A SymplecticBasis holds columns (u_1..u_m, v_1..v_m) pairing to the
identity under the symplectic form.  Its coordinates turn the basis
inner product into the Euclidean one, the prime map into the linear map
(a, b) -> (-b, a), and the restricted symplectic form into the standard
one, so every structural computation below happens on coordinate
vectors with plain Euclidean linear algebra.

Subspaces are passed and returned as ambient matrices with orthonormal
columns.  Randomized existence steps draw inside explicitly computed
feasible subspaces and retry on failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    apply_form,
    as_generator,
    symplectic_form,
    symplectic_gram,
)
from .errors import ConstructionError, NumericalContractError, ValidationError
from .linalg import (
    fnorm,
    max_principal_angle,
    null_space_basis,
    orthonormal_columns,
    span_residual,
    subspace_intersect,
)

BASIS_TOL = 1e-8
MEMBERSHIP_RTOL = 1e-8
SPAN_RTOL = 1e-9
MAX_DRAWS = 20
MAX_REBUILDS = 3


def prime_coords(a):
    """The prime map in basis coordinates: (alpha, beta) -> (-beta, alpha)."""
    a = np.asarray(a, dtype=float)
    m = a.shape[0] // 2
    return np.concatenate([-a[m:], a[:m]], axis=0)


class SymplecticBasis:
    """Columns (u_1..u_m, v_1..v_m) of R^(2n) with <u_i, J v_j> = delta_ij
    and all other pairings zero.  m = n gives a basis of the full space.
    """

    def __init__(self, cols, tol=BASIS_TOL):
        cols = np.asarray(cols, dtype=float)
        if cols.ndim != 2 or cols.shape[0] % 2 == 1 or cols.shape[1] % 2 == 1:
            raise ValidationError(f"basis columns have invalid shape {cols.shape}")
        if cols.shape[1] == 0 or cols.shape[1] > cols.shape[0]:
            raise ValidationError(f"basis columns have invalid shape {cols.shape}")
        m = cols.shape[1] // 2
        defect = fnorm(symplectic_gram(cols, cols) - symplectic_form(m))
        if defect > tol:
            raise ValidationError(
                f"columns are not symplectically orthonormal: defect {defect:.3e}"
            )
        self.cols = cols
        self.n = cols.shape[0] // 2
        self.m = m
        u, v = cols[:, :m], cols[:, m:]
        # Row i of the top block is (J v_i)^T, so it reads off alpha_i;
        # the bottom block reads off beta_i.  Exact left inverse of cols.
        self._coord = np.vstack([apply_form(v).T, -apply_form(u).T])
        self._span = orthonormal_columns(cols)

    @classmethod
    def standard(cls, n):
        return cls(np.eye(2 * n))

    @classmethod
    def from_symplectic_matrix(cls, m, tol=BASIS_TOL):
        return cls(np.asarray(m, dtype=float), tol=tol)

    @property
    def u(self):
        return self.cols[:, : self.m]

    @property
    def v(self):
        return self.cols[:, self.m :]

    def coords(self, x, check=True, tol=MEMBERSHIP_RTOL):
        """Coordinates (alpha, beta); rejects vectors outside the span."""
        x = np.asarray(x, dtype=float)
        a = self._coord @ x
        if check:
            nx = fnorm(x)
            if nx > 0.0 and fnorm(x - self.cols @ a) > tol * nx:
                raise ValidationError("vector lies outside the basis span")
        return a

    def lift(self, a):
        return self.cols @ np.asarray(a, dtype=float)

    def span_residual(self, x):
        return span_residual(self._span, x)

    def in_span(self, x, tol=MEMBERSHIP_RTOL):
        return self.span_residual(x) <= tol

    def prime(self, x):
        """B-complement x': coordinates (alpha, beta) -> (-beta, alpha)."""
        return self.lift(prime_coords(self.coords(x)))

    def b_inner(self, x, y, tol=SPAN_RTOL):
        ax = self.coords(x, tol=tol)
        ay = self.coords(y, tol=tol)
        return float(ax @ ay)

    def b_norm(self, x, tol=SPAN_RTOL):
        return float(np.linalg.norm(self.coords(x, tol=tol)))


@dataclass(frozen=True)
class BDiagonalOperator:
    """Operator sending u_i -> d_i u_i and v_i -> d_i v_i.

    For an eigenbasis of A with spectrum d, its basis-inner quadratic
    form reproduces <x, A x> exactly; that identity drives the trace
    equality check below.
    """

    basis: SymplecticBasis
    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.shape != (self.basis.m,) or np.any(d <= 0.0):
            raise ValidationError(
                f"diagonal must be {self.basis.m} positive values"
            )
        object.__setattr__(self, "d", d)

    def apply(self, x):
        a = self.basis.coords(x)
        m = self.basis.m
        scale = self.d.reshape((m,) + (1,) * (a.ndim - 1))
        return self.basis.lift(np.concatenate([a[:m] * scale, a[m:] * scale], axis=0))

    def quad(self, x):
        """<x, Dx>_B = sum d_i (alpha_i^2 + beta_i^2)."""
        a = self.basis.coords(x)
        m = self.basis.m
        return float(self.d @ (a[:m] ** 2 + a[m:] ** 2))


def b_inner(x, y, basis):
    return basis.b_inner(x, y)


def b_complement(x, basis):
    return basis.prime(x)


def _coords_subspace(w, basis, tol=MEMBERSHIP_RTOL):
    """Coordinate-space orthonormal basis of an ambient subspace."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != 2 * basis.n:
        raise ValidationError(f"subspace basis has invalid shape {w.shape}")
    for j in range(w.shape[1]):
        if basis.span_residual(w[:, j]) > tol:
            raise ValidationError("subspace is not contained in the basis span")
    return orthonormal_columns(basis.coords(w, check=False))


def _sharp_std(g):
    """Coordinate-space W-sharp = W intersect W-prime."""
    return subspace_intersect(g, prime_coords(g))


def prime_subspace(w, basis):
    """Ambient orthonormal basis of W' = {x' : x in W}."""
    wc = _coords_subspace(w, basis)
    lifted = basis.lift(prime_coords(wc))
    out = orthonormal_columns(lifted)
    if out.shape[1] != wc.shape[1]:
        raise NumericalContractError(
            f"prime image lost rank: {out.shape[1]} of {wc.shape[1]}"
        )
    return out


def subspace_prime_sharp(w, basis):
    """(W', W#) for an ambient subspace W inside span(basis).

    W# is the prime-invariant part W intersect W'; its dimension is
    always even, and that is checked rather than assumed.
    """
    wc = _coords_subspace(w, basis)
    pc = prime_coords(wc)
    sharp_c = subspace_intersect(wc, pc)
    if sharp_c.shape[1] % 2 == 1:
        raise NumericalContractError(
            f"sharp space has odd dimension {sharp_c.shape[1]}; "
            "intersection is numerically ambiguous for this input"
        )
    if sharp_c.shape[1] > 0:
        angle = max_principal_angle(sharp_c, prime_coords(sharp_c))
        if angle > 1e-7:
            raise NumericalContractError(
                f"sharp space is not prime-invariant: angle {angle:.3e}"
            )
    w_prime = orthonormal_columns(basis.lift(pc))
    w_sharp = orthonormal_columns(basis.lift(sharp_c))
    return w_prime, w_sharp


def symplectic_complement(s, ambient=None, tol=1e-8):
    """Orthonormal basis of the symplectic complement of S inside ambient.

    ambient defaults to the full space; when given, it must be a
    symplectic subspace containing S.
    """
    s = np.asarray(s, dtype=float)
    dim = s.shape[0]
    so = orthonormal_columns(s)
    if ambient is None:
        ambient = np.eye(dim)
    amb = orthonormal_columns(ambient)
    gram_amb = symplectic_gram(amb, amb)
    if amb.shape[1] == 0 or amb.shape[1] % 2 == 1:
        raise ValidationError("ambient subspace is not symplectic: odd dimension")
    sing = np.linalg.svd(gram_amb, compute_uv=False)
    if sing[-1] <= tol:
        raise ValidationError(
            f"ambient subspace is not symplectic: form degeneracy {sing[-1]:.3e}"
        )
    for j in range(so.shape[1]):
        if span_residual(amb, so[:, j]) > tol:
            raise ValidationError("subspace is not contained in the ambient space")
    coeff = null_space_basis(symplectic_gram(so, amb))
    out = amb @ coeff
    if so.shape[1] + out.shape[1] != amb.shape[1]:
        raise NumericalContractError(
            f"complement dimension {out.shape[1]} inconsistent with "
            f"{so.shape[1]} inside {amb.shape[1]}"
        )
    return out


def is_isotropic(w, tol=1e-8):
    """True when all pairwise symplectic products inside W vanish."""
    wo = orthonormal_columns(w)
    if wo.shape[1] == 0:
        return True
    return float(np.max(np.abs(symplectic_gram(wo, wo)))) <= tol


def b_gram_schmidt(vectors, basis, skew_constraint=None, tol=1e-8):
    """Modified Gram-Schmidt in the basis inner product.

    Returns vectors with the same span, B-orthonormal, normalized with
    positive leading coefficient (already B-orthonormal input passes
    through unchanged).  When skew_constraint is given, the inputs must
    be skew-orthogonal to those vectors and the outputs are checked to
    remain so.
    """
    vecs = np.asarray(vectors, dtype=float)
    if vecs.ndim != 2:
        raise ValidationError(f"expected a column matrix, got shape {vecs.shape}")
    if skew_constraint is not None:
        gap = float(np.max(np.abs(symplectic_gram(skew_constraint, vecs)))) if vecs.size else 0.0
        if gap > tol:
            raise ValidationError(
                f"inputs are not skew-orthogonal to the constraints: {gap:.3e}"
            )
    a = basis.coords(vecs)
    outs = []
    for j in range(a.shape[1]):
        r = a[:, j].copy()
        scale = np.linalg.norm(r)
        for q in outs:
            r -= (q @ r) * q
        nrm = np.linalg.norm(r)
        if nrm <= 1e-10 * max(1.0, scale):
            raise ValidationError(f"input vectors are rank deficient at column {j}")
        outs.append(r / nrm)
    out = basis.lift(np.column_stack(outs))
    if skew_constraint is not None:
        gap = float(np.max(np.abs(symplectic_gram(skew_constraint, out))))
        if gap > tol:
            raise NumericalContractError(
                f"orthogonalization broke skew-orthogonality: {gap:.3e}"
            )
    return out


def _tuple_defects(t_coords):
    """(orthonormality, symplectic) defects of a full coordinate tuple."""
    k2 = t_coords.shape[1]
    ortho = fnorm(t_coords.T @ t_coords - np.eye(k2))
    symp = fnorm(symplectic_gram(t_coords, t_coords) - symplectic_form(k2 // 2))
    return ortho, symp


def same_span_trace_check(a, x_set, v_set, basis, d=None, span_tol=1e-8, rtol=1e-9, check=True):
    """Trace identity for two B-orthosymplectic tuples with equal span.

    Returns (lhs, rhs) with lhs = sum_j (<x_j, A x_j> + <x_j', A x_j'>)
    and rhs the same for the v_j.  The two agree within rtol relative
    whenever the span and orthosymplecticity preconditions hold.  When
    the eigen-spectrum d of A in this basis is supplied, the route
    <x, Dx>_B = <x, Ax> is verified on every vector along the way.
    """
    a = np.asarray(a, dtype=float)
    x_set = np.asarray(x_set, dtype=float)
    v_set = np.asarray(v_set, dtype=float)
    if x_set.shape != v_set.shape:
        raise ValidationError(
            f"tuple shapes {x_set.shape} and {v_set.shape} differ"
        )
    xc = basis.coords(x_set)
    vc = basis.coords(v_set)
    xf = np.hstack([xc, prime_coords(xc)])
    vf = np.hstack([vc, prime_coords(vc)])
    for name, t in (("first", xf), ("second", vf)):
        ortho, symp = _tuple_defects(t)
        if max(ortho, symp) > span_tol:
            raise ValidationError(
                f"{name} tuple is not B-orthosymplectic: "
                f"defects {ortho:.3e}, {symp:.3e}"
            )
    angle = max_principal_angle(xf, vf)
    if angle > span_tol:
        raise ValidationError(f"tuple spans differ: principal angle {angle:.3e}")

    xa = basis.lift(xf)
    va = basis.lift(vf)
    lhs = float(np.sum(xa * (a @ xa)))
    rhs = float(np.sum(va * (a @ va)))
    if d is not None:
        op = BDiagonalOperator(basis, d)
        for cols in (xa, va):
            for j in range(cols.shape[1]):
                direct = float(cols[:, j] @ (a @ cols[:, j]))
                via_b = op.quad(cols[:, j])
                if abs(direct - via_b) > 1e-8 * max(1.0, abs(direct)):
                    raise NumericalContractError(
                        f"diagonal-operator identity failed: {direct:.12e} "
                        f"vs {via_b:.12e}"
                    )
    if check and abs(lhs - rhs) > rtol * max(1.0, abs(lhs)):
        raise NumericalContractError(
            f"trace equality violated: lhs {lhs:.12e}, rhs {rhs:.12e}"
        )
    return lhs, rhs


def _unit_in(g, rng):
    """Random unit vector in the column span of g."""
    if g.shape[1] == 0:
        raise ConstructionError("feasible subspace is empty")
    for _ in range(MAX_DRAWS):
        x = g @ rng.standard_normal(g.shape[1])
        nrm = np.linalg.norm(x)
        if nrm > 1e-8:
            return x / nrm
    raise ConstructionError("failed to draw a unit vector")


def _constrained_subspace(g, constraints):
    """Vectors in span(g) skew-orthogonal to every constraint column."""
    if g.shape[1] == 0 or constraints.shape[1] == 0:
        return g
    return g @ null_space_basis(symplectic_gram(constraints, g))


def _chain_extend_std(chain, ws, rng):
    """Coordinate-space chain extension.

    chain: decreasing list of k coordinate subspaces; ws: k-1 columns,
    B-orthonormal, mutually skew-orthogonal, ws[:, j] in sharp(chain[j]).
    Returns (v, x) with v a fresh unit in sharp(chain[0]) skew-orthogonal
    to the ws, and x a k-column B-orthonormal skew-orthogonal set with
    x[:, j] in sharp(chain[j]) whose pair span is span(ws pairs) plus
    span{v, v'}.
    """
    k = len(chain)
    if k == 1:
        sharp1 = _sharp_std(chain[0])
        v = _unit_in(sharp1, rng)
        return v, v[:, None]

    u, xs = _chain_extend_std(chain[1:], ws[:, 1:], rng)
    uspan = orthonormal_columns(np.hstack([ws, prime_coords(ws)]))
    sharp1 = _sharp_std(chain[0])
    feas = _constrained_subspace(sharp1, uspan)
    if feas.shape[1] == 0:
        raise ConstructionError("feasible subspace for the new vector is empty")

    # Split u into its component inside the pair span and the rest; the
    # rest already lies in the feasible space, so snapping it onto the
    # computed basis of that space keeps memberships exact even when the
    # component is tiny.  A vanishing component means any fresh unit works.
    u2 = u - uspan @ (uspan.T @ u)
    proj = feas @ (feas.T @ u2)
    nrm = np.linalg.norm(proj)
    v = proj / nrm if nrm > 1e-10 else _unit_in(feas, rng)

    u0 = orthonormal_columns(
        np.hstack([uspan, v[:, None], prime_coords(v)[:, None]])
    )
    if u0.shape[1] != uspan.shape[1] + 2:
        raise NumericalContractError(
            f"extended pair span has dimension {u0.shape[1]}, "
            f"expected {uspan.shape[1] + 2}"
        )
    s = np.hstack([xs, prime_coords(xs)])
    z = u0 @ null_space_basis(s.T @ u0)
    if z.shape[1] != 2:
        raise NumericalContractError(
            f"replacement slot has dimension {z.shape[1]}, expected 2"
        )
    v1 = _unit_in(z, rng)
    return v, np.hstack([v1[:, None], xs])


def _dual_chain_std(vchain, wchain, rng):
    """Coordinate-space dual-chain construction (equal-span tuples)."""
    k = len(vchain)
    if k == 1:
        f = subspace_intersect(_sharp_std(vchain[0]), _sharp_std(wchain[0]))
        if f.shape[1] == 0:
            raise ConstructionError("sharp intersection is empty at the base case")
        x = _unit_in(f, rng)
        return x[:, None], x[:, None]

    vs, xs = _dual_chain_std(vchain[:-1], wchain[:-1], rng)
    s_chain = []
    m = vchain[0].shape[0] // 2
    for j in range(k):
        s = subspace_intersect(vchain[-1], wchain[j])
        if s.shape[1] < m + k - j:
            raise ConstructionError(
                f"chain intersection {j} has dimension {s.shape[1]}, "
                f"needs {m + k - j}"
            )
        s_chain.append(s)
    v, ws_new = _chain_extend_std(s_chain, xs, rng)
    # v is already B-orthogonal to the span of the previous pairs, so
    # this projection only strips rounding noise.
    pairs = np.hstack([xs, prime_coords(xs)])
    vk = v - pairs @ (pairs.T @ v)
    nrm = np.linalg.norm(vk)
    if nrm <= 1e-8:
        raise ConstructionError("new chain vector collapsed under orthogonalization")
    vk /= nrm
    return np.hstack([vs, vk[:, None]]), ws_new


def _validate_tuple_postconditions(tuples_and_chains, tol):
    """Membership, orthosymplecticity, and span equality of built tuples."""
    (vs, vchain_c), (ws, wchain_c) = tuples_and_chains
    vf = np.hstack([vs, prime_coords(vs)])
    wf = np.hstack([ws, prime_coords(ws)])
    for t in (vf, wf):
        ortho, symp = _tuple_defects(t)
        if max(ortho, symp) > tol:
            raise NumericalContractError(
                f"constructed tuple defects {ortho:.3e}, {symp:.3e}"
            )
    angle = max_principal_angle(vf, wf)
    if angle > tol:
        raise NumericalContractError(f"constructed spans differ by angle {angle:.3e}")
    for cols, chain in ((vs, vchain_c), (ws, wchain_c)):
        for j in range(cols.shape[1]):
            sharp = _sharp_std(chain[j])
            if sharp.shape[1] == 0 or span_residual(sharp, cols[:, j]) > tol:
                raise NumericalContractError(
                    f"constructed vector {j} left its sharp space"
                )


def chain_extend(chain, ws, basis, rng, tol=1e-8):
    """Extend a skew-orthogonal set along a decreasing subspace chain.

    chain is a decreasing list of k ambient subspaces with
    dim chain[j] >= m + k - j (0-based), ws an ambient matrix of k-1
    B-orthonormal mutually skew-orthogonal columns with
    ws[:, j] in sharp(chain[j]).  Returns (v, x): a fresh vector in
    sharp(chain[0]) skew-orthogonal to ws, and the k-column replacement
    set x with x[:, j] in sharp(chain[j]) spanning, together with its
    primes, the span of the ws pairs plus (v, v').
    """
    rng = as_generator(rng)
    k = len(chain)
    if k == 0:
        raise ValidationError("chain must contain at least one subspace")
    m = basis.m
    chain_c = [_coords_subspace(w, basis) for w in chain]
    for j, g in enumerate(chain_c):
        if g.shape[1] < m + k - j:
            raise ValidationError(
                f"chain space {j} has dimension {g.shape[1]}, "
                f"the construction needs at least {m + k - j}"
            )
        if j > 0 and max_principal_angle(
            chain_c[j], chain_c[j - 1] @ (chain_c[j - 1].T @ chain_c[j])
        ) > 1e-7:
            raise ValidationError(f"chain is not decreasing at position {j}")
    ws = np.asarray(ws, dtype=float)
    if ws.ndim != 2 or ws.shape[1] != k - 1:
        raise ValidationError(
            f"expected {k - 1} seed columns, got shape {ws.shape}"
        )
    ws_c = basis.coords(ws) if ws.shape[1] else np.zeros((2 * m, 0))
    if ws.shape[1]:
        ortho = fnorm(ws_c.T @ ws_c - np.eye(k - 1))
        skew = float(np.max(np.abs(symplectic_gram(ws_c, ws_c))))
        if max(ortho, skew) > tol:
            raise ValidationError(
                f"seed set defects {ortho:.3e}, {skew:.3e}"
            )
        for j in range(k - 1):
            sharp = _sharp_std(chain_c[j])
            if sharp.shape[1] == 0 or span_residual(sharp, ws_c[:, j]) > tol:
                raise ValidationError(f"seed vector {j} is not in its sharp space")

    last_err = None
    for _ in range(MAX_REBUILDS):
        try:
            v_c, xs_c = _chain_extend_std(chain_c, ws_c, rng)
            vf = np.hstack([xs_c, prime_coords(xs_c)])
            ortho, symp = _tuple_defects(vf)
            if max(ortho, symp) > tol:
                raise NumericalContractError(
                    f"output tuple defects {ortho:.3e}, {symp:.3e}"
                )
            for j in range(k):
                sharp = _sharp_std(chain_c[j])
                if sharp.shape[1] == 0 or span_residual(sharp, xs_c[:, j]) > tol:
                    raise NumericalContractError(f"output vector {j} left its sharp space")
            sharp1 = _sharp_std(chain_c[0])
            if span_residual(sharp1, v_c) > tol:
                raise NumericalContractError("fresh vector left the first sharp space")
            if ws.shape[1] and float(np.max(np.abs(symplectic_gram(ws_c, v_c[:, None])))) > tol:
                raise NumericalContractError("fresh vector is not skew-orthogonal to the seeds")
            target = np.hstack([ws_c, prime_coords(ws_c), v_c[:, None], prime_coords(v_c)[:, None]])
            angle = max_principal_angle(vf, target)
            if angle > tol:
                raise NumericalContractError(f"output span is off by angle {angle:.3e}")
            return basis.lift(v_c), basis.lift(xs_c)
        except (ConstructionError, NumericalContractError) as exc:
            last_err = exc
    raise ConstructionError(f"chain extension failed after retries: {last_err}")


def dual_chain_construct(vchain, wchain, basis, rng, tol=1e-8):
    """Equal-span tuples threading an increasing and a decreasing chain.

    dim vchain[j] = m + i_j and dim wchain[j] = 2m - i_j + 1 for one
    strictly increasing index set i.  Returns ambient (v, w), each a
    k-column set with v[:, j] in sharp(vchain[j]) and w[:, j] in
    sharp(wchain[j]); each set together with its primes is
    B-orthosymplectic and both have the same span.
    """
    rng = as_generator(rng)
    k = len(vchain)
    if k == 0 or len(wchain) != k:
        raise ValidationError("chains must be nonempty and of equal length")
    m = basis.m
    vchain_c = [_coords_subspace(w, basis) for w in vchain]
    wchain_c = [_coords_subspace(w, basis) for w in wchain]
    idx = []
    for j in range(k):
        i_v = vchain_c[j].shape[1] - m
        i_w = 2 * m - wchain_c[j].shape[1] + 1
        if i_v != i_w or not 1 <= i_v <= m:
            raise ValidationError(
                f"chain dimensions at position {j} do not match the pattern: "
                f"{vchain_c[j].shape[1]} and {wchain_c[j].shape[1]}"
            )
        idx.append(i_v)
    if any(idx[j] >= idx[j + 1] for j in range(k - 1)):
        raise ValidationError(f"index set {idx} is not strictly increasing")
    for j in range(1, k):
        if max_principal_angle(
            vchain_c[j - 1], vchain_c[j] @ (vchain_c[j].T @ vchain_c[j - 1])
        ) > 1e-7:
            raise ValidationError(f"increasing chain fails nesting at position {j}")
        if max_principal_angle(
            wchain_c[j], wchain_c[j - 1] @ (wchain_c[j - 1].T @ wchain_c[j])
        ) > 1e-7:
            raise ValidationError(f"decreasing chain fails nesting at position {j}")

    last_err = None
    for _ in range(MAX_REBUILDS):
        try:
            vs_c, ws_c = _dual_chain_std(vchain_c, wchain_c, rng)
            _validate_tuple_postconditions(
                ((vs_c, vchain_c), (ws_c, wchain_c)), tol
            )
            return basis.lift(vs_c), basis.lift(ws_c)
        except (ConstructionError, NumericalContractError) as exc:
            last_err = exc
    raise ConstructionError(f"dual chain construction failed after retries: {last_err}")
