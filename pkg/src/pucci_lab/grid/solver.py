"""Wide-stencil discretization of Pucci operators and the solvers on top.

The scheme forms, for each of 8 orthogonal direction pairs, the sum of
second differences weighted by the ellipticity bounds, then takes the max
(Plus) or min (Minus) over pairs.  With exact cut-cell arm lengths each
second difference is exact on quadratics, so the scheme is monotone and
consistent, and solutions that happen to be quadratic are reproduced to
rounding.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..errors import IterationLimit, PositivityLoss
from ..operators import Variant
from .domain import GridField, boundary_data

_GRAD_FLOOR = 1e-8


def _arm_values(dom, values, bvals):
    """Forward/backward neighbour values, taking cuts from boundary data."""
    vf = np.where(dom.nbf >= 0, values[np.clip(dom.nbf, 0, None)], 0.0)
    vb = np.where(dom.nbb >= 0, values[np.clip(dom.nbb, 0, None)], 0.0)
    m = dom.cutf >= 0
    vf[m] = bvals[dom.cutf[m]]
    m = dom.cutb >= 0
    vb[m] = bvals[dom.cutb[m]]
    return vf, vb


def _second_differences(dom, values, bvals, weights):
    vf, vb = _arm_values(dom, values, bvals)
    sf, sb = dom.armf, dom.armb
    v0 = values[:, None]
    delta = 2.0 * (sb * vf + sf * vb - (sf + sb) * v0) / (sf * sb * (sf + sb))
    return delta * weights


def _gradient(dom, values, bvals):
    """Centered first differences along the two axis directions."""
    vf, vb = _arm_values(dom, values, bvals)
    sf, sb = dom.armf[:, :2], dom.armb[:, :2]
    v0 = values[:, None]
    num = sb ** 2 * vf[:, :2] - sf ** 2 * vb[:, :2] + (sf ** 2 - sb ** 2) * v0
    return num / (sf * sb * (sf + sb))


def _pair_sums(params, delta, pairs):
    if params.variant is Variant.PLUS:
        contrib = params.A * np.maximum(delta, 0.0) + params.a * np.minimum(delta, 0.0)
    else:
        contrib = params.a * np.maximum(delta, 0.0) + params.A * np.minimum(delta, 0.0)
    return contrib[:, pairs[:, 0]] + contrib[:, pairs[:, 1]]


def _grad_weight(params, dom, values, bvals):
    if params.alpha == 0.0:
        return np.ones(dom.n_cells)
    gx, gy = _gradient(dom, values, bvals).T
    g = np.maximum(np.hypot(gx, gy), _GRAD_FLOOR)
    return g ** params.alpha


def discretize_F(params, dom, field, stencil=None):
    """Apply the discrete operator |grad u|^alpha * M(D^2 u) cellwise.

    ``field.boundary_values`` must be set; cut arms read from it.  Passing
    ``stencil`` overrides the stencil stored on the domain (the negative
    controls inject a broken one this way).
    """
    if field.boundary_values is None:
        raise ValueError("field needs boundary_values to apply the operator")
    st = dom.stencil if stencil is None else stencil
    delta = _second_differences(dom, field.values, field.boundary_values,
                                st.weights)
    psum = _pair_sums(params, delta, st.pairs)
    core = psum.max(axis=1) if params.variant is Variant.PLUS else psum.min(axis=1)
    if params.alpha != 0.0:
        gx, gy = _gradient(dom, field.values, field.boundary_values).T
        g = np.hypot(gx, gy)
        if params.alpha < 0.0:
            g = np.maximum(g, _GRAD_FLOOR)
        core = np.where(g > 0.0, g ** params.alpha * core,
                        0.0 if params.alpha > 0.0 else core)
    return GridField(dom, core, None)


class _VectorTerm:
    """Fixed cellwise forcing, used by the eigen solver's inner solves."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)

    def evaluate(self, u, alpha=0.0):
        return self.values * np.ones_like(u)

    def evaluate_deriv(self, u, alpha=0.0):
        return np.zeros_like(u)


def _source_terms(source, u, alpha):
    """Value and u-derivative of the zeroth order term, cellwise."""
    if hasattr(source, "evaluate"):
        f = source.evaluate(u, alpha)
        fp = source.evaluate_deriv(u, alpha)
    else:
        f = source(u)
        eps = 1e-7 * max(1.0, float(np.abs(u).max(initial=0.0)))
        fp = (source(u + eps) - source(u - eps)) / (2.0 * eps)
    return np.asarray(f) * np.ones_like(u), np.asarray(fp) * np.ones_like(u)


def _policy_matrix(params, dom, delta, grad_weight, bvals):
    """Linearize the pair extremum at the current second differences.

    At the active pair the extremum is attained, so F(u) = M u + b holds
    exactly at the linearization point; M is an M-matrix for positive
    stencil weights.  Returns (M, b, signature) where the signature
    identifies the active policy for factorization reuse.
    """
    n = dom.n_cells
    psum = _pair_sums(params, delta, dom.stencil.pairs)
    if params.variant is Variant.PLUS:
        pick = psum.argmax(axis=1)
        hi, lo = params.A, params.a
    else:
        pick = psum.argmin(axis=1)
        hi, lo = params.a, params.A
    classes = dom.stencil.pairs[pick]
    idx = np.arange(n)
    rows, cols, vals = [], [], []
    bvec = np.zeros(n)
    signs = np.empty((n, 2), dtype=np.int8)
    for k in (0, 1):
        c = classes[:, k]
        d = delta[idx, c]
        signs[:, k] = d > 0.0
        coef = np.where(d > 0.0, hi, lo) * dom.stencil.weights[c] * grad_weight
        sf = dom.armf[idx, c]
        sb = dom.armb[idx, c]
        denom = sf + sb
        wf = coef * 2.0 / (sf * denom)
        wb = coef * 2.0 / (sb * denom)
        w0 = coef * (-2.0) / (sf * sb)
        rows.append(idx)
        cols.append(idx)
        vals.append(w0)
        nf = dom.nbf[idx, c]
        own = nf >= 0
        rows.append(idx[own])
        cols.append(nf[own])
        vals.append(wf[own])
        cut = ~own
        bvec[idx[cut]] += wf[cut] * bvals[dom.cutf[idx[cut], c[cut]]]
        nb = dom.nbb[idx, c]
        own = nb >= 0
        rows.append(idx[own])
        cols.append(nb[own])
        vals.append(wb[own])
        cut = ~own
        bvec[idx[cut]] += wb[cut] * bvals[dom.cutb[idx[cut], c[cut]]]
    mat = sp.csr_matrix((np.concatenate(vals),
                         (np.concatenate(rows), np.concatenate(cols))),
                        shape=(n, n))
    sig = pick.tobytes() + signs.tobytes()
    return mat, bvec, sig


def _residual(params, dom, values, bvals, source):
    op = discretize_F(params, dom, GridField(dom, values, bvals)).values
    f, _ = _source_terms(source, values, params.alpha)
    return op + f


def solve_dirichlet(params, dom, source, g=0.0, *, method="policy",
                    tol=1e-8, max_outer=80, max_damped=400_000, tau=None,
                    u0=None, lu_cache=None):
    """Solve F[u] + f(u) = 0 with Dirichlet data g on the cut boundary.

    method="policy" linearizes the pair extremum at the current iterate and
    solves the resulting sparse system (one semismooth Newton step, equal
    to a Howard policy update when f is linear).  method="damped" is the
    explicit fixed-point iteration u <- u + tau*(F[u] + f(u)); it needs no
    linear algebra, but the admissible tau shrinks with the smallest cut
    arm, so it is practical only on coarse grids.

    Convergence is declared on the true assembled residual:
    sup |F[u] + f(u)| <= tol * max(1, sup|u|).
    """
    bvals = boundary_data(dom, g)
    u = np.zeros(dom.n_cells) if u0 is None else np.asarray(u0, float).copy()

    if method == "damped":
        if tau is None:
            wmax = (2.0 / (dom.armf * dom.armb)).max()
            tau = 0.45 / (params.A * wmax)
        history = []
        for _ in range(max_damped):
            r = _residual(params, dom, u, bvals, source)
            res = float(np.abs(r).max())
            history.append(res)
            if res <= tol * max(1.0, np.abs(u).max()):
                return GridField(dom, u, bvals)
            u = u + tau * r
        raise IterationLimit(
            f"damped iteration at residual {history[-1]:.3e} after "
            f"{max_damped} steps", history=history[-50:])

    if method != "policy":
        raise ValueError(f"unknown method {method!r}")

    if lu_cache is None:
        lu_cache = {}
    res = np.inf
    for _ in range(max_outer):
        r = _residual(params, dom, u, bvals, source)
        res = float(np.abs(r).max())
        if res <= tol * max(1.0, np.abs(u).max()):
            return GridField(dom, u, bvals)
        gw = _grad_weight(params, dom, u, bvals)
        delta = _second_differences(dom, u, bvals, dom.stencil.weights)
        mat, _, sig = _policy_matrix(params, dom, delta, gw, bvals)
        _, fp = _source_terms(source, u, params.alpha)
        key = sig + fp.tobytes() + gw.tobytes()
        if lu_cache.get("key") != key:
            lu_cache["key"] = key
            lu_cache["lu"] = spla.splu((mat + sp.diags(fp)).tocsc())
        du = lu_cache["lu"].solve(-r)
        if not np.isfinite(du).all():
            raise IterationLimit("linear step produced non-finite values")
        u = u + du
    raise IterationLimit(
        f"policy iteration did not reach tol={tol:g} in {max_outer} steps "
        f"(last residual {res:.3e})")


def principal_eigenvalue_grid(params, dom, *, tol=1e-6, max_power=400,
                              inner_tol=1e-10):
    """Principal half-eigenvalue by inverse power iteration.

    Repeatedly solves F[phi_next] = -phi with zero boundary data and reads
    the eigenvalue from the sup norm of the new iterate.  Requires
    alpha = 0, where the operator is positively 1-homogeneous.  Raises
    PositivityLoss if the normalized iterate dips below -1e-12 anywhere,
    which is the discrete symptom of leaving the principal branch.
    """
    if params.alpha != 0.0:
        raise ValueError("grid eigenvalue iteration requires alpha = 0")
    phi = np.ones(dom.n_cells)
    lam_prev = None
    u_guess = None
    cache = {}
    for _ in range(max_power):
        sol = solve_dirichlet(params, dom, _VectorTerm(phi), 0.0,
                              tol=inner_tol, u0=u_guess, lu_cache=cache)
        nxt = sol.values
        top = float(np.abs(nxt).max())
        if top <= 0.0:
            raise PositivityLoss("inverse power step collapsed to zero")
        lam = 1.0 / top
        phi_new = nxt / top
        if phi_new.min() < -1e-12:
            raise PositivityLoss(
                f"eigenfunction lost positivity (min {phi_new.min():.3e})")
        if lam_prev is not None and abs(lam - lam_prev) <= tol * abs(lam):
            return lam, GridField(dom, phi_new, np.zeros(len(dom.cut_xy)))
        lam_prev = lam
        phi = phi_new
        u_guess = nxt
    raise IterationLimit(f"eigen iteration did not settle in {max_power} "
                         f"sweeps (last {lam_prev})")
