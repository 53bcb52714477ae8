"""Sup-norm estimation and verification over simplex, ball, and sphere.

The search strategy is face decomposition: every local maximum of |p| over a
compact polytope/ball domain is a stationary point of p restricted to the
affine chart of some face, so each face is searched by multi-start Newton on
the chart gradient and the results are merged.  Bounds are heuristic-numeric
(multi-start), not certified enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .domains import BALL, Domain, SIMPLEX, SIMPLEX_FACE, SPHERE
from .polycore import (FLOAT64, Poly, PolyError, restrict_affine_last,
                       restrict_zero)

DEDUP_TOL = 1e-8
ACTIVE_TOL = 1e-10


@dataclass
class SupNormReport:
    value: float
    argmax: tuple
    location: str               # 'interior' or a face id such as 'zeros=(2,),sum=1'
    critical_points: list       # (point, value, location) triples
    grid_resolution: int
    grid_value: float
    refinement_failures: int = 0


# --------------------------------------------------------------------------
# deterministic samplers
# --------------------------------------------------------------------------


def _simplex_lattice(d: int, m: int) -> np.ndarray:
    pts = []

    def rec(prefix, remaining):
        if len(prefix) == d - 1:
            for e in range(remaining + 1):
                pts.append(prefix + [e])
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    if d == 0:
        return np.zeros((1, 0))
    rec([], m)
    return np.array(pts, dtype=float) / m


def sample_domain(dom: Domain, resolution: int) -> np.ndarray:
    """Deterministic point grids: barycentric lattice on the simplex, filtered
    product lattice on the ball, normalized lattice directions plus axis
    points on the sphere.  Grids are nested: resolution 2m contains m."""
    if resolution < 1:
        raise PolyError(f"resolution must be >= 1, got {resolution}")
    m = resolution
    if dom.kind == SIMPLEX:
        return _simplex_lattice(dom.dimension, m)
    if dom.kind == SIMPLEX_FACE:
        return _simplex_lattice(dom.dimension - 1, m)
    if dom.kind == BALL:
        axes = [np.arange(-m, m + 1) / m] * dom.dimension
        pts = np.array(list(product(*axes)), dtype=float)
        return pts[np.einsum("ij,ij->i", pts, pts) <= 1.0 + 1e-12]
    # sphere: normalized nonzero lattice directions, deduplicated, plus axes
    d = dom.dimension
    axes = [np.arange(-m, m + 1) / m] * d
    pts = np.array(list(product(*axes)), dtype=float)
    pts = pts[np.einsum("ij,ij->i", pts, pts) > 0]
    pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    pts = np.vstack([pts, np.eye(d), -np.eye(d)])
    rounded = np.round(pts / 1e-12) * 1e-12
    _, idx = np.unique(rounded, axis=0, return_index=True)
    return pts[np.sort(idx)]


# --------------------------------------------------------------------------
# face charts
# --------------------------------------------------------------------------


def simplex_faces(d: int):
    """All faces of the standard simplex as (zeros, sum_active) pairs,
    ordered interior first, then by codimension."""
    faces = []
    for num_zero in range(d + 1):
        for zeros in combinations(range(d), num_zero):
            for sum_active in (False, True):
                if d - num_zero - (1 if sum_active else 0) >= 0:
                    faces.append((zeros, sum_active))
    faces.sort(key=lambda f: (len(f[0]) + f[1], f))
    return faces


def face_label(zeros: tuple, sum_active: bool) -> str:
    if not zeros and not sum_active:
        return "interior"
    bits = [f"x{i + 1}=0" for i in zeros]
    if sum_active:
        bits.append("sum=1")
    return ",".join(bits)


def restrict_to_face(p: Poly, zeros: tuple, sum_active: bool) -> Poly:
    """Chart polynomial of p on a simplex face (free variables, then the
    affine elimination of the last free variable when the sum is active)."""
    q = p
    for i in sorted(zeros, reverse=True):
        q = restrict_zero(q, i)
    if sum_active:
        if q.nvars == 0:
            raise PolyError("sum face of a point is empty")
        q = restrict_affine_last(q) if q.nvars >= 2 else Poly.constant(
            0, q.eval((1.0,)) if q.field == FLOAT64 else q.eval((1,)), q.field)
    return q


def embed_from_face(y, zeros: tuple, sum_active: bool, d: int) -> tuple:
    """Map chart coordinates back to ambient simplex coordinates."""
    free = [i for i in range(d) if i not in zeros]
    x = [0.0] * d
    ys = list(y)
    if sum_active:
        ys = ys + [1.0 - sum(ys)]
    for i, v in zip(free, ys):
        x[i] = float(v)
    return tuple(x)


def _chart_dim(zeros: tuple, sum_active: bool, d: int) -> int:
    return d - len(zeros) - (1 if sum_active else 0)


# --------------------------------------------------------------------------
# Newton searches
# --------------------------------------------------------------------------


def _grad_hess(q: Poly):
    grads = q.gradient()
    hess = [[grads[i].partial(j) for j in range(q.nvars)] for i in range(q.nvars)]
    return grads, hess


def _batch_gradient(grads, X: np.ndarray) -> np.ndarray:
    return np.stack([g.eval_grid(X) for g in grads], axis=1)


def _batch_hessian(hess, X: np.ndarray) -> np.ndarray:
    k = len(hess)
    H = np.empty((len(X), k, k))
    for i in range(k):
        for j in range(i, k):
            v = hess[i][j].eval_grid(X)
            H[:, i, j] = v
            H[:, j, i] = v
    return H


def _batched_solve(H: np.ndarray, g: np.ndarray):
    """Solve H x = -g per row; rows with (numerically) singular H are flagged."""
    n, k, _ = H.shape
    bad = ~np.isfinite(H).all(axis=(1, 2))
    dets = np.zeros(len(H))
    ok = ~bad
    if ok.any():
        dets[ok] = np.linalg.det(H[ok])
    scale = np.maximum(np.abs(H).max(axis=(1, 2)), 1e-30) ** k
    bad |= np.abs(dets) <= 1e-14 * scale
    Hs = H.copy()
    Hs[bad] = np.eye(k)
    step = np.linalg.solve(Hs, -g[..., None])[..., 0]
    step[bad] = np.nan
    return step


def _newton_critical_points(q: Poly, starts: np.ndarray, feasible,
                            grad_tol: float, max_iter: int = 60):
    """Multi-start Newton for grad q = 0 inside a chart, run in lockstep over
    all starts; starts with singular Jacobians are discarded.  Returns
    deduplicated chart points."""
    k = q.nvars
    if k == 0:
        return [()]
    grads, hess = _grad_hess(q)
    X = np.array(starts, dtype=float).reshape(-1, k)
    alive = np.ones(len(X), dtype=bool)
    converged = np.zeros(len(X), dtype=bool)
    for _ in range(max_iter):
        idx = np.where(alive & ~converged)[0]
        if idx.size == 0:
            break
        Xa = X[idx]
        G = _batch_gradient(grads, Xa)
        done = np.max(np.abs(G), axis=1) <= grad_tol
        converged[idx[done]] = True
        run = idx[~done]
        if run.size == 0:
            continue
        Xr = X[run]
        step = _batched_solve(_batch_hessian(hess, Xr), G[~done])
        dead = ~np.isfinite(step).all(axis=1)
        alive[run[dead]] = False
        live = run[~dead]
        s = step[~dead]
        limit = 1.0 + np.linalg.norm(X[live], axis=1)
        norms = np.linalg.norm(s, axis=1)
        shrink = norms > limit
        s[shrink] *= (limit[shrink] / norms[shrink])[:, None]
        X[live] = X[live] + s
        tiny = norms <= 1e-15 * (1.0 + np.linalg.norm(X[live], axis=1))
        converged[live[tiny]] = True
    found: list[tuple] = []
    for i in np.where(converged)[0]:
        x = X[i]
        if feasible(x):
            key = tuple(float(v) for v in x)
            if all(max(abs(a - b) for a, b in zip(key, f)) > DEDUP_TOL for f in found):
                found.append(key)
    return found


def _sphere_critical_points(p: Poly, starts: np.ndarray, grad_tol: float,
                            max_iter: int = 80):
    """Lagrange stationarity on the unit sphere: grad p = 2 lambda x, |x| = 1,
    solved by Newton on the bordered system, batched over starts."""
    d = p.nvars
    grads, hess = _grad_hess(p)
    X = np.array(starts, dtype=float).reshape(-1, d)
    nrm = np.linalg.norm(X, axis=1)
    X = X[nrm > 0] / nrm[nrm > 0, None]
    lam = 0.5 * np.einsum("ij,ij->i", _batch_gradient(grads, X), X)
    alive = np.ones(len(X), dtype=bool)
    converged = np.zeros(len(X), dtype=bool)
    for _ in range(max_iter):
        idx = np.where(alive & ~converged)[0]
        if idx.size == 0:
            break
        Xa, la = X[idx], lam[idx]
        G = _batch_gradient(grads, Xa)
        F = np.concatenate([G - 2 * la[:, None] * Xa,
                            (np.einsum("ij,ij->i", Xa, Xa) - 1.0)[:, None]], axis=1)
        done = np.max(np.abs(F), axis=1) <= grad_tol
        converged[idx[done]] = True
        run = idx[~done]
        if run.size == 0:
            continue
        Xr, lr = X[run], lam[run]
        H = _batch_hessian(hess, Xr)
        J = np.zeros((len(run), d + 1, d + 1))
        J[:, :d, :d] = H - 2 * lr[:, None, None] * np.eye(d)
        J[:, :d, d] = -2 * Xr
        J[:, d, :d] = 2 * Xr
        step = _batched_solve(J, F[~done])
        dead = ~np.isfinite(step).all(axis=1)
        alive[run[dead]] = False
        live = run[~dead]
        s = step[~dead]
        X[live] = X[live] + s[:, :d]
        lam[live] = lam[live] + s[:, d]
        n = np.linalg.norm(X[live], axis=1)
        pos = n > 0
        X[live[pos]] = X[live[pos]] / n[pos, None]
        tiny = np.linalg.norm(s, axis=1) <= 1e-15
        converged[live[tiny]] = True
    found: list[tuple] = []
    for i in np.where(converged)[0]:
        key = tuple(float(v) for v in X[i])
        if all(max(abs(a - b) for a, b in zip(key, f)) > DEDUP_TOL for f in found):
            found.append(key)
    return found


def _simplex_starts(rng: np.random.Generator, k: int, count: int) -> np.ndarray:
    """Stratified random interior points of the k-simplex {y >= 0, sum <= 1}."""
    if k == 0:
        return np.zeros((1, 0))
    g = rng.gamma(1.0, 1.0, size=(count, k + 1))
    return g[:, :k] / g.sum(axis=1, keepdims=True)


def _grad_scale(q: Poly) -> float:
    if not q.terms:
        return 1.0
    return max(1.0, max(abs(float(c)) for c in q.terms.values()))


def critical_points(p: Poly, dom: Domain, starts: int | None = None,
                    seed: int = 0, interior_only: bool = False):
    """Multi-start Newton stationary points of p on the domain.

    Interior criticals solve grad p = 0; each face of the simplex is searched
    through its affine chart; the ball boundary and the sphere use Lagrange
    stationarity.  Returns (point, value, location) triples deduplicated at
    1e-8 in coordinates, values attached after a final Newton polish.
    """
    pf = p.to_float64()
    d = dom.nvars
    if pf.nvars != d:
        raise PolyError(f"polynomial has {pf.nvars} variables, domain needs {d}")
    total = starts if starts is not None else 50 * max(1, dom.dimension)
    rng = np.random.default_rng(seed)
    results = []

    if dom.kind in (SIMPLEX, SIMPLEX_FACE):
        faces = simplex_faces(d)
        if interior_only:
            faces = [((), False)]
        for zeros, sum_active in faces:
            k = _chart_dim(zeros, sum_active, d)
            q = restrict_to_face(pf, zeros, sum_active)
            label = face_label(zeros, sum_active)
            if k == 0:
                pt = embed_from_face((), zeros, sum_active, d)
                results.append((pt, pf.eval(pt), label))
                continue
            n_starts = max(8, (total * (k + 1)) // (d + 1))
            st = _simplex_starts(rng, k, n_starts)
            tol = 1e-11 * _grad_scale(q)

            def feasible(y, _k=k):
                return np.all(y > 1e-9) and y.sum() < 1 - 1e-9

            for y in _newton_critical_points(q, st, feasible, tol):
                pt = embed_from_face(y, zeros, sum_active, d)
                results.append((pt, q.eval(np.array(y)), label))
    elif dom.kind == BALL:
        grads, _ = _grad_hess(pf)
        st = rng.uniform(-1, 1, size=(total, d))
        st = st[np.einsum("ij,ij->i", st, st) < 1.0]
        tol = 1e-11 * _grad_scale(pf)
        inside = _newton_critical_points(
            pf, st, lambda x: float(x @ x) < 1 - 1e-9, tol)
        results.extend((tuple(x), pf.eval(np.array(x)), "interior") for x in inside)
        if not interior_only and d >= 2:
            sph = rng.normal(size=(total, d))
            sph = np.vstack([sph, np.eye(d), -np.eye(d)])
            for x in _sphere_critical_points(pf, sph, tol):
                results.append((tuple(x), pf.eval(np.array(x)), "boundary"))
        elif not interior_only and d == 1:
            for e in (-1.0, 1.0):
                results.append(((e,), pf.eval((e,)), "boundary"))
    elif dom.kind == SPHERE:
        sph = rng.normal(size=(total, d))
        sph = np.vstack([sph, np.eye(d), -np.eye(d),
                         np.array(list(product([1.0, -1.0], repeat=d))) / math.sqrt(d)])
        tol = 1e-11 * _grad_scale(pf)
        for x in _sphere_critical_points(pf, sph, tol):
            results.append((tuple(x), pf.eval(np.array(x)), "sphere"))
    else:
        raise PolyError(f"unsupported domain {dom.kind}")

    dedup = []
    for pt, val, loc in results:
        if all(max(abs(a - b) for a, b in zip(pt, q[0])) > DEDUP_TOL for q in dedup):
            dedup.append((pt, val, loc))
    return dedup


# --------------------------------------------------------------------------
# sup norm
# --------------------------------------------------------------------------


def sup_norm(p: Poly, dom: Domain, resolution: int, seed: int = 0,
             starts: int | None = None) -> SupNormReport:
    """Coarse grid maximum of |p| refined by stationary-point search on every
    face; falls back to the grid value if refinement fails everywhere."""
    pf = p.to_float64()
    grid = sample_domain(dom, resolution)
    vals = pf.eval_grid(grid)
    avals = np.abs(vals)
    gi = int(np.argmax(avals))
    grid_value = float(avals[gi])
    best_val = float(vals[gi])
    best_pt = tuple(float(v) for v in grid[gi])
    best_loc = "grid"
    failures = 0
    crits = critical_points(p, dom, starts=starts, seed=seed)
    for pt, val, loc in crits:
        if abs(val) > abs(best_val):
            best_val, best_pt, best_loc = val, pt, loc
    if not crits:
        failures += 1
    if abs(best_val) < grid_value:  # refinement never beats the grid: keep grid point
        best_val = float(vals[gi])
        best_pt = tuple(float(v) for v in grid[gi])
        best_loc = "grid"
    return SupNormReport(value=abs(best_val), argmax=best_pt, location=best_loc,
                         critical_points=crits, grid_resolution=resolution,
                         grid_value=grid_value, refinement_failures=failures)


def signed_max(p: Poly, dom: Domain, resolution: int, seed: int = 0,
               boundary_only: bool = False) -> float:
    """Maximum of p (not |p|) over the domain or over its boundary."""
    pf = p.to_float64()
    grid = sample_domain(dom, resolution)
    if boundary_only and dom.kind == SIMPLEX:
        d = dom.dimension
        keep = np.any(grid <= 1e-12, axis=1) | (grid.sum(axis=1) >= 1 - 1e-12)
        grid = grid[keep]
    best = float(np.max(pf.eval_grid(grid))) if len(grid) else -math.inf
    for pt, val, loc in critical_points(p, dom, seed=seed):
        if boundary_only and loc == "interior":
            continue
        best = max(best, val)
    return best


# --------------------------------------------------------------------------
# the T_d bound verification
# --------------------------------------------------------------------------


def verify_td_bound(d: int, resolution: int = 16, seed: int = 0,
                    tol: float = 1e-6) -> dict:
    """Bound |T_d| on the simplex by boundary reduction: interior critical
    values, exact dispatch of the x_i = 0 faces to -T_{d-1}, and a full
    search on the sum = 1 face; recurses down to d = 3.

    For d <= 5 this reproduces the proved value 1; for d >= 6 the report is
    exploratory (``conjecture_mode``) and never asserts the bound.
    """
    from .constructions import build_td

    report: dict = {"d": d, "conjecture_mode": d >= 6}
    td = build_td(d).polynomial
    tdf = td.to_float64()

    interior = critical_points(tdf, Domain(SIMPLEX, d), seed=seed, interior_only=True)
    report["interior_critical_points"] = interior
    report["interior_max_abs"] = max((abs(v) for _, v, _ in interior), default=0.0)

    identity_ok = True
    from .constructions import build_td as _build
    lower = _build(d - 1).polynomial if d > 3 else None
    if lower is not None:
        for i in range(d):
            if restrict_zero(td, i) != -lower:
                identity_ok = False
    report["zero_face_identity_exact"] = identity_ok

    face_poly = restrict_affine_last(tdf)
    face_rep = sup_norm(face_poly, Domain(SIMPLEX, d - 1), resolution, seed=seed)
    report["sum_face_sup"] = face_rep.value
    report["sum_face_argmax"] = face_rep.argmax

    if d > 3:
        sub = verify_td_bound(d - 1, resolution=resolution, seed=seed, tol=tol)
        sub_max = sub["max_abs_estimate"]
        report["recursive_sub_report"] = {
            "d": d - 1, "max_abs_estimate": sub_max, "passed": sub["passed"]}
    else:
        sub_max = 0.0
    estimate = max(report["interior_max_abs"], face_rep.value, sub_max)
    report["max_abs_estimate"] = estimate
    report["passed"] = bool(estimate <= 1 + tol) and identity_ok
    return report


# --------------------------------------------------------------------------
# level sets
# --------------------------------------------------------------------------


def level_set(f: Poly, p: Poly, r: float, dom: Domain, tol: float = 1e-9,
              resolution: int = 48, seed: int = 0, cluster_tol: float = 1e-8):
    """Points of the domain where | |f - p| - r | <= tol, found by a grid scan
    of every face followed by Gauss-Newton projection onto the level set.

    Tangency points (where the residual touches +-r with vanishing chart
    gradient) get an extra stationary-point polish, since Gauss-Newton alone
    only locates them to square-root precision in coordinates.  For
    simplex_face domains, f and p are given in ambient coordinates and the
    returned points are ambient (last coordinate 1 - sum of the others).
    """
    if not r > 0:
        raise PolyError("level r must be positive")
    g = (f - p).to_float64()
    face_mode = dom.kind == SIMPLEX_FACE
    if face_mode:
        if g.nvars != dom.dimension:
            raise PolyError("simplex_face level set expects ambient polynomials")
        g = restrict_affine_last(g)
        d = dom.dimension - 1
    else:
        d = dom.nvars
        if g.nvars != d:
            raise PolyError(f"residual has {g.nvars} variables, domain needs {d}")
    raw: list[tuple] = []

    def capture(q: Poly, pts: np.ndarray, zeros, sum_active):
        k = q.nvars
        if k == 0:
            if abs(abs(q.eval(())) - r) <= tol / 10:
                raw.append((embed_from_face((), zeros, sum_active, d), True))
            return
        grads = q.gradient()
        vals = q.eval_grid(pts)
        band = np.abs(np.abs(vals) - r)
        cutoff = max(10 * tol, float(np.min(band)) * 4, 0.05 * r)
        for y0 in pts[band <= cutoff]:
            y = np.array(y0, dtype=float)
            sgn = 1.0 if q.eval(y) >= 0 else -1.0
            ok = False
            for _ in range(60):
                h = q.eval(y) - sgn * r
                if abs(h) <= tol / 10:
                    ok = True
                    break
                gv = np.array([gr.eval(y) for gr in grads])
                gg = float(gv @ gv)
                if gg < 1e-30:
                    break
                y = y - h * gv / gg
                if np.any(y < -1e-12) or y.sum() > 1 + 1e-12:
                    y = np.clip(y, 0.0, None)
                    if y.sum() > 1:
                        y = y / y.sum()
            if not ok:
                continue
            # tangency polish: if the chart gradient nearly vanishes, converge
            # to the stationary point of q instead
            polished = False
            refined = _newton_critical_points(
                q, y[None, :], lambda z: np.all(z > -1e-9) and z.sum() <= 1 + 1e-9,
                grad_tol=1e-12 * _grad_scale(q), max_iter=40)
            for z in refined:
                za = np.array(z)
                if (np.linalg.norm(za - y) <= 1e-3
                        and abs(abs(q.eval(za)) - r) <= tol / 10):
                    y = za
                    polished = True
                    break
            raw.append((embed_from_face(tuple(y), zeros, sum_active, d),
                        polished or k == 0))

    if dom.kind in (SIMPLEX, SIMPLEX_FACE):
        for zeros, sum_active in simplex_faces(d):
            k = _chart_dim(zeros, sum_active, d)
            q = restrict_to_face(g, zeros, sum_active)
            pts = _simplex_lattice(k, max(4, resolution // (1 + len(zeros))))
            capture(q, pts, zeros, sum_active)
    else:
        raise PolyError("level_set currently supports simplex-type domains")

    # cluster coarsely (merges Gauss-Newton square-root scatter around
    # tangency points, preferring polished representatives), verify at 10x
    # tighter tolerance, then dedup at cluster_tol
    coarse = max(cluster_tol, 1e-4)
    ordered = sorted(raw, key=lambda item: (not item[1], item[0]))
    merged: list[tuple] = []
    for pt, _polished in ordered:
        if any(max(abs(a - b) for a, b in zip(pt, c)) <= coarse for c in merged):
            continue
        if abs(abs(g.eval(pt)) - r) <= tol / 10:
            merged.append(pt)
    out: list[tuple] = []
    for pt in sorted(merged):
        if all(max(abs(a - b) for a, b in zip(pt, c)) > cluster_tol for c in out):
            out.append(pt)
    if face_mode:
        out = [tuple(list(pt) + [1.0 - sum(pt)]) for pt in out]
    return out


# --------------------------------------------------------------------------
# the bordered Vandermonde determinant
# --------------------------------------------------------------------------


def dd_determinant(d: int) -> Poly:
    """Exact cofactor expansion (along the gradient row) of the
    (d-1) x (d-1) matrix with rows x_i^k (k = 0..d-3, i = 1..d-1) and last
    row the partials of T_d with respect to x_1..x_{d-1}."""
    from .constructions import build_td
    if d < 3:
        raise PolyError(f"the determinant is defined for d >= 3, got {d}")
    td = build_td(d).polynomial
    n = d - 1
    partials = [td.partial(i) for i in range(n)]
    total = Poly.zero(d)
    for i in range(n):
        # Vandermonde minor on the remaining columns, nodes ordered ascending
        nodes = [j for j in range(n) if j != i]
        minor = Poly.constant(d, 1)
        for a in range(len(nodes)):
            for b in range(a + 1, len(nodes)):
                minor = minor * (Poly.variable(d, nodes[b]) - Poly.variable(d, nodes[a]))
        sign = (-1) ** ((n - 1) + i)
        total = total + sign * partials[i] * minor
    return total


def d5_factorized_form() -> Poly:
    """-64 * prod_{1<=i<j<=4} (x_i - x_j) * (-14 + 225 x_5), expanded exactly."""
    poly = Poly.constant(5, -64)
    for i in range(4):
        for j in range(i + 1, 4):
            poly = poly * (Poly.variable(5, i) - Poly.variable(5, j))
    return poly * (225 * Poly.variable(5, 4) - 14)


def _divide_linear(p: Poly, i: int, j: int):
    """Exact division of p by (x_i - x_j): returns (quotient, remainder),
    with the remainder equal to p restricted to x_i = x_j."""
    by_deg: dict[int, dict] = {}
    for exp, coef in p.terms.items():
        e = exp[i]
        key = exp[:i] + (0,) + exp[i + 1:]
        by_deg.setdefault(e, {})[key] = coef
    if not by_deg:
        return Poly.zero(p.nvars, p.field), Poly.zero(p.nvars, p.field)
    top = max(by_deg)
    xj = Poly.variable(p.nvars, j, p.field)
    xi = Poly.variable(p.nvars, i, p.field)
    coeffs = {e: Poly(p.nvars, t, p.field) for e, t in by_deg.items()}
    zero = Poly.zero(p.nvars, p.field)
    quotient = Poly.zero(p.nvars, p.field)
    carry = zero
    for e in range(top, 0, -1):
        b = coeffs.get(e, zero) + carry
        quotient = quotient + b * xi ** (e - 1)
        carry = b * xj
    remainder = coeffs.get(0, zero) + carry
    return quotient, remainder


def vandermonde_factor_report(d: int) -> dict:
    """Attempt exact division of D_d by the full Vandermonde product over
    x_1..x_{d-1}; reports divisibility and the quotient when it divides."""
    det = dd_determinant(d)
    quotient = det
    divides = True
    for i in range(d - 1):
        for j in range(i + 1, d - 1):
            quotient, rem = _divide_linear(quotient, j, i)  # divide by (x_j - x_i)
            if not rem.is_zero():
                divides = False
                break
        if not divides:
            break
    return {"d": d, "vandermonde_divides": divides,
            "quotient": quotient if divides else None, "determinant": det}
