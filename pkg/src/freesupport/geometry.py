"""The level set ``V_t = {g > 1/(t-1)}`` and the height function ``f_t`` over it."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.spatial.distance import directed_hausdorff

from .errors import InvalidTime, ValidationError
from .intervals import IntervalUnion
from .measure import MeasureSpec, hull
from .transforms import Y_FLOOR, cauchy_parts, nevanlinna_h

F_TOL = 1e-12
EDGE_TOL = 1e-9
DEFAULT_GRID_N = 2048
DEFAULT_SAMPLES_N = 257


def check_time(t) -> float:
    t = float(t)
    if not np.isfinite(t) or t <= 1.0:
        raise InvalidTime(f"t must be a finite number > 1, got {t}")
    return t


def threshold(t: float) -> float:
    """Level ``1/(t-1)`` against which ``g`` and ``h`` are compared."""
    return 1.0 / (check_time(t) - 1.0)


def scan_window(spec: MeasureSpec) -> tuple[float, float]:
    """Window ``[lo - margin, hi + margin]`` with ``margin = 1 + diameter``; contains every ``V_t``."""
    lo, hi = hull(spec)
    margin = 1.0 + (hi - lo)
    return lo - margin, hi + margin


def f_t(spec: MeasureSpec, t: float, x, y_floor: float = Y_FLOOR, tol: float = F_TOL):
    """Height ``f_t(x) = inf{y : h(x, y) <= 1/(t-1)}``; zero off ``V_t``.

    ``h(x, .)`` is strictly decreasing, so the root is bracketed between
    ``y_floor`` and an upper bound (``diameter + 2``, doubled until ``h``
    drops below the level) and located by Brent's method to bracket width
    ``tol``. Vectorized over ``x``.
    """
    tau = threshold(t)
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x).ravel()
    out = np.zeros_like(flat)
    live = np.asarray(nevanlinna_h(spec, flat, np.full_like(flat, y_floor))) > tau
    if live.any():
        xs = flat[live]
        lo_h, hi_h = hull(spec)
        hi = np.full_like(xs, hi_h - lo_h + 2.0)
        while True:
            above = np.asarray(nevanlinna_h(spec, xs, hi)) >= tau
            if not above.any():
                break
            hi = np.where(above, 2.0 * hi, hi)
        roots = np.empty_like(xs)
        for i, (xi, yi) in enumerate(zip(xs, hi)):
            roots[i] = brentq(lambda y: nevanlinna_h(spec, xi, y) - tau, y_floor, yi,
                              xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)
        out[live] = roots
    out = out.reshape(np.shape(x))
    return out if out.ndim else float(out)


def _indicator(spec, xs, tau, y_floor):
    return np.asarray(nevanlinna_h(spec, xs, np.full_like(xs, y_floor))) > tau


def _bisect_sign(fun, lo, hi, tol, iters=200):
    """Vectorized bisection on ``[lo, hi]`` where ``fun(lo)`` is truthy and ``fun(hi)`` falsy."""
    lo, hi = lo.copy(), hi.copy()
    for _ in range(iters):
        if np.max(np.abs(hi - lo)) <= tol:
            break
        mid = 0.5 * (lo + hi)
        v = fun(mid)
        lo = np.where(v, mid, lo)
        hi = np.where(v, hi, mid)
    return lo, hi


def _rho_atom_seeds(spec, xs, re, ind, y_floor):
    """Zeros of Re G in gaps of the grid indicator (atoms of rho, where g is infinite).

    Re G decreases across a gap of supp(mu); it crosses zero downward at an
    atom of rho and jumps upward at an atom of mu, so only ``+ -> -`` sign
    changes between two outside grid points are kept.
    """
    cand = np.nonzero((re[:-1] > 0) & (re[1:] < 0) & ~ind[:-1] & ~ind[1:])[0]
    if not len(cand):
        return np.zeros(0)

    def positive(m):
        r, _, _ = cauchy_parts(spec, m, np.full_like(m, y_floor), need_k=False)
        return r > 0

    lo, hi = _bisect_sign(positive, xs[cand], xs[cand + 1], 1e-13)
    return 0.5 * (lo + hi)


def v_plus(spec: MeasureSpec, t: float, grid_n: int = DEFAULT_GRID_N, y_floor: float = Y_FLOOR,
           edge_tol: float = EDGE_TOL) -> IntervalUnion:
    """Closures of the components of ``V_t`` as an :class:`IntervalUnion`.

    Membership is the strict test ``h(x, y_floor) > 1/(t-1)``. The window
    from :func:`scan_window` is scanned on ``grid_n`` points; zeros of Re G
    in gaps (inside points) and atom positions of ``mu`` (either side) are
    added, and every inside/outside transition is bisected to ``edge_tol``.
    Components or gaps narrower than the grid spacing that contain none of
    these extra points are not resolved.
    """
    tau = threshold(t)
    if grid_n < 64:
        raise ValidationError("grid_n must be at least 64")
    lo, hi = scan_window(spec)
    xs = np.linspace(lo, hi, int(grid_n))
    re, yk, k = cauchy_parts(spec, xs, np.full_like(xs, y_floor))
    with np.errstate(over="ignore"):
        ind = k / (re * re + yk * yk) - 1.0 > tau

    seeds = _rho_atom_seeds(spec, xs, re, ind, y_floor)
    if len(seeds):
        seed_ind = _indicator(spec, seeds, tau, y_floor)
        xs = np.concatenate([xs, seeds[seed_ind]])
        ind = np.concatenate([ind, np.ones(int(seed_ind.sum()), dtype=bool)])
    # g equals 1/m - 1 at an atom of mass m, so a surviving atom opens a gap
    # in V_t around itself that can be far narrower than the grid spacing
    probes = spec.atom_positions[(spec.atom_positions > lo) & (spec.atom_positions < hi)]
    if len(probes):
        xs = np.concatenate([xs, probes])
        ind = np.concatenate([ind, _indicator(spec, probes, tau, y_floor)])
    if len(seeds) or len(probes):
        order = np.argsort(xs, kind="stable")
        xs, ind = xs[order], ind[order]

    if not ind.any():
        return IntervalUnion()
    if ind[0] or ind[-1]:
        raise RuntimeError("V_t reaches the scan window; the window should contain it")
    trans = np.nonzero(ind[:-1] != ind[1:])[0]
    a, b = xs[trans], xs[trans + 1]
    inside_left = ind[trans]
    # orient each bracket as (inside point, outside point)
    ins = np.where(inside_left, a, b)
    out = np.where(inside_left, b, a)
    ins, out = _bisect_sign(lambda m: _indicator(spec, m, tau, y_floor), ins, out, edge_tol)
    edges = np.sort(0.5 * (ins + out))
    comps = [list(c) for c in zip(edges[0::2], edges[1::2])]
    # An atom with density on both sides is the only point of its gap that
    # truly lies outside V_t (g is infinite wherever mu has density); the
    # width comes from evaluating at y_floor, so close the gap.
    merged = [comps[0]]
    for c in comps[1:]:
        gap_lo, gap_hi = merged[-1][1], c[0]
        if any(gap_lo < a < gap_hi for a in probes) and spec.density(gap_lo) > 0 and spec.density(gap_hi) > 0:
            merged[-1][1] = c[1]
        else:
            merged.append(c)
    return IntervalUnion([tuple(c) for c in merged])


def component_count_stable(spec: MeasureSpec, t: float, grid_n: int = DEFAULT_GRID_N,
                           y_floor: float = Y_FLOOR) -> bool:
    """True if doubling the scan grid resolves the same number of components."""
    return len(v_plus(spec, t, grid_n, y_floor)) == len(v_plus(spec, t, 2 * grid_n, y_floor))


@dataclass(frozen=True, eq=False)
class BoundaryGraph:
    """Samples ``(x, f_t(x))`` over one component of ``V_t``, ``x`` increasing."""

    component: tuple
    x: np.ndarray
    f: np.ndarray

    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.f])


def chebyshev_nodes(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` Chebyshev extreme points on ``[lo, hi]``, increasing, endpoints exact."""
    x = 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(np.linspace(0.0, np.pi, n))
    x[0], x[-1] = lo, hi
    return x


def chebyshev_panels(lo: float, hi: float, breaks=(), n: int = DEFAULT_SAMPLES_N):
    """Nodes on ``[lo, hi]`` clustered at the ends and at every point of ``breaks``.

    Each panel between consecutive breakpoints carries ``n`` (odd) Chebyshev
    extreme points ``x = c - r cos(th)``. Returns ``(x, jac, simpson)`` with
    ``jac = r sin(th)`` and ``simpson`` the Simpson weights on the uniform
    ``th`` grid, so ``int phi dx ~ sum(simpson * jac * phi(x))``. Shared panel
    ends appear once; their ``jac`` is zero on both sides.
    """
    n = int(n) | 1
    edges = [lo, *sorted(b for b in breaks if lo < b < hi), hi]
    theta = np.linspace(0.0, np.pi, n)
    h = theta[1] - theta[0]
    simpson = np.ones(n)
    simpson[1:-1:2], simpson[2:-1:2] = 4.0, 2.0
    simpson *= h / 3.0
    xs, jacs, ws = [], [], []
    for k, (a, b) in enumerate(zip(edges, edges[1:])):
        x = chebyshev_nodes(a, b, n)
        jac = 0.5 * (b - a) * np.sin(theta)
        jac[0] = jac[-1] = 0.0
        s = slice(1 if k else 0, None)
        xs.append(x[s])
        jacs.append(jac[s])
        ws.append(simpson[s])
    return np.concatenate(xs), np.concatenate(jacs), np.concatenate(ws)


def boundary_graph(spec: MeasureSpec, t: float, component, samples_n: int = DEFAULT_SAMPLES_N,
                   y_floor: float = Y_FLOOR, breaks=()) -> BoundaryGraph:
    """Sample ``f_t`` over ``component``; endpoints carry ``f = 0``.

    Nodes come from :func:`chebyshev_panels`; interior ``breaks`` get extra
    resolution (used at atoms of ``mu`` that have dissolved into ``V_t``).
    """
    lo, hi = map(float, component)
    if hi <= lo:
        return BoundaryGraph((lo, hi), np.array([lo]), np.array([0.0]))
    x, _, _ = chebyshev_panels(lo, hi, breaks, samples_n)
    f = np.zeros_like(x)
    f[1:-1] = f_t(spec, t, x[1:-1], y_floor)
    return BoundaryGraph((lo, hi), x, f)


def graph_hausdorff(graphs_a, graphs_b) -> float:
    """Hausdorff distance between two sampled graph families (point clouds in the plane)."""
    pa = np.vstack([g.points() for g in graphs_a])
    pb = np.vstack([g.points() for g in graphs_b])
    return max(directed_hausdorff(pa, pb)[0], directed_hausdorff(pb, pa)[0])
