"""Cauchy transform, F-transform and the Nevanlinna functional on the closed upper half-plane.

For ``z = x + iy`` write ``G(z) = R - i*y*K`` with

    R = int (x - s) / ((x - s)^2 + y^2) dmu(s),
    K = int 1 / ((x - s)^2 + y^2) dmu(s).

On a linear piece ``p(s) = p(x) + c (s - x)`` on ``[a, b]`` both integrals
have closed forms (the real and imaginary parts of the complex-log
antiderivative):

    int p / ((x-s)^2 + y^2)        = p(x) theta / y + c L / 2
    int p (x-s) / ((x-s)^2 + y^2)  = -p(x) L / 2 - c (b - a) + c y theta

where ``theta = atan2(y (b-a), y^2 + (b-x)(a-x))`` is the angle the piece
subtends from ``z`` and ``L = log(((b-x)^2 + y^2) / ((a-x)^2 + y^2))``.
Using ``atan2`` and ``log1p`` keeps ``K`` accurate for ``y`` down to 1e-12,
which the semigroup geometry needs; no principal-branch bookkeeping is
required because only angles inside ``[0, pi]`` occur.

The Nevanlinna measure ``rho`` of ``F = 1/G`` is never built. Everything
defined through it goes through

    h(x, y) = Im F(x + iy) / y - 1 = K / |G|^2 - 1
            = int (1 + s^2) / ((x - s)^2 + y^2) drho(s).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .errors import PoleOnAxis, ValidationError, ZeroCauchy
from .measure import MeasureSpec

Y_FLOOR = 1e-9
DIVERGENCE_CAP = 1e12


@njit(cache=True, error_model="numpy")
def _cell_sums(x, y, a, b, pa, c):  # pragma: no cover - compiled
    n = x.size
    re = np.zeros(n)
    yk = np.zeros(n)
    k = np.zeros(n)
    for i in range(n):
        xi = x[i]
        yi = y[i]
        y2 = yi * yi
        sr = 0.0
        sy = 0.0
        sk = 0.0
        for j in range(a.size):
            w = b[j] - a[j]
            da = a[j] - xi
            db = b[j] - xi
            cj = c[j]
            px = pa[j] - cj * da
            theta = math.atan2(yi * w, y2 + da * db)
            qa = da * da + y2
            qb = db * db + y2
            r = w * (da + db) / qa
            # L = log(qb / qa); log1p is exact near the cell, but when x sits on
            # an end qb or qa is ~y^2, which 1 + r cannot carry
            L = math.log1p(r) if abs(r) < 0.5 else math.log(qb) - math.log(qa)
            # p(x) L vanishes at an endpoint where the density is zero, y = 0
            pl = 0.0 if px == 0.0 else px * L
            sr += -0.5 * pl - cj * w + cj * yi * theta
            if yi > 0.0:
                sy += px * theta + 0.5 * cj * L * yi
                sk += px * theta / yi + 0.5 * cj * L
            else:
                sy += px * theta
        re[i] = sr
        yk[i] = sy
        k[i] = sk if yi > 0.0 else np.nan
    return re, yk, k


def cauchy_parts(spec: MeasureSpec, x, y, need_k: bool = True):
    """Return ``(R, yK, K)`` with ``G(x + iy) = R - i yK``.

    ``K`` is only meaningful for ``y > 0`` (``nan`` at ``y = 0``, ``None`` if
    ``need_k`` is false).
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    a, b, pa, pb = spec.cells
    re, yk, k = _cell_sums(np.ascontiguousarray(x).ravel(), np.ascontiguousarray(y).ravel(),
                           a, b, pa, (pb - pa) / (b - a))
    re, yk, k = re.reshape(shape), yk.reshape(shape), k.reshape(shape)
    pos, mass = spec.atom_positions, spec.atom_masses
    if len(pos):
        d = x[..., None] - pos
        q = d * d + y[..., None] ** 2
        if np.any(q == 0):
            raise PoleOnAxis("cauchy transform evaluated at an atom on the real axis")
        re = re + np.sum(mass * d / q, axis=-1)
        atom_k = np.sum(mass / q, axis=-1)
        yk = yk + y * atom_k
        k = k + atom_k
    return re, yk, (k if need_k else None)


def cauchy(spec: MeasureSpec, z):
    """``G(z) = int dmu(s) / (z - s)`` for ``Im z >= 0`` (array-friendly).

    At ``Im z = 0`` the boundary value ``lim_{y->0+}`` is returned; atoms on
    the axis raise :class:`PoleOnAxis`.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < 0):
        raise ValidationError("cauchy is defined on the closed upper half-plane only")
    re, yk, _ = cauchy_parts(spec, z.real, z.imag, need_k=False)
    out = re - 1j * yk
    return out if out.ndim else complex(out)


def f_transform(spec: MeasureSpec, z):
    """``F(z) = 1 / G(z)``."""
    g = np.asarray(cauchy(spec, z))
    if np.any(g == 0):
        raise ZeroCauchy("cauchy transform vanishes; F is infinite")
    out = 1.0 / g
    return out if out.ndim else complex(out)


def cauchy_derivative(spec: MeasureSpec, z):
    """``G'(z) = -int dmu(s) / (z - s)^2`` for ``Im z > 0``."""
    z = np.asarray(z, dtype=complex)
    a, b, pa, pb = spec.cells
    zz = z[..., None]
    c = (pb - pa) / (b - a)
    pz = pa + c * (zz - a)
    # int p/(z-s)^2 = p(z) [1/(z-b) - 1/(z-a)] - c [log(z-a) - log(z-b)]
    val = np.sum(pz * (1.0 / (zz - b) - 1.0 / (zz - a)) - c * (np.log(zz - a) - np.log(zz - b)), axis=-1)
    pos, mass = spec.atom_positions, spec.atom_masses
    if len(pos):
        val = val + np.sum(mass / (zz - pos) ** 2, axis=-1)
    out = -val
    return out if out.ndim else complex(out)


def nevanlinna_h(spec: MeasureSpec, x, y):
    """``h(x, y) = Im F(x + iy) / y - 1``, nonnegative and strictly decreasing in ``y > 0``."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ValidationError("nevanlinna_h needs y > 0")
    re, yk, k = cauchy_parts(spec, x, y)
    with np.errstate(over="ignore"):
        out = k / (re * re + yk * yk) - 1.0
    return out if np.ndim(out) else float(out)


def g_value(spec: MeasureSpec, x, y_floor: float = Y_FLOOR, cap: float = DIVERGENCE_CAP):
    """Estimate ``g(x) = lim_{y->0} h(x, y)``; ``inf`` marks divergence.

    ``h`` grows like ``1/y^2`` at atoms of ``rho`` (caught by ``cap``) and like
    ``1/y`` where ``rho`` has a density, which a finite cap cannot see at any
    practical ``y_floor``; the latter is caught by comparing ``h`` at
    ``y_floor`` and ``2 y_floor`` (ratio 2 for ``1/y`` growth, ``1 + O(y^2)``
    for a finite limit).
    """
    x = np.asarray(x, dtype=float)
    h1 = np.asarray(nevanlinna_h(spec, x, np.full_like(x, y_floor)))
    h2 = np.asarray(nevanlinna_h(spec, x, np.full_like(x, 2 * y_floor)))
    with np.errstate(divide="ignore", invalid="ignore"):
        diverging = (h1 > cap) | ((h1 > 1.0) & (h1 > 1.5 * h2))
    out = np.where(diverging, np.inf, h1)
    return out if out.ndim else float(out)
