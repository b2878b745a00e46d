"""The measure ``mu_t``: atoms, absolutely continuous support and density.

Each component ``C`` of ``V_t`` is pushed to the real line by
``psi_t(x) = H_t(x + i f_t(x))`` with ``H_t(z) = t z - (t-1) F(z)``; the ac
part of ``mu_t`` lives on the closure of the union of the images. Because
``F_{mu_t}(H_t(w)) = F(w)``, the density at ``psi_t(x)`` is
``-Im G(x + i f_t(x)) / pi``, evaluated without inverting ``H_t``.

Quadrature over a profile is done in the Chebyshev angle ``x = c - r cos(th)``:
the mass element ``p(psi) psi'(x) r sin(th) dth`` stays bounded even where
the density of ``mu_t`` has an integrable blow-up at a component end, and
Simpson's rule is applied on the uniform ``th`` grid. Along the curve,
``psi'(x) = |H_t'|^2 / Re H_t'`` because ``H_t'(w) (1 + i f_t'(x))`` is real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PsiNotReal, ZeroF
from .geometry import DEFAULT_GRID_N, DEFAULT_SAMPLES_N, chebyshev_panels, check_time, f_t, v_plus
from .intervals import IntervalUnion
from .measure import MeasureSpec
from .transforms import Y_FLOOR, cauchy, cauchy_derivative

PSI_IMAG_TOL = 1e-6
ZERO_F_TOL = 1e-7
VANISH_TOL = 1e-12
CONTAIN_TOL = 1e-3
BREAK_MARGIN = 1e-6


@dataclass(frozen=True)
class AtomRecord:
    position: float
    mass: float


def h_t_map(spec: MeasureSpec, t: float, z):
    """``H_t(z) = t z - (t-1) F(z)``."""
    t = check_time(t)
    z = np.asarray(z, dtype=complex)
    g = np.asarray(cauchy(spec, z))
    out = t * z - (t - 1.0) / g
    return out if out.ndim else complex(out)


def h_t_derivative(spec: MeasureSpec, t: float, z):
    """``H_t'(z) = t - (t-1) F'(z)`` with ``F' = -G'/G^2``."""
    z = np.asarray(z, dtype=complex)
    g = np.asarray(cauchy(spec, z))
    dg = np.asarray(cauchy_derivative(spec, z))
    out = t + (t - 1.0) * dg / (g * g)
    return out if out.ndim else complex(out)


def psi_t(spec: MeasureSpec, t: float, x, f=None, tol: float = PSI_IMAG_TOL):
    """``psi_t(x) = Re H_t(x + i f_t(x))`` for ``x`` in ``V_t``.

    Raises :class:`PsiNotReal` if the imaginary part exceeds ``tol``, which
    means the height ``f`` does not solve the boundary equation.
    """
    x = np.asarray(x, dtype=float)
    if f is None:
        f = f_t(spec, t, x)
    f = np.maximum(np.asarray(f, dtype=float), Y_FLOOR)
    H = np.asarray(h_t_map(spec, t, x + 1j * f))
    resid = np.abs(H.imag)
    if np.any(resid > tol):
        raise PsiNotReal(f"Im H_t residue {resid.max():.3g} exceeds {tol:g}")
    out = H.real
    return out if out.ndim else float(out)


def density_at(spec: MeasureSpec, t: float, x, f=None):
    """Density of ``mu_t`` at ``psi_t(x)``: ``-Im G(x + i f_t(x)) / pi``.

    Raises :class:`ZeroF` where ``F`` vanishes, i.e. at a singular point of
    the density of ``mu_t``.
    """
    x = np.asarray(x, dtype=float)
    if f is None:
        f = f_t(spec, t, x)
    w = x + 1j * np.maximum(np.asarray(f, dtype=float), Y_FLOOR)
    g = np.asarray(cauchy(spec, w))
    if np.any(np.abs(g) * ZERO_F_TOL > 1.0):
        raise ZeroF("F vanishes; the density of mu_t is singular here")
    out = np.maximum(-g.imag / np.pi, 0.0)
    return out if out.ndim else float(out)


def atoms_at(spec: MeasureSpec, t: float):
    """Atoms ``t a`` of mass ``t mu({a}) - (t-1)`` for every atom with ``mu({a}) > (t-1)/t``."""
    t = check_time(t)
    out = []
    for a, m in spec.atoms:
        mass = t * m - (t - 1.0)
        if mass > VANISH_TOL:
            out.append(AtomRecord(float(t * a), float(mass)))
    return out


def vanishing_atoms(spec: MeasureSpec, t: float, tol: float = VANISH_TOL):
    """Positions ``t a`` of atoms whose mass is exactly used up at time ``t``."""
    t = check_time(t)
    return [float(t * a) for a, m in spec.atoms if abs(t * m - (t - 1.0)) <= tol]


def vanishing_times(spec: MeasureSpec):
    """Times ``1 / (1 - m)`` at which the atoms of ``spec`` disappear."""
    return sorted({float(1.0 / (1.0 - m)) for m in spec.atom_masses if m < 1.0})


@dataclass(frozen=True, eq=False)
class ComponentProfile:
    """Samples of ``mu_t`` over the image of one component of ``V_t``."""

    component: tuple
    x: np.ndarray
    f: np.ndarray
    u: np.ndarray          # psi_t(x)
    p: np.ndarray          # density at u; inf marks a singular point
    weights: np.ndarray    # int phi(u) p(u) du ~ sum(weights * phi(u))
    monotone: bool


@dataclass(frozen=True, eq=False)
class DensityProfile:
    components: tuple = ()

    @property
    def u(self) -> np.ndarray:
        return np.concatenate([c.u for c in self.components]) if self.components else np.zeros(0)

    @property
    def p(self) -> np.ndarray:
        return np.concatenate([c.p for c in self.components]) if self.components else np.zeros(0)

    def integrate(self, fun=None) -> float:
        """``int fun(u) p(u) du`` over the ac part (``fun = 1`` gives its mass)."""
        total = 0.0
        for c in self.components:
            vals = np.ones_like(c.u) if fun is None else fun(c.u)
            total += float(np.sum(c.weights * vals))
        return total

    def pairs(self):
        return [(float(u), float(p)) for c in self.components for u, p in zip(c.u, c.p)]


def _richardson_edge(spec, t, x_e, y0):
    """``Re H_t(x_e + i0)`` from ``y0`` and ``2 y0``; the error is even in ``y``."""
    h1 = h_t_map(spec, t, x_e + 1j * y0).real
    h2 = h_t_map(spec, t, x_e + 2j * y0).real
    return (4.0 * h1 - h2) / 3.0


def component_profile(spec: MeasureSpec, t: float, component, samples_n: int = DEFAULT_SAMPLES_N,
                      y_floor: float = Y_FLOOR) -> ComponentProfile:
    t = check_time(t)
    lo, hi = map(float, component)
    # atoms within edge-location error of an end are ends, not breaks
    margin = BREAK_MARGIN * (hi - lo)
    breaks = [a for a in spec.atom_positions if lo + margin < a < hi - margin]
    x, jac, simpson = chebyshev_panels(lo, hi, breaks, samples_n)
    n = len(x)
    f = np.zeros(n)
    f[1:-1] = f_t(spec, t, x[1:-1], y_floor)

    # Nodes at or next to a surviving atom a of mu (mass m) where f_t is below
    # y_floor. G has a pole at a, so the density there is taken from the limit
    # along the curve: p = p_mu(x) t m / (t m - (t - 1)); at a itself u = t a.
    on_axis = np.zeros(n, dtype=bool)
    on_axis[1:-1] = f[1:-1] == 0.0
    on_atom = on_axis & np.isin(x, breaks)
    live = np.zeros(n, dtype=bool)
    live[1:-1] = ~on_atom[1:-1]
    boost = np.ones(n)
    if on_axis.any():
        pos, mass = spec.atom_positions, spec.atom_masses
        nearest = np.abs(x[on_axis, None] - pos[None, :]).argmin(axis=1)
        m = mass[nearest]
        left = t * m - (t - 1.0)
        with np.errstate(divide="ignore"):
            boost[on_axis] = np.where(left > 0, t * m / left, np.inf)

    w_in = x[live] + 1j * f[live]
    H = np.asarray(h_t_map(spec, t, w_in))
    resid = np.abs(H.imag)
    if np.any(resid > PSI_IMAG_TOL):
        raise PsiNotReal(f"Im H_t residue {resid.max():.3g} exceeds {PSI_IMAG_TOL:g} "
                         f"on component [{lo:.6g}, {hi:.6g}] at t={t}")
    g = np.asarray(cauchy(spec, w_in))
    dH = np.asarray(h_t_derivative(spec, t, w_in))

    u = np.empty(n)
    p = np.empty(n)
    u[live] = H.real
    p[live] = np.maximum(-g.imag / np.pi, 0.0)
    u[on_atom] = t * x[on_atom]
    with np.errstate(invalid="ignore"):
        p[on_axis] = np.where(spec.density(x[on_axis]) > 0, spec.density(x[on_axis]) * boost[on_axis], 0.0)
    for idx, xe in ((0, lo), (-1, hi)):
        u[idx] = _richardson_edge(spec, t, xe, y_floor)
        ge = complex(cauchy(spec, xe + 1j * y_floor))
        p[idx] = np.inf if abs(ge) * ZERO_F_TOL > 1.0 else max(-ge.imag / np.pi, 0.0)

    phi = np.zeros(n)
    phi[live] = p[live] * (np.abs(dH) ** 2 / dH.real) * jac[live]
    # At a regular end p -> 0 and the integrand vanishes. At a singular end
    # p sin(th) stays finite: extrapolate with a fit even in th (nodes th^2 = 1, 4, 9).
    if not np.isfinite(p[0]):
        phi[0] = 1.5 * phi[1] - 0.6 * phi[2] + 0.1 * phi[3]
    if not np.isfinite(p[-1]):
        phi[-1] = 1.5 * phi[-2] - 0.6 * phi[-3] + 0.1 * phi[-4]
    weights = simpson * phi
    monotone = bool(np.all(np.diff(u) > 0))
    return ComponentProfile((lo, hi), x, f, u, p, weights, monotone)


@dataclass(frozen=True, eq=False)
class SupportSnapshot:
    """Everything computed about ``mu_t`` at one time ``t``."""

    t: float
    ac_support: IntervalUnion
    atoms: tuple
    density: DensityProfile
    v_plus: IntervalUnion = IntervalUnion()
    flags: tuple = ()
    vanishing: tuple = field(default=())

    def support(self) -> IntervalUnion:
        """ac support together with the atom positions."""
        return self.ac_support.union((a.position, a.position) for a in self.atoms)

    def atom_mass(self) -> float:
        return float(sum(a.mass for a in self.atoms))

    def mass(self) -> float:
        return self.density.integrate() + self.atom_mass()

    def moment(self, k: int) -> float:
        return self.density.integrate(lambda u: u**k) + float(sum(a.mass * a.position**k for a in self.atoms))

    def mean_variance(self) -> tuple[float, float]:
        m1 = self.moment(1)
        return m1, self.moment(2) - m1 * m1

    def to_dict(self) -> dict:
        density = [[u, (p if np.isfinite(p) else None)] for u, p in self.density.pairs()]
        return {
            "t": self.t,
            "ac": self.ac_support.to_list(),
            "atoms": [{"x": a.position, "m": a.mass} for a in self.atoms],
            "density": density,
            "v_plus": self.v_plus.to_list(),
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SupportSnapshot":
        """Rebuild the support part of a snapshot (the density profile is not restored)."""
        return cls(
            t=float(d["t"]),
            ac_support=IntervalUnion([tuple(iv) for iv in d.get("ac", [])]),
            atoms=tuple(AtomRecord(float(a["x"]), float(a["m"])) for a in d.get("atoms", [])),
            density=DensityProfile(),
            v_plus=IntervalUnion([tuple(iv) for iv in d.get("v_plus", [])]),
            flags=tuple(d.get("flags", [])),
        )


def ac_support(spec: MeasureSpec, t: float, grid_n: int = DEFAULT_GRID_N,
               samples_n: int = DEFAULT_SAMPLES_N, y_floor: float = Y_FLOOR) -> IntervalUnion:
    """Closure of ``psi_t(V_t)``: per component, ``[min, max]`` of the sampled image."""
    return snapshot(spec, t, grid_n, samples_n, y_floor, check_refinement=False).ac_support


def snapshot(spec: MeasureSpec, t: float, grid_n: int = DEFAULT_GRID_N,
             samples_n: int = DEFAULT_SAMPLES_N, y_floor: float = Y_FLOOR,
             check_refinement: bool = True) -> SupportSnapshot:
    t = check_time(t)
    V = v_plus(spec, t, grid_n, y_floor)
    profiles, pieces, flags = [], [], []
    for comp in V:
        if comp[1] <= comp[0]:
            continue
        prof = component_profile(spec, t, comp, samples_n, y_floor)
        profiles.append(prof)
        pieces.append((float(prof.u.min()), float(prof.u.max())))
        if not prof.monotone:
            flags.append(f"psi_not_monotone:{comp[0]:.9g}:{comp[1]:.9g}")
        for u, p in zip(prof.u, prof.p):
            if not np.isfinite(p):
                flags.append(f"singular_density:{u:.9g}")
    ac = IntervalUnion(pieces)
    atoms = tuple(atoms_at(spec, t))
    vanishing = tuple(vanishing_atoms(spec, t))
    for pos in vanishing:
        inside = bool(ac) and float(ac.distance_to(pos)) <= CONTAIN_TOL
        flags.append(f"vanishing_atom:{pos:.9g}:{'in_ac' if inside else 'outside_ac'}")
    if check_refinement and len(v_plus(spec, t, 2 * grid_n, y_floor)) != len(V):
        flags.append("component_count_unstable")
    return SupportSnapshot(t, ac, atoms, DensityProfile(tuple(profiles)), V, tuple(flags), vanishing)
