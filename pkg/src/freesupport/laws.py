"""Named reference laws with closed-form semigroups.

The oracle functions here use only textbook formulas (free cumulants scale
linearly in ``t``) and share no code with :mod:`freesupport.transforms`.

=================  ======================================  ==========================
law                mu                                      mu_t
=================  ======================================  ==========================
semicircle:v       semicircle, variance v                  semicircle, variance v t
free_poisson:lam   free Poisson (Marchenko-Pastur), rate   free Poisson, rate lam t
bernoulli          (delta_{-1} + delta_{1}) / 2            atoms +-t of mass 1 - t/2,
                                                           ac part on |u| <= 2 sqrt(t-1)
arcsine:r          density 1 / (pi sqrt(r^2 - x^2))        (t = 1 only)
=================  ======================================  ==========================

For the Bernoulli law ``R(w) = (sqrt(1 + 4 w^2) - 1) / (2 w)``; solving
``K_t(G) = z`` for ``R_t = t R`` gives
``(z^2 - t^2) G^2 - (2 - t) z G + (1 - t) = 0`` whose discriminant is
``t^2 (z^2 - 4 (t - 1))``, hence the density
``t sqrt(4 (t-1) - u^2) / (2 pi (t^2 - u^2))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedLawTime, ValidationError
from .intervals import IntervalUnion
from .measure import MeasureSpec, Segment, validate

LAW_NAMES = ("semicircle", "bernoulli", "free_poisson", "arcsine")
DEFAULT_LAW_GRID = 2049


@dataclass(frozen=True)
class LawSpec:
    name: str
    param: float = 1.0

    def __post_init__(self):
        if self.name not in LAW_NAMES:
            raise ValidationError(f"unknown law {self.name!r}; expected one of {LAW_NAMES}")
        if not np.isfinite(self.param) or self.param <= 0:
            raise ValidationError(f"law parameter must be positive, got {self.param}")

    @classmethod
    def parse(cls, text: str) -> "LawSpec":
        """Parse ``"name"`` or ``"name:param"`` (e.g. ``"free_poisson:0.5"``)."""
        name, _, param = text.strip().partition(":")
        if not param:
            return cls(name)
        try:
            return cls(name, float(param))
        except ValueError as exc:
            raise ValidationError(f"bad law parameter in {text!r}") from exc

    def __str__(self):
        return self.name if self.name == "bernoulli" else f"{self.name}:{self.param:g}"


def _cosine_grid(lo, hi, n):
    theta = np.linspace(0.0, np.pi, n)
    xs = 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(theta)
    xs[0], xs[-1] = lo, hi
    return xs


def free_poisson_edges(lam: float) -> tuple[float, float]:
    r = np.sqrt(lam)
    return (1.0 - r) ** 2, (1.0 + r) ** 2


def law_to_spec(law, grid_n: int = DEFAULT_LAW_GRID) -> MeasureSpec:
    """Discretize ``law`` on ``grid_n`` cosine-clustered breakpoints, renormalized to mass 1."""
    if isinstance(law, str):
        law = LawSpec.parse(law)
    if grid_n < 64:
        raise ValidationError("grid_n must be at least 64")
    if law.name == "bernoulli":
        return validate(MeasureSpec(atoms=[(-1.0, 0.5), (1.0, 0.5)]))
    if law.name == "semicircle":
        r = 2.0 * np.sqrt(law.param)
        xs = _cosine_grid(-r, r, grid_n)
        ys = np.sqrt(np.maximum(r * r - xs * xs, 0.0)) / (2.0 * np.pi * law.param)
        ys[0] = ys[-1] = 0.0
        return validate(MeasureSpec(segments=[Segment(xs, ys)]), renormalize=True)
    if law.name == "free_poisson":
        lam = law.param
        a, b = free_poisson_edges(lam)
        xs = _cosine_grid(a, b, grid_n)
        with np.errstate(divide="ignore", invalid="ignore"):
            ys = np.sqrt(np.maximum((b - xs) * (xs - a), 0.0)) / (2.0 * np.pi * xs)
        ys[0] = ys[-1] = 0.0
        if lam == 1.0:
            # 1/sqrt(x) blow-up at the left edge: match the exact mass of the first cell
            x1 = xs[1]
            ys[0] = max(2.0 * _mp1_cdf(x1) / x1 - ys[1], 0.0)
        atoms = [(0.0, 1.0 - lam)] if lam < 1.0 else []
        return validate(MeasureSpec(atoms=atoms, segments=[Segment(xs, ys)]), renormalize=True)
    # arcsine: infinite density at the edges, end values chosen to match exact end-cell masses
    r = law.param
    xs = _cosine_grid(-r, r, grid_n)
    ys = np.empty_like(xs)
    ys[1:-1] = 1.0 / (np.pi * np.sqrt(r * r - xs[1:-1] ** 2))
    cell = (np.arcsin(xs[1] / r) + np.pi / 2) / np.pi
    ys[0] = 2.0 * cell / (xs[1] - xs[0]) - ys[1]
    ys[-1] = ys[0]
    return validate(MeasureSpec(segments=[Segment(xs, ys)]), renormalize=True)


def _mp1_cdf(x):
    """CDF of the rate-1 free Poisson law on [0, 4]."""
    s = np.sqrt(x * (4.0 - x))
    return 0.5 + s / (2.0 * np.pi) + np.arctan((x - 2.0) / s) / np.pi


def oracle_support(law, t: float):
    """Closed-form ``(ac_support, atoms)`` of ``mu_t``; atoms as ``[(x, m), ...]``."""
    if isinstance(law, str):
        law = LawSpec.parse(law)
    if t < 1:
        raise ValidationError("oracle needs t >= 1")
    if law.name == "semicircle":
        r = 2.0 * np.sqrt(law.param * t)
        return IntervalUnion([(-r, r)]), []
    if law.name == "free_poisson":
        lt = law.param * t
        ac = IntervalUnion([free_poisson_edges(lt)])
        return ac, ([(0.0, 1.0 - lt)] if lt < 1.0 else [])
    if law.name == "bernoulli":
        atoms = [(-t, 1.0 - t / 2.0), (t, 1.0 - t / 2.0)] if t < 2.0 else []
        if t == 1.0:
            return IntervalUnion(), atoms
        e = 2.0 * np.sqrt(t - 1.0)
        return IntervalUnion([(-e, e)]), atoms
    if t == 1.0:
        return IntervalUnion([(-law.param, law.param)]), []
    raise UnsupportedLawTime("arcsine semigroup has no closed form here beyond t = 1")


def oracle_density(law, t: float, u):
    """Closed-form density of the ac part of ``mu_t`` at ``u``."""
    if isinstance(law, str):
        law = LawSpec.parse(law)
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if law.name == "semicircle":
            v = law.param * t
            out = np.sqrt(np.maximum(4 * v - u * u, 0.0)) / (2 * np.pi * v)
        elif law.name == "free_poisson":
            a, b = free_poisson_edges(law.param * t)
            out = np.where((u > a) & (u < b), np.sqrt(np.maximum((b - u) * (u - a), 0.0)) / (2 * np.pi * u), 0.0)
        elif law.name == "bernoulli":
            q = 4 * (t - 1) - u * u
            out = np.where(q > 0, t * np.sqrt(np.maximum(q, 0.0)) / (2 * np.pi * (t * t - u * u)), 0.0)
        elif t == 1.0:
            r = law.param
            out = np.where(np.abs(u) < r, 1.0 / (np.pi * np.sqrt(r * r - u * u)), 0.0)
        else:
            raise UnsupportedLawTime("arcsine semigroup has no closed form here beyond t = 1")
    return out if out.ndim else float(out)


def resolve_measure(source, grid_n: int = DEFAULT_LAW_GRID) -> MeasureSpec:
    """Accept a :class:`MeasureSpec`, a dict, a law string/:class:`LawSpec`, or a JSON path."""
    if isinstance(source, MeasureSpec):
        return validate(source)
    if isinstance(source, LawSpec):
        return law_to_spec(source, grid_n)
    if isinstance(source, dict):
        return validate(MeasureSpec.from_dict(source))
    if isinstance(source, str) and source.partition(":")[0] in LAW_NAMES:
        return law_to_spec(source, grid_n)
    return validate(MeasureSpec.from_json(source))
