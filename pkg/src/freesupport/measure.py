"""Input measures: finitely many atoms plus a piecewise-linear density."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import (DiracMass, MassNotOne, OverlappingSegments,
                     UnboundedSupport, ValidationError)

MASS_TOL = 1e-10


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Segment:
    """Density that interpolates ``ys`` linearly on ``xs`` and vanishes outside."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "xs", _frozen(self.xs))
        object.__setattr__(self, "ys", _frozen(self.ys))

    @property
    def lo(self) -> float:
        return float(self.xs[0])

    @property
    def hi(self) -> float:
        return float(self.xs[-1])

    def mass(self) -> float:
        return float(np.sum(0.5 * (self.ys[1:] + self.ys[:-1]) * np.diff(self.xs)))


@dataclass(frozen=True, eq=False)
class MeasureSpec:
    """Probability measure ``sum_j m_j delta_{x_j} + p(s) ds``.

    ``atoms`` is an ``(n, 2)`` array of ``(position, mass)`` rows. Instances are
    not checked on construction; pass them through :func:`validate`.
    """

    atoms: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    segments: tuple = ()

    def __post_init__(self):
        atoms = np.array(self.atoms, dtype=float).reshape(-1, 2)
        if len(atoms):
            atoms = atoms[np.argsort(atoms[:, 0], kind="stable")]
        atoms.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in self.segments)
        object.__setattr__(self, "segments", tuple(sorted(segs, key=lambda s: s.lo)))

    @property
    def atom_positions(self) -> np.ndarray:
        return self.atoms[:, 0]

    @property
    def atom_masses(self) -> np.ndarray:
        return self.atoms[:, 1]

    @cached_property
    def cells(self):
        """Every linear piece as arrays ``(a, b, p(a), p(b))``."""
        if not self.segments:
            empty = np.zeros(0)
            return empty, empty, empty, empty
        a = np.concatenate([s.xs[:-1] for s in self.segments])
        b = np.concatenate([s.xs[1:] for s in self.segments])
        pa = np.concatenate([s.ys[:-1] for s in self.segments])
        pb = np.concatenate([s.ys[1:] for s in self.segments])
        keep = (pa != 0) | (pb != 0)
        return a[keep], b[keep], pa[keep], pb[keep]

    def density_mass(self) -> float:
        return float(sum(s.mass() for s in self.segments))

    def total_mass(self) -> float:
        return float(self.atom_masses.sum()) + self.density_mass()

    def density(self, x):
        """Evaluate the density at ``x`` (array-like)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for s in self.segments:
            inside = (x >= s.lo) & (x <= s.hi)
            out = np.where(inside, np.interp(x, s.xs, s.ys), out)
        return out

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "atoms": [{"x": float(x), "m": float(m)} for x, m in self.atoms],
            "segments": [{"xs": s.xs.tolist(), "ys": s.ys.tolist()} for s in self.segments],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MeasureSpec":
        try:
            atoms = [(a["x"], a["m"]) for a in d.get("atoms", [])]
            segments = [Segment(s["xs"], s["ys"]) for s in d.get("segments", [])]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed measure spec: {exc}") from exc
        return cls(atoms=atoms, segments=segments)

    @classmethod
    def from_json(cls, path) -> "MeasureSpec":
        return cls.from_dict(json.loads(Path(path).read_text()))


def validate(spec: MeasureSpec, renormalize: bool = False) -> MeasureSpec:
    """Check the invariants of ``spec`` and return it (or a renormalized copy).

    With ``renormalize=True`` the density part is rescaled so that the total
    mass is exactly one; atoms are never touched.
    """
    atoms = spec.atoms
    if not np.all(np.isfinite(atoms)):
        raise UnboundedSupport("atom positions and masses must be finite")
    if np.any(atoms[:, 1] <= 0) or np.any(atoms[:, 1] > 1):
        raise ValidationError("atom masses must lie in (0, 1]")
    if len(atoms) > 1 and np.any(np.diff(atoms[:, 0]) == 0):
        raise ValidationError("atom positions must be pairwise distinct")

    for s in spec.segments:
        if s.xs.ndim != 1 or s.xs.shape != s.ys.shape or len(s.xs) < 2:
            raise ValidationError("each segment needs matching xs/ys with at least two breakpoints")
        if not (np.all(np.isfinite(s.xs)) and np.all(np.isfinite(s.ys))):
            raise UnboundedSupport("segment breakpoints and values must be finite")
        if np.any(np.diff(s.xs) <= 0):
            raise ValidationError("segment breakpoints must be strictly increasing")
        if np.any(s.ys < 0):
            raise ValidationError("density values must be nonnegative")
    for left, right in zip(spec.segments, spec.segments[1:]):
        if right.lo < left.hi:
            raise OverlappingSegments(f"segments [{left.lo}, {left.hi}] and [{right.lo}, {right.hi}] overlap")

    dmass = spec.density_mass()
    amass = float(atoms[:, 1].sum())
    if dmass == 0 and len(atoms) == 1:
        raise DiracMass(f"measure is a single point mass at {atoms[0, 0]}")
    if dmass == 0 and len(atoms) == 0:
        raise MassNotOne("measure has no mass")

    if renormalize:
        if dmass == 0 or amass >= 1:
            raise MassNotOne("cannot renormalize: density part is empty or atoms already carry all mass")
        scale = (1.0 - amass) / dmass
        spec = MeasureSpec(atoms=atoms, segments=[Segment(s.xs, s.ys * scale) for s in spec.segments])
    total = spec.total_mass()
    if abs(total - 1.0) > MASS_TOL:
        raise MassNotOne(f"total mass is {total!r}, expected 1")
    return spec


def moment(spec: MeasureSpec, k: int) -> float:
    """Exact ``k``-th moment: atoms summed, linear pieces integrated in closed form."""
    if k < 0:
        raise ValidationError("moment order must be nonnegative")
    pos, mass = spec.atom_positions, spec.atom_masses
    total = float(np.sum(mass * pos**k))
    a, b, pa, pb = spec.cells
    if len(a):
        slope = (pb - pa) / (b - a)
        c0 = pa - slope * a
        ik = (b ** (k + 1) - a ** (k + 1)) / (k + 1)
        ik1 = (b ** (k + 2) - a ** (k + 2)) / (k + 2)
        total += float(np.sum(c0 * ik + slope * ik1))
    return total


def hull(spec: MeasureSpec) -> tuple[float, float]:
    """Smallest closed interval containing the support."""
    pts = list(spec.atom_positions)
    a, b, _, _ = spec.cells
    if len(a):
        pts += [a.min(), b.max()]
    return float(min(pts)), float(max(pts))


def mean_variance(spec: MeasureSpec) -> tuple[float, float]:
    m1 = moment(spec, 1)
    return m1, moment(spec, 2) - m1 * m1
