"""Exact Hausdorff distance between interval unions and the continuity scan over ``t``."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .errors import EmptySet, ValidationError
from .geometry import DEFAULT_GRID_N, DEFAULT_SAMPLES_N, check_time
from .intervals import IntervalUnion
from .measure import MeasureSpec
from .support import snapshot, vanishing_times
from .transforms import Y_FLOOR

REFINE_FACTOR = 5.0
LOCAL_WINDOW = 5


def directed_hausdorff(A: IntervalUnion, B: IntervalUnion) -> float:
    """``sup_{a in A} dist(a, B)``.

    ``dist(., B)`` is piecewise linear with peaks only at midpoints of the
    gaps of ``B`` (and grows away from ``B``'s hull), so its maximum over an
    interval of ``A`` is attained at an endpoint of that interval or at a gap
    midpoint lying inside it.
    """
    if not A or not B:
        raise EmptySet("Hausdorff distance needs two nonempty sets")
    cand = [A.lows, A.highs]
    if len(B) > 1:
        mids = 0.5 * (B.highs[:-1] + B.lows[1:])
        cand.append(mids[A.contains(mids)])
    pts = np.concatenate(cand)
    return float(np.max(B.distance_to(pts)))


def hausdorff(A: IntervalUnion, B: IntervalUnion) -> float:
    """Exact Hausdorff distance between two nonempty interval unions."""
    return max(directed_hausdorff(A, B), directed_hausdorff(B, A))


@dataclass(frozen=True)
class ScanRow:
    t: float
    r: float
    d_h: float
    refined: bool = False
    atom_vanishing_nearby: bool = False


@dataclass
class ContinuityTable:
    """Adjacent-pair Hausdorff distances of ``supp(mu_t)`` along a ``t`` grid."""

    rows: list = field(default_factory=list)
    snapshots: dict = field(default_factory=dict, repr=False)

    @property
    def distances(self) -> np.ndarray:
        return np.array([row.d_h for row in self.rows])

    def max_distance(self) -> float:
        return float(self.distances.max())

    def median_distance(self) -> float:
        return float(np.median(self.distances))

    def times(self):
        return sorted(self.snapshots)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "r", "d_H", "refined", "atom_vanishing_nearby"])
        for row in self.rows:
            w.writerow([repr(row.t), repr(row.r), repr(row.d_h), int(row.refined),
                        int(row.atom_vanishing_nearby)])
        return buf.getvalue()


def _support_of(spec, t, grid_n, samples_n, y_floor):
    return snapshot(spec, t, grid_n, samples_n, y_floor, check_refinement=False)


def _compute(spec, ts, jobs, **kw):
    fn = partial(_support_of, spec, **kw)
    if jobs and jobs > 1 and len(ts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return dict(zip(ts, pool.map(fn, ts)))
    return {t: fn(t) for t in ts}


def _local_median(d: np.ndarray, i: int) -> float:
    lo, hi = max(0, i - LOCAL_WINDOW), min(len(d), i + LOCAL_WINDOW + 1)
    return float(np.median(d[lo:hi]))


def continuity_scan(spec: MeasureSpec, t_lo: float, t_hi: float, steps: int, refine_depth: int = 2,
                    grid_n: int = DEFAULT_GRID_N, samples_n: int = DEFAULT_SAMPLES_N,
                    y_floor: float = Y_FLOOR, jobs: int = 1) -> ContinuityTable:
    """Snapshots on ``steps`` equally spaced times and ``d_H`` between neighbours.

    A pair ``(t, r)`` is split at its midpoint, up to ``refine_depth`` times,
    when its distance exceeds ``REFINE_FACTOR`` times the local median or an
    atom of ``mu`` vanishes in ``[t, r]``.
    """
    t_lo, t_hi = check_time(t_lo), check_time(t_hi)
    if not t_lo < t_hi:
        raise ValidationError("scan needs t_lo < t_hi")
    if steps < 2:
        raise ValidationError("scan needs at least 2 steps")
    kw = dict(grid_n=grid_n, samples_n=samples_n, y_floor=y_floor)
    ts = [float(t) for t in np.linspace(t_lo, t_hi, steps)]
    snaps = _compute(spec, ts, jobs, **kw)
    vanish = vanishing_times(spec)

    def straddles(t, r):
        return any(t <= v <= r for v in vanish)

    refined = set()
    for _ in range(refine_depth):
        ts = sorted(snaps)
        d = np.array([hausdorff(snaps[a].support(), snaps[b].support()) for a, b in zip(ts, ts[1:])])
        split = [0.5 * (a + b) for i, (a, b) in enumerate(zip(ts, ts[1:]))
                 if d[i] > REFINE_FACTOR * _local_median(d, i) or straddles(a, b)]
        if not split:
            break
        snaps.update(_compute(spec, split, jobs, **kw))
        refined.update(split)

    ts = sorted(snaps)
    rows = []
    for a, b in zip(ts, ts[1:]):
        rows.append(ScanRow(a, b, hausdorff(snaps[a].support(), snaps[b].support()),
                            refined=a in refined or b in refined,
                            atom_vanishing_nearby=any(a <= v <= b for v in vanish)))
    return ContinuityTable(rows, snaps)
