"""Finite unions of closed intervals (isolated points allowed)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


def merge_intervals(intervals, gap: float = 0.0):
    """Sort and merge intervals whose separation is ``<= gap``."""
    out = []
    for lo, hi in sorted((float(lo), float(hi)) for lo, hi in intervals):
        if hi < lo:
            raise ValidationError(f"interval ({lo}, {hi}) has hi < lo")
        if out and lo - out[-1][1] <= gap:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return [tuple(iv) for iv in out]


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed intervals ``[lo, hi]``; ``lo == hi`` is a point.

    The constructor normalizes: touching or overlapping pieces are merged, so
    consecutive intervals always have a positive gap.
    """

    intervals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(merge_intervals(self.intervals)))

    @classmethod
    def from_points(cls, points) -> "IntervalUnion":
        return cls([(p, p) for p in points])

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    @property
    def lows(self) -> np.ndarray:
        return np.array([iv[0] for iv in self.intervals], dtype=float)

    @property
    def highs(self) -> np.ndarray:
        return np.array([iv[1] for iv in self.intervals], dtype=float)

    def normalize(self, gap: float = 0.0) -> "IntervalUnion":
        """Merge pieces closer than ``gap`` (``gap=0`` is the identity)."""
        return IntervalUnion(merge_intervals(self.intervals, gap))

    def union(self, other) -> "IntervalUnion":
        return IntervalUnion(self.intervals + tuple(other))

    def measure(self) -> float:
        return float(sum(hi - lo for lo, hi in self.intervals))

    def hull(self) -> tuple[float, float]:
        return self.intervals[0][0], self.intervals[-1][1]

    def distance_to(self, x) -> np.ndarray:
        """Euclidean distance from each point of ``x`` to the set."""
        x = np.asarray(x, dtype=float)
        lows, highs = self.lows, self.highs
        i = np.searchsorted(lows, x, side="right") - 1
        left = np.clip(i, 0, len(lows) - 1)
        right = np.clip(i + 1, 0, len(lows) - 1)
        # distance to the piece starting at or before x, and to the next one
        d_left = np.where(i >= 0, np.maximum(x - highs[left], 0.0), np.inf)
        d_right = np.where(i + 1 < len(lows), lows[right] - x, np.inf)
        return np.minimum(np.maximum(d_left, 0.0), np.maximum(d_right, 0.0))

    def contains(self, x, tol: float = 0.0) -> np.ndarray:
        return self.distance_to(x) <= tol

    def covers(self, other: "IntervalUnion", tol: float = 0.0) -> bool:
        """True if every piece of ``other`` sits inside one piece of ``self`` (up to ``tol``)."""
        for lo, hi in other:
            if not any(a - tol <= lo and hi <= b + tol for a, b in self.intervals):
                return False
        return True

    def to_list(self):
        return [[lo, hi] for lo, hi in self.intervals]
