"""Input checks shared by the estimator, the CLI and the library entry points."""

from __future__ import annotations

import numbers

import numpy as np

from .errors import InvalidTime, ValidationError
from .geometry import check_time
from .laws import DEFAULT_LAW_GRID, resolve_measure
from .measure import MeasureSpec


def check_measure(source, law_grid_n: int = DEFAULT_LAW_GRID) -> MeasureSpec:
    """Resolve ``source`` to a validated :class:`MeasureSpec`.

    ``source`` may be a spec, a ``{"atoms": ..., "segments": ...}`` dict, a
    law name such as ``"free_poisson:0.5"`` or a path to a JSON file.
    """
    return resolve_measure(source, law_grid_n)


def check_times(times) -> np.ndarray:
    """1-d float array of times, each ``> 1``."""
    arr = np.atleast_1d(np.asarray(times, dtype=float))
    if arr.ndim != 1:
        raise InvalidTime("times must be a scalar or a 1-d sequence")
    for t in arr:
        check_time(t)
    return arr


def check_int(value, name: str, minimum: int) -> int:
    if not isinstance(value, numbers.Integral) or value < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_positive(value, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValidationError(f"{name} must be a positive number, got {value!r}")
    return value


def parse_time_range(text: str) -> tuple[float, float]:
    """Parse ``"lo:hi"``."""
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValidationError(f"expected a range lo:hi, got {text!r}")
    try:
        return check_time(lo), check_time(hi)
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"bad time range {text!r}") from exc
