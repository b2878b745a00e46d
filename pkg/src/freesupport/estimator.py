"""scikit-learn style front end.

``fit`` takes the input measure (spec, dict, law string or JSON path) and
``transform`` maps an array of times to :class:`SupportSnapshot` objects::

    >>> sg = FreeConvolutionSemigroup(samples_n=129).fit("semicircle")
    >>> [round(hi, 3) for _, hi in sg.snapshot(4.0).ac_support]
    [4.0]
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .geometry import DEFAULT_GRID_N, DEFAULT_SAMPLES_N, v_plus
from .hausdorff import continuity_scan, hausdorff
from .laws import DEFAULT_LAW_GRID
from .measure import hull, mean_variance
from .support import atoms_at, snapshot, vanishing_times
from .transforms import Y_FLOOR
from .validation import check_int, check_measure, check_positive, check_times


class FreeConvolutionSemigroup(BaseEstimator):
    """The semigroup ``{mu_t}_{t > 1}`` of one compactly supported measure.

    Parameters
    ----------
    grid_n : int
        Scan points used to locate the components of ``V_t``.
    samples_n : int
        Chebyshev samples per component (rounded up to odd).
    y_floor : float
        Smallest imaginary part at which transforms are evaluated.
    law_grid_n : int
        Breakpoints used when ``fit`` receives a named law.
    """

    def __init__(self, grid_n=DEFAULT_GRID_N, samples_n=DEFAULT_SAMPLES_N, y_floor=Y_FLOOR,
                 law_grid_n=DEFAULT_LAW_GRID):
        self.grid_n = grid_n
        self.samples_n = samples_n
        self.y_floor = y_floor
        self.law_grid_n = law_grid_n

    def _check_params(self):
        check_int(self.grid_n, "grid_n", 64)
        check_int(self.samples_n, "samples_n", 5)
        check_int(self.law_grid_n, "law_grid_n", 64)
        check_positive(self.y_floor, "y_floor")

    def fit(self, X, y=None):
        self._check_params()
        self.measure_ = check_measure(X, self.law_grid_n)
        self.hull_ = hull(self.measure_)
        self.mean_, self.variance_ = mean_variance(self.measure_)
        self.vanishing_times_ = vanishing_times(self.measure_)
        return self

    def _kw(self):
        return dict(grid_n=self.grid_n, samples_n=self.samples_n, y_floor=self.y_floor)

    def snapshot(self, t):
        check_is_fitted(self, "measure_")
        return snapshot(self.measure_, t, **self._kw())

    def transform(self, X):
        """One snapshot per time in ``X``."""
        check_is_fitted(self, "measure_")
        return [snapshot(self.measure_, t, **self._kw()) for t in check_times(X)]

    def fit_transform(self, X, y=None, times=(2.0,)):
        return self.fit(X).transform(times)

    def v_plus(self, t):
        check_is_fitted(self, "measure_")
        return v_plus(self.measure_, t, self.grid_n, self.y_floor)

    def atoms(self, t):
        check_is_fitted(self, "measure_")
        return atoms_at(self.measure_, t)

    def support_distance(self, t, r) -> float:
        """Hausdorff distance between ``supp(mu_t)`` and ``supp(mu_r)``."""
        a, b = self.transform([t, r])
        return hausdorff(a.support(), b.support())

    def scan(self, t_lo, t_hi, steps, refine_depth=2, jobs=1):
        check_is_fitted(self, "measure_")
        return continuity_scan(self.measure_, t_lo, t_hi, steps, refine_depth, jobs=jobs, **self._kw())
