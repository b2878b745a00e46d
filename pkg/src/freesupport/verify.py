"""Property checks run by ``freesupport verify``.

Every check is deterministic (fixed seed) and returns a :class:`PropertyResult`
with the worst observed value so failures can be diagnosed from the report.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import UnsupportedLawTime
from .geometry import DEFAULT_GRID_N, DEFAULT_SAMPLES_N, f_t, scan_window, v_plus
from .hausdorff import hausdorff
from .laws import LawSpec, oracle_support
from .measure import MeasureSpec, mean_variance
from .support import CONTAIN_TOL, h_t_map, snapshot, vanishing_times
from .transforms import Y_FLOOR, f_transform, nevanlinna_h

CHECK_TIMES = (1.25, 1.5, 2.0, 3.0)
MASS_TOL = 1e-4
MOMENT_TOL = 1e-3
EDGE_ORACLE_TOL = 1e-2
ATOM_ORACLE_TOL = 1e-6
LIPSCHITZ_CONST = 2.0


@dataclass
class PropertyResult:
    name: str
    passed: bool
    worst: float
    limit: float
    detail: str = ""


@dataclass
class VerifyReport:
    source: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"source": self.source, "passed": self.passed,
                "properties": [asdict(r) for r in self.results]}


def check_h_decreasing(spec, rng, n=1000):
    lo, hi = scan_window(spec)
    x = rng.uniform(lo, hi, n)
    y = np.sort(10.0 ** rng.uniform(-4, 1, (n, 2)), axis=1)
    y[:, 1] = np.maximum(y[:, 1], 1.001 * y[:, 0])
    h1 = np.asarray(nevanlinna_h(spec, x, y[:, 0]))
    h2 = np.asarray(nevanlinna_h(spec, x, y[:, 1]))
    gap = float(np.min(h1 - h2))
    return PropertyResult("h_strictly_decreasing", gap > 0, gap, 0.0, f"{n} triples; min h(y1)-h(y2)")


def check_nevanlinna(spec, rng, n=1000):
    lo, hi = scan_window(spec)
    z = rng.uniform(lo, hi, n) + 1j * 10.0 ** rng.uniform(-4, 1, n)
    excess = np.asarray(f_transform(spec, z)).imag / z.imag - 1.0
    worst = float(excess.min())
    return PropertyResult("im_F_at_least_im_z", worst >= -1e-9, worst, -1e-9, f"{n} points; min Im F/Im z - 1")


def check_v_monotone(spec, rng, pairs=10, grid_n=DEFAULT_GRID_N, y_floor=Y_FLOOR):
    worst = 0.0
    for _ in range(pairs):
        r, t = np.sort(rng.uniform(1.05, 4.0, 2))
        small, big = v_plus(spec, r, grid_n, y_floor), v_plus(spec, t, grid_n, y_floor)
        if small:
            pts = np.concatenate([small.lows, small.highs])
            worst = max(worst, float(np.max(big.distance_to(pts))) if big else np.inf)
    # edges are located to 1e-9, so allow that much slack
    return PropertyResult("v_plus_increasing", worst <= 1e-8, worst, 1e-8, f"{pairs} pairs r<t")


def check_lipschitz(spec, rng, n=1000, y_floor=Y_FLOOR):
    lo, hi = scan_window(spec)
    worst = 0.0
    per_t = n // len(CHECK_TIMES)
    for t in CHECK_TIMES:
        x = rng.uniform(lo, hi, (per_t, 2))
        f = f_t(spec, t, x.ravel(), y_floor).reshape(x.shape)
        y = np.maximum(f + rng.exponential(0.5, x.shape), y_floor)
        z = x + 1j * y
        H = np.asarray(h_t_map(spec, t, z.ravel())).reshape(z.shape)
        dz = np.abs(z[:, 0] - z[:, 1])
        ratio = np.abs(H[:, 0] - H[:, 1]) / dz
        worst = max(worst, float(ratio[dz > 0].max()))
    return PropertyResult("H_t_lipschitz_2", worst <= LIPSCHITZ_CONST * (1 + 1e-9), worst, LIPSCHITZ_CONST,
                          f"{per_t * len(CHECK_TIMES)} admissible pairs")


def check_mass_and_moments(spec, snaps):
    m0, v0 = mean_variance(spec)
    mass_err, mean_err, var_err = 0.0, 0.0, 0.0
    for t, s in snaps.items():
        mass_err = max(mass_err, abs(s.mass() - 1.0))
        m, v = s.mean_variance()
        mean_err = max(mean_err, abs(m - t * m0))
        var_err = max(var_err, abs(v - t * v0))
    times = ",".join(f"{t:g}" for t in snaps)
    return [
        PropertyResult("mass_conservation", mass_err <= MASS_TOL, mass_err, MASS_TOL, f"t in {times}"),
        PropertyResult("mean_scales_by_t", mean_err <= MOMENT_TOL, mean_err, MOMENT_TOL, f"t in {times}"),
        PropertyResult("variance_scales_by_t", var_err <= MOMENT_TOL, var_err, MOMENT_TOL, f"t in {times}"),
    ]


def check_vanishing_atoms(spec, t_max=4.0, **kw):
    worst, count = 0.0, 0
    for tv in vanishing_times(spec):
        if tv > t_max:
            continue
        s = snapshot(spec, tv, check_refinement=False, **kw)
        for pos in s.vanishing:
            count += 1
            worst = max(worst, float(s.ac_support.distance_to(pos)) if s.ac_support else np.inf)
    return PropertyResult("vanishing_atom_in_ac", worst <= CONTAIN_TOL, worst, CONTAIN_TOL,
                          f"{count} vanishing atoms with t <= {t_max:g}")


def check_oracle(law: LawSpec, snaps):
    worst_edge, worst_atom, skipped = 0.0, 0.0, []
    for t, s in snaps.items():
        try:
            ac, atoms = oracle_support(law, t)
        except UnsupportedLawTime:
            skipped.append(f"{t:g}")
            continue
        if ac:
            worst_edge = max(worst_edge, hausdorff(s.ac_support, ac) if s.ac_support else np.inf)
        got = sorted((a.position, a.mass) for a in s.atoms)
        want = sorted(atoms)
        if len(got) != len(want):
            worst_atom = np.inf
        else:
            for (gx, gm), (wx, wm) in zip(got, want):
                worst_atom = max(worst_atom, abs(gx - wx), abs(gm - wm))
    detail = f"skipped t={','.join(skipped)}" if skipped else ""
    return [
        PropertyResult("oracle_ac_support", worst_edge < EDGE_ORACLE_TOL, worst_edge, EDGE_ORACLE_TOL, detail),
        PropertyResult("oracle_atoms", worst_atom < ATOM_ORACLE_TOL, worst_atom, ATOM_ORACLE_TOL, detail),
    ]


def run_suite(spec: MeasureSpec, source: str = "", law: LawSpec | None = None, seed: int = 0,
              grid_n: int = DEFAULT_GRID_N, samples_n: int = DEFAULT_SAMPLES_N,
              y_floor: float = Y_FLOOR) -> VerifyReport:
    """Run every property on ``spec``; oracle comparisons are added when ``law`` is given."""
    rng = np.random.default_rng(seed)
    kw = dict(grid_n=grid_n, samples_n=samples_n, y_floor=y_floor)
    report = VerifyReport(source)
    report.results.append(check_h_decreasing(spec, rng))
    report.results.append(check_nevanlinna(spec, rng))
    report.results.append(check_v_monotone(spec, rng, grid_n=grid_n, y_floor=y_floor))
    report.results.append(check_lipschitz(spec, rng, y_floor=y_floor))
    snaps = {t: snapshot(spec, t, check_refinement=False, **kw) for t in CHECK_TIMES}
    report.results.extend(check_mass_and_moments(spec, snaps))
    report.results.append(check_vanishing_atoms(spec, **kw))
    if law is not None:
        report.results.extend(check_oracle(law, snaps))
    return report
