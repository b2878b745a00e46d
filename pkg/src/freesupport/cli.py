"""Command line interface.

Exit codes: 0 success, 1 a verified property failed, 2 invalid input,
3 numerical failure. Files named by ``--out`` are written atomically, so a
failed run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import NumericalError, ValidationError
from .geometry import DEFAULT_GRID_N, DEFAULT_SAMPLES_N, check_time
from .hausdorff import continuity_scan, hausdorff
from .io import (density_csv, density_json, dumps, emit, load_snapshot, scan_json, snapshot_csv,
                 snapshot_json)
from .laws import DEFAULT_LAW_GRID, LawSpec, law_to_spec
from .measure import MeasureSpec, validate
from .support import snapshot
from .transforms import Y_FLOOR
from .validation import check_int, check_positive, parse_time_range
from .verify import run_suite

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--law", help="named law, e.g. semicircle, bernoulli, free_poisson:0.5, arcsine:2")
    g.add_argument("--file", help="measure JSON file with 'atoms' and 'segments'")
    p.add_argument("--law-grid-n", type=int, default=DEFAULT_LAW_GRID,
                   help="breakpoints used to discretize a named law (default %(default)s)")


def _add_numerics(p):
    p.add_argument("--grid-n", type=int, default=DEFAULT_GRID_N, help="V_t scan points (default %(default)s)")
    p.add_argument("--samples-n", type=int, default=DEFAULT_SAMPLES_N,
                   help="samples per component (default %(default)s)")
    p.add_argument("--y-floor", type=float, default=Y_FLOOR, help="smallest Im z used (default %(default)g)")


def _add_output(p, default_format):
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--format", choices=("json", "csv"), default=default_format)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="freesupport", description="Supports of free convolution semigroups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("snapshot", help="atoms, ac support and density of mu_t")
    _add_source(p)
    p.add_argument("--t", required=True, help="time t > 1")
    _add_numerics(p)
    _add_output(p, "json")

    p = sub.add_parser("density", help="sampled density profile of mu_t")
    _add_source(p)
    p.add_argument("--t", required=True, help="time t > 1")
    _add_numerics(p)
    _add_output(p, "csv")

    p = sub.add_parser("scan", help="adjacent Hausdorff distances of supp(mu_t) over a t range")
    _add_source(p)
    p.add_argument("--t", required=True, help="range lo:hi with 1 < lo < hi")
    p.add_argument("--steps", type=int, required=True, help="number of equally spaced times (>= 2)")
    p.add_argument("--refine-depth", type=int, default=2, help="midpoint refinement rounds (default %(default)s)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default %(default)s)")
    _add_numerics(p)
    _add_output(p, "csv")

    p = sub.add_parser("hausdorff", help="distance between the supports in two snapshot files")
    p.add_argument("first")
    p.add_argument("second")
    _add_output(p, "json")

    p = sub.add_parser("verify", help="run the property suite on a measure")
    _add_source(p)
    p.add_argument("--seed", type=int, default=0)
    _add_numerics(p)
    _add_output(p, "json")
    return parser


def _measure(args) -> tuple[MeasureSpec, LawSpec | None, str]:
    check_int(args.law_grid_n, "--law-grid-n", 64)
    if args.law is not None:
        law = LawSpec.parse(args.law)
        return law_to_spec(law, args.law_grid_n), law, str(law)
    try:
        return validate(MeasureSpec.from_json(args.file)), None, args.file
    except OSError as exc:
        raise ValidationError(f"cannot read {args.file}: {exc.strerror or exc}") from exc
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed measure file {args.file}: {exc}") from exc


def _numerics(args) -> dict:
    return dict(grid_n=check_int(args.grid_n, "--grid-n", 64),
                samples_n=check_int(args.samples_n, "--samples-n", 5),
                y_floor=check_positive(args.y_floor, "--y-floor"))


def _time(text) -> float:
    try:
        return check_time(float(text))
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"--t must be a number, got {text!r}") from exc


def cmd_snapshot(args) -> int:
    spec, _, _ = _measure(args)
    snap = snapshot(spec, _time(args.t), **_numerics(args))
    emit(snapshot_json(snap) if args.format == "json" else snapshot_csv(snap), args.out)
    return EXIT_OK


def cmd_density(args) -> int:
    spec, _, _ = _measure(args)
    snap = snapshot(spec, _time(args.t), check_refinement=False, **_numerics(args))
    emit(density_json(snap) if args.format == "json" else density_csv(snap), args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    spec, _, _ = _measure(args)
    lo, hi = parse_time_range(args.t)
    steps = check_int(args.steps, "--steps", 2)
    depth = check_int(args.refine_depth, "--refine-depth", 0)
    jobs = check_int(args.jobs, "--jobs", 1)
    table = continuity_scan(spec, lo, hi, steps, depth, jobs=jobs, **_numerics(args))
    emit(scan_json(table) if args.format == "json" else table.to_csv(), args.out)
    return EXIT_OK


def cmd_hausdorff(args) -> int:
    snaps = []
    for path in (args.first, args.second):
        try:
            snaps.append(load_snapshot(path))
        except OSError as exc:
            raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from exc
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValidationError(f"malformed snapshot file {path}: {exc}") from exc
    a, b = snaps
    d = hausdorff(a.support(), b.support())
    if args.format == "json":
        text = dumps({"t_first": a.t, "t_second": b.t, "d_H": d})
    else:
        text = f"t_first,t_second,d_H\n{a.t!r},{b.t!r},{d!r}\n"
    emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec, law, source = _measure(args)
    report = run_suite(spec, source, law, seed=args.seed, **_numerics(args))
    if args.format == "json":
        text = dumps(report.to_dict())
    else:
        lines = ["property,passed,worst,limit,detail"]
        lines += [f"{r.name},{int(r.passed)},{r.worst!r},{r.limit!r},\"{r.detail}\"" for r in report.results]
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    for r in report.results:
        if not r.passed:
            print(f"FAIL {r.name}: worst {r.worst:.3g} vs limit {r.limit:.3g} {r.detail}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_PROPERTY


COMMANDS = {"snapshot": cmd_snapshot, "density": cmd_density, "scan": cmd_scan,
            "hausdorff": cmd_hausdorff, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, FloatingPointError, RuntimeError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
