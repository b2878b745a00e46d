"""Serialization and atomic file output.

Output is deterministic: floats are written with ``repr`` (shortest
round-tripping form), JSON keys keep a fixed order, and no timestamps or
other run-dependent fields are emitted.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from .support import SupportSnapshot


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a sibling temp file and ``os.replace``.

    A failure at any point leaves ``path`` untouched and removes the temp file.
    """
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def emit(text: str, out=None) -> None:
    """Atomic write to ``out``, or standard output when ``out`` is None or ``-``."""
    if out is None or str(out) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        atomic_write(out, text)


def _clean(obj):
    # JSON has no inf/nan; map them to null
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def snapshot_json(snap: SupportSnapshot) -> str:
    return dumps(snap.to_dict())


def snapshot_csv(snap: SupportSnapshot) -> str:
    """One row per support piece: ``kind,lo,hi,mass``; atoms have ``lo == hi``."""
    rows = [("ac", float(lo), float(hi), None) for lo, hi in snap.ac_support]
    rows += [("atom", a.position, a.position, a.mass) for a in snap.atoms]
    return _csv(["kind", "lo", "hi", "mass"], rows)


def density_rows(snap: SupportSnapshot):
    rows = []
    for k, comp in enumerate(snap.density.components):
        for x, f, u, p in zip(comp.x, comp.f, comp.u, comp.p):
            rows.append((k, float(x), float(f), float(u), float(p) if math.isfinite(p) else None))
    return rows


def density_csv(snap: SupportSnapshot) -> str:
    """Columns ``component,x,f,u,p``; an empty ``p`` marks a singular point."""
    return _csv(["component", "x", "f", "u", "p"], density_rows(snap))


def density_json(snap: SupportSnapshot) -> str:
    keys = ("component", "x", "f", "u", "p")
    return dumps({"t": snap.t, "samples": [dict(zip(keys, r)) for r in density_rows(snap)]})


def scan_json(table) -> str:
    return dumps({"rows": [{"t": r.t, "r": r.r, "d_H": r.d_h, "refined": r.refined,
                            "atom_vanishing_nearby": r.atom_vanishing_nearby} for r in table.rows]})


def load_snapshot(path) -> SupportSnapshot:
    with open(path, encoding="utf-8") as fh:
        return SupportSnapshot.from_dict(json.load(fh))
