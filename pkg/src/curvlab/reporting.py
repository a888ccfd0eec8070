"""Deterministic report files: RFC-4180 CSV, JSON manifests, atomic writes."""

from __future__ import annotations

import csv
import json
import os
import platform
import tempfile
import time
from pathlib import Path


def fmt17(x) -> str:
    """17-significant-digit decimal rendering (round-trips float64)."""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, complex):
        return f"{fmt17(x.real)}+{fmt17(x.imag)}j" if x.imag >= 0 else f"{fmt17(x.real)}{fmt17(x.imag)}j"
    if isinstance(x, str):
        return x
    return "%.17g" % float(x)


def _atomic_write(path: Path, data: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, rows):
    """RFC-4180 CSV (CRLF, UTF-8, '.' decimal, 17 significant digits)."""
    path = Path(path)
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt17(v) for v in row])
    _atomic_write(path, buf.getvalue())
    return path


def write_json(path, obj):
    path = Path(path)
    _atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return path


def build_manifest(config: dict, seed, timings: dict, outputs: list, extra: dict | None = None) -> dict:
    import numpy
    import scipy

    from . import __version__

    manifest = {
        "config": config,
        "seed": seed,
        "versions": {
            "curvlab": __version__,
            "numpy": numpy.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "timings_seconds": {k: round(v, 6) for k, v in timings.items()},
        "outputs": [str(p) for p in outputs],
        "written_at_unix": int(time.time()),
    }
    if extra:
        manifest.update(extra)
    return manifest
