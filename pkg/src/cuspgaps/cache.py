"""On-disk basis cache: bit-exact decimal integers plus a JSON sidecar.

Format (one file per basis):

    MFBASIS v1 <level> <weight> <precision> <dim>
    <row 1: precision space-separated integers>
    ...
    <row dim>

with metadata {engineVersion, sturmBound, pivots} in <file>.meta.json.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import EngineError
from .invariants import sturm_bound
from .msengine import SpaceBasis
from .qexp import QExpansion

MAGIC = "MFBASIS"
FORMAT_VERSION = "v1"
ENGINE_VERSION = "0.1.0"


def cache_filename(level: int, weight: int, precision: int) -> str:
    return f"basis_N{level}_k{weight}_B{precision}.mfb"


def write_basis(basis: SpaceBasis, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / cache_filename(basis.level, basis.weight, basis.precision)
    lines = [f"{MAGIC} {FORMAT_VERSION} {basis.level} {basis.weight} {basis.precision} {basis.dimension}"]
    for row in basis.rows:
        lines.append(" ".join(str(int(c)) for c in row.coeffs))
    path.write_text("\n".join(lines) + "\n")
    meta = {
        "engineVersion": ENGINE_VERSION,
        "sturmBound": sturm_bound(basis.level, basis.weight),
        "pivots": list(basis.pivots),
    }
    Path(str(path) + ".meta.json").write_text(json.dumps(meta, sort_keys=True) + "\n")
    return path


def read_basis(path: str | Path) -> SpaceBasis:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise EngineError(f"empty cache file {path}")
    header = lines[0].split()
    if len(header) != 6 or header[0] != MAGIC or header[1] != FORMAT_VERSION:
        raise EngineError(f"bad cache header in {path}: {lines[0]!r}")
    level, weight, precision, dim = (int(x) for x in header[2:])
    body = lines[1:]
    if len(body) != dim:
        raise EngineError(f"cache body has {len(body)} rows, header says {dim}")
    rows = []
    pivots = []
    for line in body:
        coeffs = tuple(int(x) for x in line.split())
        if len(coeffs) != precision:
            raise EngineError(f"cache row has {len(coeffs)} coefficients, header says {precision}")
        rows.append(QExpansion(coeffs, weight, level))
        pivot = next((i + 1 for i, c in enumerate(coeffs) if c), None)
        if pivot is None:
            raise EngineError("cache row is identically zero")
        pivots.append(pivot)
    meta_path = Path(str(path) + ".meta.json")
    if meta_path.exists():
        meta = json.loads(meta_path.read_text())
        if meta.get("pivots") != pivots:
            raise EngineError(f"sidecar pivots {meta.get('pivots')} disagree with rows {pivots}")
    return SpaceBasis(level, weight, precision, tuple(rows), tuple(pivots))


def find_cached(directory: str | Path, level: int, weight: int, min_precision: int) -> SpaceBasis | None:
    """Best cached basis for (N, k) with precision >= min_precision,
    truncated to exactly min_precision (truncation of the canonical basis
    is the canonical basis at the lower precision)."""
    directory = Path(directory)
    if not directory.is_dir():
        return None
    best: SpaceBasis | None = None
    for path in sorted(directory.glob(f"basis_N{level}_k{weight}_B*.mfb")):
        try:
            precision = int(path.stem.rsplit("_B", 1)[1])
        except (IndexError, ValueError):
            continue
        if precision >= min_precision and (best is None or precision < best.precision):
            best = read_basis(path)
    if best is None:
        return None
    if best.precision == min_precision:
        return best
    rows = tuple(QExpansion(r.coeffs[:min_precision], weight, level) for r in best.rows)
    return SpaceBasis(level, weight, min_precision, rows, best.pivots)
