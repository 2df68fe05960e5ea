"""Plain-text artifact formats: density CSVs, series CSVs, graymaps, manifests."""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

import numpy as np

from .images import ImageTerm, build_wedge_images
from .momentum import MomentumDensity1D, longterm_momentum_density
from .observables import ExpectationSeries
from .wavefunction import DensityGrid, GridSpec


def fmt(v: float) -> str:
    # 17 significant digits round-trip any double.
    return format(float(v), ".17g")


def atomic_write(path, data: bytes | str) -> Path:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def density_csv_text(grid: DensityGrid) -> str:
    s = grid.spec
    lines = [
        f"# t={fmt(grid.t)}",
        f"# x: {fmt(s.x_min)} {fmt(s.x_max)} {s.nx}",
        f"# y: {fmt(s.y_min)} {fmt(s.y_max)} {s.ny}",
    ]
    # One row per y sample, x increasing along the row.
    for j in range(s.ny):
        lines.append(" ".join(fmt(v) for v in grid.values[:, j]))
    return "\n".join(lines) + "\n"


def write_density_csv(grid: DensityGrid, path) -> Path:
    return atomic_write(path, density_csv_text(grid))


def read_density_csv(path) -> DensityGrid:
    with open(path, encoding="utf-8") as fh:
        header = [fh.readline().strip() for _ in range(3)]
        rows = [line.split() for line in fh if line.strip()]
    if not (header[0].startswith("# t=") and header[1].startswith("# x:") and header[2].startswith("# y:")):
        raise ValueError(f"{path}: not a density file")
    t = float(header[0][4:])
    x0, x1, nx = header[1][4:].split()
    y0, y1, ny = header[2][4:].split()
    spec = GridSpec(float(x0), float(x1), float(y0), float(y1), int(nx), int(ny))
    values = np.array(rows, dtype=float).T
    if values.shape != (spec.nx, spec.ny):
        raise ValueError(f"{path}: expected {spec.nx}x{spec.ny} samples, got {values.shape}")
    return DensityGrid(spec, t, values)


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_series_csv(series: ExpectationSeries, path) -> Path:
    return atomic_write(path, _csv_text(ExpectationSeries.COLUMNS, series.as_array()))


def read_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        data = np.array([line.split(",") for line in fh if line.strip()], dtype=float)
    return header, data.reshape(-1, len(header))


def write_momentum_csv(md: MomentumDensity1D, path, params=None) -> Path:
    """``p,density`` pairs, plus the long-time envelope when ``params`` is given."""
    if params is None:
        return atomic_write(path, _csv_text(("p", "density"), zip(md.p_samples, md.density)))
    lt = longterm_momentum_density(params, md.p_samples)
    return atomic_write(path, _csv_text(("p", "density", "longterm"), zip(md.p_samples, md.density, lt)))


def write_momentum_stats_csv(series: list[MomentumDensity1D], path, l1=None) -> Path:
    header = ["t", "mean_p", "spread_p", "mean_p2"]
    rows = [[md.t, md.mean_p, md.spread_p, md.mean_p2] for md in series]
    if l1 is not None:
        header.append("l1_longterm")
        rows = [row + [d] for row, d in zip(rows, l1)]
    return atomic_write(path, _csv_text(header, rows))


def write_position_csv(x, density, path) -> Path:
    return atomic_write(path, _csv_text(("x", "density"), zip(x, density)))


def heatmap_bytes(grid: DensityGrid, gamma: float = 1.0) -> bytes:
    """16-bit binary graymap of ``(density / max) ** gamma``; y increases upward."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    values = np.asarray(grid.values, dtype=float)
    peak = values.max()
    if peak > 0:
        scaled = np.rint((values / peak) ** gamma * 65535.0)
    else:
        scaled = np.zeros_like(values)
    image = scaled.T[::-1].astype(">u2")
    nx, ny = values.shape
    return f"P5\n{nx} {ny}\n65535\n".encode("ascii") + image.tobytes()


def render_heatmap(grid: DensityGrid, path, gamma: float = 1.0) -> Path:
    return atomic_write(path, heatmap_bytes(grid, gamma))


def read_pgm(path) -> np.ndarray:
    """Pixel array (rows top to bottom) of a file written by :func:`render_heatmap`."""
    data = Path(path).read_bytes()
    magic, dims, maxval, body = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"65535":
        raise ValueError(f"{path}: not a 16-bit P5 graymap")
    nx, ny = (int(v) for v in dims.split())
    return np.frombuffer(body, dtype=">u2").reshape(ny, nx)


def dump_images(n_wedge: int, probe: tuple[float, float] | None = None) -> str:
    """One line per image term: ``sign a b c d image_x image_y``.

    The term ``psi(Q r)`` is centered at ``Q^T`` applied to the probe, which is
    the image-charge location in the mirror construction.  The default probe
    is the unit point on the wedge bisector.
    """
    import math

    if probe is None:
        half = math.pi / (2 * n_wedge)
        probe = (math.cos(half), math.sin(half))
    terms: list[ImageTerm] = build_wedge_images(n_wedge)
    lines = []
    for term in terms:
        q = term.isometry
        ix, iy = q.transpose().apply(*probe)
        lines.append(" ".join([f"{term.sign:+d}"] + [fmt(v) for v in (q.a, q.b, q.c, q.d, ix, iy)]))
    return "\n".join(lines) + "\n"


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out_dir, files, notes=()) -> Path:
    """``sha256  name`` lines (``sha256sum -c`` compatible) plus ``# note:`` lines."""
    out_dir = Path(out_dir)
    lines = [f"# note: {n}" for n in notes]
    for f in sorted(Path(f).relative_to(out_dir).as_posix() for f in files):
        lines.append(f"{sha256_file(out_dir / f)}  {f}")
    return atomic_write(out_dir / "manifest.txt", "\n".join(lines) + "\n")


def read_manifest(path) -> dict[str, str]:
    entries = {}
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        digest, name = line.split("  ", 1)
        entries[name] = digest
    return entries
