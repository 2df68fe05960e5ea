"""Artifact generation and self-checks driven by a :class:`RunConfig`."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import RunConfig
from .gaussian import derived_scales
from .images import build_wedge_images, verify_closure
from .momentum import (
    default_x_max,
    longterm_l1_distance,
    momentum_stats_series,
    position_density,
)
from .observables import auto_grid, expectation_series
from .output import (
    atomic_write,
    dump_images,
    render_heatmap,
    write_density_csv,
    write_manifest,
    write_momentum_csv,
    write_momentum_stats_csv,
    write_position_csv,
    write_series_csv,
)
from .wavefunction import density_grid, psi_wedge, schrodinger_residual


@dataclass
class RunResult:
    files: list[Path]
    notes: list[str] = field(default_factory=list)
    manifest: Path | None = None


def run(
    cfg: RunConfig,
    out_dir=None,
    threads: int = 1,
    outputs: tuple[str, ...] | None = None,
    gamma: float | None = None,
) -> RunResult:
    """Write the requested artifacts and a checksummed manifest.

    Output bytes depend only on the configuration, never on ``threads``.
    """
    out = Path(out_dir if out_dir is not None else cfg.output_dir)
    outputs = cfg.outputs if outputs is None else outputs
    gamma = cfg.gamma if gamma is None else gamma
    files: list[Path] = []
    notes: list[str] = []

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if {"density", "heatmap", "series", "images"} & set(outputs):
            system = cfg.system()
        if "images" in outputs:
            files.append(atomic_write(out / "images.txt", dump_images(cfg.wedge_n, cfg.center)))
        if "density" in outputs or "heatmap" in outputs:
            for i, t in enumerate(cfg.times):
                spec = cfg.grid if cfg.grid is not None else auto_grid(system, t, cfg.k_sigma)
                grid = density_grid(system, spec, t, threads=threads)
                if "density" in outputs:
                    files.append(write_density_csv(grid, out / f"density_{i:03d}.csv"))
                if "heatmap" in outputs:
                    files.append(render_heatmap(grid, out / f"density_{i:03d}.pgm", gamma))
        if "series" in outputs:
            series = expectation_series(system, cfg.times, cfg.k_sigma, threads=threads, spec=cfg.grid)
            files.append(write_series_csv(series, out / "series.csv"))
        if "momentum1d" in outputs or "position1d" in outputs:
            params = cfg.mirror_params()
            if "momentum1d" in outputs:
                stats = momentum_stats_series(params, cfg.times, cfg.n_samples, cfg.p_window)
                for i, md in enumerate(stats):
                    files.append(write_momentum_csv(md, out / f"momentum_{i:03d}.csv", params))
                l1 = [longterm_l1_distance(md, params) for md in stats]
                files.append(write_momentum_stats_csv(stats, out / "momentum_stats.csv", l1))
            if "position1d" in outputs:
                for i, t in enumerate(cfg.times):
                    x, rho = position_density(params, t, default_x_max(params, t))
                    files.append(write_position_csv(x, rho, out / f"position1d_{i:03d}.csv"))
    notes.extend(str(w.message) for w in caught)
    manifest = write_manifest(out, files, notes)
    return RunResult(files, notes, manifest)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def validate(cfg: RunConfig, seed: int = 0) -> list[CheckResult]:
    """Image-group closure, wall vanishing and Schrodinger residual checks."""
    rng = np.random.default_rng(seed)
    results = []

    worst = 0.0
    bad = []
    for n in range(1, 9):
        report = verify_closure(build_wedge_images(n))
        worst = max(worst, report.max_deviation)
        if not report.ok:
            bad.append(f"N={n}: {report.problems[0]}")
    results.append(CheckResult("closure N=1..8", not bad, "; ".join(bad) or f"max deviation {worst:.2e}"))

    system = cfg.system()
    t0 = derived_scales(system.packet.px_params).t0
    theta = system.wedge_angle
    peak = float(abs(psi_wedge(system, *system.packet.center, 0.0, masked=False)))
    r = rng.uniform(0.0, 4.0 * math.hypot(*system.packet.center) + 1.0, 1000)
    wall_max = 0.0
    for t in (0.0, t0, 5 * t0):
        on_first = psi_wedge(system, r, np.zeros_like(r), t, masked=False)
        on_second = psi_wedge(system, r * math.cos(theta), r * math.sin(theta), t, masked=False)
        wall_max = max(wall_max, float(np.max(np.abs(on_first))), float(np.max(np.abs(on_second))))
    ratio = wall_max / peak
    results.append(CheckResult("wall vanishing", ratio < 1e-12, f"max |psi| on walls / peak = {ratio:.2e}"))

    h = 1e-3
    worst_res = 0.0
    cx, cy = system.packet.center
    count = 0
    while count < 100:
        x, y = rng.normal(cx, 1.5 * system.packet.px_params.beta, 2)
        # stay clear of the walls by more than the stencil
        if y < 2 * h or math.sin(theta) * x - math.cos(theta) * y < 2 * h:
            continue
        t = rng.uniform(0.0, 5.0 * t0)
        worst_res = max(worst_res, schrodinger_residual(system, x, y, t, h))
        count += 1
    results.append(
        CheckResult("schrodinger residual", worst_res < 1e-5 * peak, f"max residual / peak = {worst_res / peak:.2e}")
    )
    return results
