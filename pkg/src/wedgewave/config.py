"""Run configuration: an INI-style ``key = value`` document with sections.

Example::

    [wedge]
    n = 3

    [packet]
    center = 5, 3
    momentum = 0, 0
    beta = 1
    m = 1
    hbar = 1

    [times]
    values = 0, 5, 10, 15

    [grid]
    x = 0, 12, 241        # min, max, samples; omit x/y for an automatic grid
    y = 0, 10, 201

    [output]
    artifacts = density, heatmap
    dir = fig2_out
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass

from .wavefunction import GridSpec

ARTIFACTS = ("density", "heatmap", "series", "momentum1d", "position1d", "images")
MAX_WEDGE_N = 64

_SCHEMA = {
    "wedge": {"n"},
    "packet": {"center", "momentum", "beta", "m", "hbar"},
    "times": {"values"},
    "grid": {"x", "y", "k_sigma"},
    "output": {"artifacts", "dir", "gamma"},
    "momentum1d": {"x0", "n_samples", "p_window"},
}
_REQUIRED = {("wedge", "n"), ("packet", "center"), ("times", "values")}


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(key)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class RunConfig:
    wedge_n: int
    center: tuple[float, float]
    times: tuple[float, ...]
    momentum: tuple[float, float] = (0.0, 0.0)
    beta: float = 1.0
    m: float = 1.0
    hbar: float = 1.0
    grid: GridSpec | None = None
    k_sigma: float = 8.0
    outputs: tuple[str, ...] = ("density", "heatmap")
    output_dir: str = "out"
    gamma: float = 1.0
    mirror_x0: float | None = None
    n_samples: int = 2**16
    p_window: float | None = None

    def packet(self):
        from .gaussian import GaussianPacket2D

        return GaussianPacket2D.from_center(
            self.center[0], self.center[1], self.momentum[0], self.momentum[1],
            self.beta, self.m, self.hbar,
        )

    def system(self):
        from .images import WedgeSystem

        return WedgeSystem.build(self.wedge_n, self.packet())

    def mirror_params(self):
        from .gaussian import PacketParams1D

        if self.mirror_x0 is None:
            raise ConfigError("momentum1d output needs [momentum1d] x0", key="momentum1d.x0")
        return PacketParams1D(self.mirror_x0, 0.0, self.beta, self.m, self.hbar)


def _key_lines(text: str) -> dict[tuple[str, str], int]:
    lines = {}
    section = None
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        m = re.fullmatch(r"\[([^\]]+)\]", s)
        if m:
            section = m.group(1).strip().lower()
        elif section and s and s[0] not in "#;":
            key = re.split(r"[=:]", s, maxsplit=1)[0].strip().lower()
            lines.setdefault((section, key), no)
    return lines


def _floats(value: str, key: str, line, count: int | None = None) -> tuple[float, ...]:
    try:
        out = tuple(float(v) for v in value.split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {value!r}", line, key) from None
    if count is not None and len(out) != count:
        raise ConfigError(f"expected {count} values, got {len(out)}", line, key)
    if not all(math.isfinite(v) for v in out):
        raise ConfigError("values must be finite", line, key)
    return out


def parse_run_config(text: str) -> RunConfig:
    """Parse and validate a configuration document.

    Raises :class:`ConfigError` carrying the line number and/or the
    offending ``section.key``.
    """
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"), empty_lines_in_values=False
    )
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("key outside of any [section]", exc.lineno) from None
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ConfigError("syntax error", lineno) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", exc.lineno) from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError("duplicate key", exc.lineno, f"{exc.section}.{exc.option}") from None

    lines = _key_lines(text)
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError("unknown key", lines.get((section, key)), f"{section}.{key}")
    for section, key in sorted(_REQUIRED):
        if not parser.has_option(section, key):
            raise ConfigError("missing required key", key=f"{section}.{key}")

    def get(section, key):
        return parser.get(section, key, fallback=None)

    def line(section, key):
        return lines.get((section, key))

    def positive(section, key, default):
        raw = get(section, key)
        if raw is None:
            return default
        (value,) = _floats(raw, f"{section}.{key}", line(section, key), 1)
        if value <= 0:
            raise ConfigError(f"must be positive, got {value:g}", line(section, key), f"{section}.{key}")
        return value

    raw_n = get("wedge", "n")
    try:
        wedge_n = int(raw_n)
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw_n!r}", line("wedge", "n"), "wedge.n") from None
    if not 1 <= wedge_n <= MAX_WEDGE_N:
        raise ConfigError(f"must be in 1..{MAX_WEDGE_N}, got {wedge_n}", line("wedge", "n"), "wedge.n")

    center = _floats(get("packet", "center"), "packet.center", line("packet", "center"), 2)
    momentum = (0.0, 0.0)
    if get("packet", "momentum") is not None:
        momentum = _floats(get("packet", "momentum"), "packet.momentum", line("packet", "momentum"), 2)
    beta = positive("packet", "beta", 1.0)
    m = positive("packet", "m", 1.0)
    hbar = positive("packet", "hbar", 1.0)

    times = _floats(get("times", "values"), "times.values", line("times", "values"))
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ConfigError("times must be strictly increasing", line("times", "values"), "times.values")

    grid = None
    gx, gy = get("grid", "x"), get("grid", "y")
    if (gx is None) != (gy is None):
        raise ConfigError("explicit grid needs both x and y", key="grid.x" if gx is None else "grid.y")
    if gx is not None:
        x = _floats(gx, "grid.x", line("grid", "x"), 3)
        y = _floats(gy, "grid.y", line("grid", "y"), 3)
        for name, vals in (("grid.x", x), ("grid.y", y)):
            if not vals[2].is_integer():
                raise ConfigError("sample count must be an integer", key=name)
        try:
            grid = GridSpec(x[0], x[1], y[0], y[1], int(x[2]), int(y[2]))
        except ValueError as exc:
            raise ConfigError(str(exc), line("grid", "x"), "grid") from None
    k_sigma = positive("grid", "k_sigma", 8.0)
    if k_sigma < 6:
        raise ConfigError("must be >= 6", line("grid", "k_sigma"), "grid.k_sigma")

    outputs = ("density", "heatmap")
    if get("output", "artifacts") is not None:
        outputs = tuple(a.strip() for a in get("output", "artifacts").split(",") if a.strip())
        for a in outputs:
            if a not in ARTIFACTS:
                raise ConfigError(f"unknown artifact {a!r}", line("output", "artifacts"), "output.artifacts")
    output_dir = get("output", "dir") or "out"
    gamma = positive("output", "gamma", 1.0)

    mirror_x0 = None
    if get("momentum1d", "x0") is not None:
        (mirror_x0,) = _floats(get("momentum1d", "x0"), "momentum1d.x0", line("momentum1d", "x0"), 1)
        if mirror_x0 <= 0:
            raise ConfigError("must be positive", line("momentum1d", "x0"), "momentum1d.x0")
    n_samples = 2**16
    if get("momentum1d", "n_samples") is not None:
        raw = get("momentum1d", "n_samples")
        if not raw.isdigit() or int(raw) < 2**12 or int(raw) & (int(raw) - 1):
            raise ConfigError("must be a power of two >= 4096", line("momentum1d", "n_samples"),
                              "momentum1d.n_samples")
        n_samples = int(raw)
    p_window = positive("momentum1d", "p_window", None)

    return RunConfig(
        wedge_n=wedge_n,
        center=center,
        times=times,
        momentum=momentum,
        beta=beta,
        m=m,
        hbar=hbar,
        grid=grid,
        k_sigma=k_sigma,
        outputs=outputs,
        output_dir=output_dir,
        gamma=gamma,
        mirror_x0=mirror_x0,
        n_samples=n_samples,
        p_window=p_window,
    )


def format_run_config(cfg: RunConfig) -> str:
    """Serialize so that ``parse_run_config(format_run_config(c)) == c``."""
    r = repr
    out = [
        "[wedge]",
        f"n = {cfg.wedge_n}",
        "",
        "[packet]",
        f"center = {r(cfg.center[0])}, {r(cfg.center[1])}",
        f"momentum = {r(cfg.momentum[0])}, {r(cfg.momentum[1])}",
        f"beta = {r(cfg.beta)}",
        f"m = {r(cfg.m)}",
        f"hbar = {r(cfg.hbar)}",
        "",
        "[times]",
        "values = " + ", ".join(r(t) for t in cfg.times),
        "",
        "[grid]",
    ]
    if cfg.grid is not None:
        g = cfg.grid
        out.append(f"x = {r(g.x_min)}, {r(g.x_max)}, {g.nx}")
        out.append(f"y = {r(g.y_min)}, {r(g.y_max)}, {g.ny}")
    out += [
        f"k_sigma = {r(cfg.k_sigma)}",
        "",
        "[output]",
        "artifacts = " + ", ".join(cfg.outputs),
        f"dir = {cfg.output_dir}",
        f"gamma = {r(cfg.gamma)}",
        "",
        "[momentum1d]",
        f"n_samples = {cfg.n_samples}",
    ]
    if cfg.mirror_x0 is not None:
        out.append(f"x0 = {r(cfg.mirror_x0)}")
    if cfg.p_window is not None:
        out.append(f"p_window = {r(cfg.p_window)}")
    return "\n".join(out) + "\n"


def load_run_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_run_config(fh.read())
