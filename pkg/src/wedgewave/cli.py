"""``wedgewave`` command line.

Exit codes: 0 success, 2 configuration error, 3 failed validation, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .config import MAX_WEDGE_N, ConfigError, RunConfig, load_run_config
from .output import dump_images

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATE, EXIT_IO = 0, 2, 3, 4


def _probe(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from None
    return x, y


def _wedge_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 1 <= n <= MAX_WEDGE_N:
        raise argparse.ArgumentTypeError(f"N must be in 1..{MAX_WEDGE_N}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wedgewave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("images", help="list the signed image transforms for the pi/N wedge")
    p.add_argument("n", type=_wedge_n)
    p.add_argument("--probe", type=_probe, default=None, help="point x,y whose images are listed")

    for name, help_ in (
        ("run", "density grids and heatmaps (plus any other artifacts in the config)"),
        ("expect", "expectation-value series CSV"),
        ("momentum1d", "half-line momentum densities and statistics"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("config")
        p.add_argument("--out", default=None, help="output directory (overrides the config)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--gamma", type=float, default=None)

    p = sub.add_parser("validate", help="closure, boundary and residual self-checks")
    p.add_argument("config", nargs="?", default=None)
    return parser


def _fig2_config() -> RunConfig:
    return RunConfig(wedge_n=3, center=(5.0, 3.0), times=(0.0, 5.0, 10.0, 15.0))


def main(argv=None) -> int:
    from .runner import run, validate

    args = build_parser().parse_args(argv)

    if args.command == "images":
        sys.stdout.write(dump_images(args.n, args.probe))
        return EXIT_OK

    try:
        cfg = load_run_config(args.config) if args.config else _fig2_config()
    except ConfigError as exc:
        print(f"wedgewave: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"wedgewave: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "validate":
        results = validate(cfg)
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}")
        return EXIT_OK if all(r.ok for r in results) else EXIT_VALIDATE

    if args.gamma is not None and not args.gamma > 0:
        print("wedgewave: --gamma must be positive", file=sys.stderr)
        return EXIT_CONFIG
    outputs = {
        "run": None,
        "expect": ("series",),
        "momentum1d": tuple(a for a in ("momentum1d", "position1d") if a in cfg.outputs) or ("momentum1d",),
    }[args.command]
    try:
        result = run(cfg, out_dir=args.out, threads=max(1, args.threads), outputs=outputs, gamma=args.gamma)
    except ConfigError as exc:
        print(f"wedgewave: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"wedgewave: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)
    print(f"wrote {len(result.files)} files; manifest {result.manifest}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
