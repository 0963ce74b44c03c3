"""Command-line front end.

    simulate anneal   --config cfg.yaml --out out/
    simulate spectrum --config cfg.yaml --out out/
    simulate sweep    --config cfg.yaml --out out/
    simulate preset   fig3 --out out/fig3

Exit codes: 0 success, 2 configuration error, 3 numerical-tolerance failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, parse_config, with_overrides
from .experiments import PRESET_NAMES, run_config, run_preset
from .linalg import ToleranceError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--frame", choices=("lab", "rwa"), help="override run.frame")
    parser.add_argument("--steps", type=int, help="override run.n_steps")
    parser.add_argument(
        "--rate-convention", choices=("angular", "plain"),
        help="how gamma_hz is read: angular multiplies by 2*pi, plain is a bare rate",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Bifurcation-anneal simulator for dipolar spin-1 chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in ("anneal", "spectrum", "sweep"):
        p = sub.add_parser(mode, help=f"run the {mode} pipeline from a config file")
        p.add_argument("--config", required=True, help="YAML config path")
        _add_common(p)
    p = sub.add_parser("preset", help="run a stored figure preset")
    p.add_argument("name", choices=PRESET_NAMES)
    _add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "preset":
            manifest = run_preset(args.name, args.out, frame=args.frame, n_steps=args.steps)
        else:
            cfg = parse_config(args.config)
            cfg = with_overrides(
                cfg, frame=args.frame, n_steps=args.steps,
                rate_convention=args.rate_convention, mode=args.command,
            )
            manifest = run_config(cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ToleranceError as exc:
        print(f"numerical tolerance failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"wrote {manifest}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
