"""Command line entry point.

    worstload worst|kkl|compare --config <path|preset> [--out DIR] [--mesh PATH]
                                [--threads K] [--set section.key=value ...]

Exit codes: 0 success, 2 config error, 3 mesh error, 4 solver error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from threadpoolctl import threadpool_limits

from .config import OUT_ENV, load_config, preset_names, resolve_output_dir
from .errors import ConfigError, MeshError, SolverError
from .runs import run_compare, run_kkl, run_worst_case

EXIT_OK, EXIT_CONFIG, EXIT_MESH, EXIT_SOLVER = 0, 2, 3, 4

COMMANDS = {"worst": run_worst_case, "kkl": run_kkl, "compare": run_compare}


def build_parser():
    p = argparse.ArgumentParser(
        prog="worstload",
        description="Worst-case boundary loads and expected energy concentration "
                    "for antiplane shear.",
        epilog=f"Presets: {', '.join(preset_names())}. "
               f"Default output directory comes from ${OUT_ENV}.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, help="config file or bundled preset name")
    p.add_argument("--out", help="output directory")
    p.add_argument("--mesh", help="mesh file overriding the config's mesh source")
    p.add_argument("--threads", type=int, help="limit BLAS threads")
    p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                   help="override a config value (repeatable)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config, overrides=args.set)
        if args.mesh:
            cfg.mesh_file, cfg.generator, cfg.generator_args = args.mesh, None, {}
        if args.threads is not None and args.threads < 1:
            raise ConfigError("--threads must be at least 1")
        out = resolve_output_dir(cfg, args.out)
        with threadpool_limits(limits=args.threads):
            report = COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MeshError as exc:
        print(f"mesh error: {exc}", file=sys.stderr)
        return EXIT_MESH
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except FileNotFoundError as exc:
        print(f"mesh error: {exc}", file=sys.stderr)
        return EXIT_MESH

    parts = [f"{report.name}:"]
    if report.V is not None:
        parts.append(f"V={report.V:.6g}")
    if report.p_bar is not None:
        parts.append(f"P_bar_N={report.p_bar:.6g}")
    if report.ratio is not None:
        parts.append(f"ratio={report.ratio:.4g}")
    print(" ".join(parts))
    print(f"wrote {len(report.files)} files to {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
