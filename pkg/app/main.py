"""
Command-line front end.

Usage:
    python -m app.main run config/studies/benchmark_vibration.cfg --out results/run.csv
    python -m app.main sweep config/studies/cutout_radius.cfg --workers 4 --out results/r_over_a.csv
    python -m app.main validate --mesh 20 20

Exit codes: 0 success, 2 config error, 3 solver / geometry / material
error, 4 instability under the hygrothermal preload.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config_parser import ConfigError, load_config
from app.logging_config import setup_logging
from app.models import RunConfig
from app.results_csv import write_results
from app.sweep import run_sweep
from app.validation import run_validation
from pipeline.errors import InstabilityError, PlateAnalysisError
from pipeline.models import ReferenceCache
from pipeline.xfem_pipeline import PlateAnalysisPipeline

logger = logging.getLogger("hygro_xfem")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_INSTABILITY = 4

DEFAULT_DUMP_DIR = "fields"


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    if not args.mesh:
        return config
    nx, ny = args.mesh
    sweep = {k: v for k, v in config.sweep.items() if k not in ("nx", "ny")}
    return RunConfig.model_validate({**config.model_dump(), "nx": nx, "ny": ny, "sweep": sweep})


def _dump_dir(args: argparse.Namespace) -> Optional[str]:
    if not args.dump_fields:
        return None
    if args.out and args.out != "-":
        return os.path.join(os.path.dirname(os.path.abspath(args.out)), DEFAULT_DUMP_DIR)
    return DEFAULT_DUMP_DIR


def cmd_run(args: argparse.Namespace) -> int:
    config = _apply_overrides(load_config(args.config), args)
    if config.is_sweep:
        raise ConfigError(
            f"config sweeps {', '.join(config.sweep)}; use the 'sweep' command", source=args.config
        )
    case = config.to_case()
    result = PlateAnalysisPipeline(dump_dir=_dump_dir(args)).process(case)
    write_results(args.out, result.rows(), append=args.append)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _apply_overrides(load_config(args.config), args)
    prefix = os.path.splitext(os.path.basename(args.config))[0]
    rows = run_sweep(config.plan(prefix=prefix), workers=args.workers, dump_dir=_dump_dir(args))
    write_results(args.out, rows, append=args.append)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    kwargs = {"workers": args.workers}
    if args.mesh:
        nx, ny = args.mesh
        if nx != ny:
            raise ConfigError(f"the benchmark grid is square, got --mesh {nx} {ny}", source="--mesh")
        kwargs["meshes"] = (nx,)
    report = run_validation(**kwargs)
    print(report.render())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hygro-xfem",
        description="Vibration and buckling of laminated plates with cutouts under hygrothermal load",
    )
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--log-file", default=None, help="Also write the log to this file")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mesh", nargs=2, type=int, metavar=("NX", "NY"), help="Override the mesh")
    common.add_argument("--workers", type=int, default=1, help="Worker pool size")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", default=None, help="CSV output path (stdout when omitted)")
    output.add_argument("--append", action="store_true", help="Append rows to an existing CSV")
    output.add_argument("--dump-fields", action="store_true", help="Write VTK dumps of φ and mode shapes")

    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common, output], help="Run a single case")
    run.add_argument("config", help="Config file")
    run.set_defaults(handler=cmd_run)

    sweep = sub.add_parser("sweep", parents=[common, output], help="Run a parametric sweep")
    sweep.add_argument("config", help="Config file")
    sweep.set_defaults(handler=cmd_sweep)

    validate = sub.add_parser("validate", parents=[common], help="Reproduce the cross-ply benchmark grid")
    validate.set_defaults(handler=cmd_validate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(log_level=getattr(logging, args.log_level), log_file=args.log_file)

    try:
        return args.handler(args)
    except (ConfigError, ValidationError) as e:
        logger.error(f"❌ Config error: {e}")
        return EXIT_CONFIG
    except OSError as e:
        logger.error(f"❌ Cannot read or write: {e}")
        return EXIT_CONFIG
    except InstabilityError as e:
        logger.error(f"❌ Instability: {e}")
        return EXIT_INSTABILITY
    except PlateAnalysisError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_SOLVER
    finally:
        ReferenceCache.cleanup()


if __name__ == "__main__":
    sys.exit(main())
