#!/usr/bin/env python3
import argparse
import logging
import os
import shlex
import sys
from dataclasses import dataclass, field
from logging.handlers import TimedRotatingFileHandler
from time import time

from .arguments import parse_direction, parse_seed, to_radians
from .config import OUTPUT_FORMATS, Config, InvalidConfigException
from .quantum import CrossCheckError, ValidationError
from .quantum.spin import Direction, Plane
from .report import Report, write_report

logger = logging.getLogger(__name__)

# Metadata
NAME = "spinlab"
DESCRIPTION = "one- and two-spin quantum mechanics, Bell's inequality and a classical hidden-variable model"
VERSION = "0.2.0"

COMMANDS = (
    "state",
    "measure",
    "discriminate",
    "bell",
    "lhv",
    "scan",
    "singlet-mc",
    "scaling",
    "verify",
)

ANGLE_ARGUMENTS = ("theta", "phi", "theta_ab", "theta_bc", "step", "max_angle")

# Options whose values may start with "-" (e.g. "--b -z")
DIRECTION_OPTIONS = ("--direction", "--a", "--b", "--c")


@dataclass
class ParserArguments:
    command: str = ""
    config_file: str = "config.ini"
    debug: bool = False
    no_input: bool = False
    log_dir: str = "logs"
    seed: int | None = None
    output_format: str | None = None
    output: str | None = None
    degrees: bool = False
    theta: float | None = None
    phi: float | None = None
    theta_ab: float | None = None
    theta_bc: float | None = None
    plane: str | None = None
    direction: Direction | None = None
    a: Direction | None = None
    b: Direction | None = None
    c: Direction | None = None
    shots: int | None = None
    shot_counts: list[int] = field(default_factory=list)
    trials: int | None = None
    step: float | None = None
    max_angle: float | None = None
    claims_file: str | None = None


def _spinlab(config: Config, args: ParserArguments) -> Report:
    logger.debug("Running command %s", config.command)
    match config.command:
        case "state":
            from . import module_state as m
        case "measure":
            from . import module_measure as m
        case "discriminate":
            from . import module_discriminate as m
        case "bell":
            from . import module_bell as m
        case "lhv":
            from . import module_lhv as m
        case "scan":
            from . import module_scan as m
        case "singlet-mc":
            from . import module_singlet_mc as m
        case "scaling":
            from . import module_scaling as m
        case "verify":
            from . import module_verify as m
        case _:
            raise ValueError(f"Unknown command {config.command}")
    return m.main(config=config, args=args)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed",
        dest="seed",
        type=parse_seed,
        help="unsigned 64-bit seed (default from config, else 0)",
    )
    common.add_argument(
        "--format",
        dest="output_format",
        choices=OUTPUT_FORMATS,
        help="result format (default from config, else json)",
    )
    common.add_argument(
        "--output",
        dest="output",
        help="write results to this file instead of standard output",
    )
    common.add_argument(
        "--degrees",
        dest="degrees",
        action="store_true",
        help="read every angle argument in degrees",
    )
    return common


def _add_state_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--theta", type=float, required=required, help="polar angle")
    parser.add_argument("--phi", type=float, required=required, help="azimuth")


def _add_coplanar_arguments(
    parser: argparse.ArgumentParser, required: bool = True
) -> None:
    parser.add_argument("--theta-ab", dest="theta_ab", type=float, required=required)
    parser.add_argument("--theta-bc", dest="theta_bc", type=float, required=required)
    parser.add_argument("--plane", choices=[p.value for p in Plane])


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=NAME, description=f"{NAME}, {DESCRIPTION}")
    parser.add_argument(
        "--no-input",
        dest="no_input",
        action="store_true",
        help="run without stdin and write to a log file",
    )
    parser.add_argument(
        "-c",
        "--config",
        dest="config_file",
        default="config.ini",
        help="use the specified config file",
    )
    parser.add_argument(
        "-L",
        "--log-dir",
        dest="log_dir",
        default="logs",
        help="set the log directory",
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"{NAME} v{VERSION}, {DESCRIPTION}",
    )
    parser.add_argument("--debug", action="store_true", default=False)

    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    sub = commands.add_parser(
        "state", parents=[common], help="amplitudes and z probabilities of |+; theta, phi>"
    )
    _add_state_arguments(sub)

    sub = commands.add_parser(
        "measure", parents=[common], help="sample measurements along a direction"
    )
    _add_state_arguments(sub)
    sub.add_argument("--direction", type=parse_direction, help="default +z")
    sub.add_argument("--shots", type=int)

    sub = commands.add_parser(
        "discriminate",
        parents=[common],
        help="compare a superposition with the mixture of equal z statistics",
    )
    _add_state_arguments(sub, required=False)
    sub.add_argument("--direction", type=parse_direction, help="default +x")
    sub.add_argument("--shots", type=int, help="also sample both ensembles")

    sub = commands.add_parser(
        "bell", parents=[common], help="Bell combination and hidden-variable verdict"
    )
    _add_coplanar_arguments(sub)

    sub = commands.add_parser(
        "lhv", parents=[common], help="hidden-variable feasibility for a triple"
    )
    _add_coplanar_arguments(sub, required=False)
    for name in ("a", "b", "c"):
        sub.add_argument(f"--{name}", type=parse_direction)

    sub = commands.add_parser(
        "scan", parents=[common], help="grid of coplanar Bell combinations"
    )
    sub.add_argument("--step", type=float)
    sub.add_argument("--max-angle", dest="max_angle", type=float)
    sub.add_argument("--plane", choices=[p.value for p in Plane])

    sub = commands.add_parser(
        "singlet-mc", parents=[common], help="sample joint singlet outcomes"
    )
    sub.add_argument("--a", type=parse_direction, required=True)
    sub.add_argument("--b", type=parse_direction, required=True)
    sub.add_argument("--shots", type=int)

    sub = commands.add_parser(
        "scaling", parents=[common], help="estimator error against the number of copies"
    )
    _add_state_arguments(sub, required=False)
    sub.add_argument(
        "--shots", dest="shot_counts", type=int, nargs="+", default=[100, 400, 1600]
    )
    sub.add_argument("--trials", type=int)

    sub = commands.add_parser(
        "verify", parents=[common], help="check quantitative claims from a YAML file"
    )
    sub.add_argument("--claims", dest="claims_file")

    return parser


def _attach_direction_values(argv: list[str]) -> list[str]:
    """
    Rewrite "--b -z" as "--b=-z" so argparse does not read the value as an option.
    """
    attached: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        value = next(tokens, None) if token in DIRECTION_OPTIONS else None
        attached.append(token if value is None else f"{token}={value}")
    return attached


def _load_config(config_file: str) -> Config:
    try:
        return Config.from_file(config_file)
    except InvalidConfigException as e:
        logger.warning("%s; using built-in defaults", e)
        return Config()


def _setup_logging(config: Config, use_log: bool) -> None:
    level = logging.DEBUG if config.debug else logging.INFO
    if use_log:
        os.makedirs(config.log_dir, exist_ok=True)

        log_file = f"{config.log_dir}/spinlab_{config.command}.log"
        logging.basicConfig(
            handlers=[
                TimedRotatingFileHandler(
                    log_file, when="midnight", backupCount=7, encoding="UTF-8"
                )
            ],
            format="%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            level=level,
        )
    else:
        logging.basicConfig(format="%(levelname)s | %(message)s", level=level)
    logging.getLogger(NAME).setLevel(level)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)

    # Parse args
    try:
        args = create_parser().parse_args(
            _attach_direction_values(argv), namespace=ParserArguments()
        )
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    # Load config file
    config_file = os.environ.get("SPINLAB_CONFIG", args.config_file)
    config = _load_config(config_file)

    # Override config with args
    config.debug |= args.debug
    config.command = args.command
    config.log_dir = args.log_dir
    if args.seed is not None:
        config.seed = args.seed
    if args.output_format is not None:
        config.output_format = args.output_format
    for name in ANGLE_ARGUMENTS:
        setattr(args, name, to_radians(getattr(args, name), args.degrees))

    # Start
    use_log = args.no_input
    _setup_logging(config, use_log)

    if use_log:
        logger.info("-" * 60)
    if not config.is_valid:
        logger.warning("Configuration state invalid")
    if config.debug:
        logger.info("DEBUG MODE ENABLED")

    start_time = time()
    try:
        report = _spinlab(config=config, args=args)
        report.version = VERSION
        report.echo = shlex.join([NAME, *argv])
        write_report(report, config.output_format, args.output, sys.stdout)
        exit_code = report.exit_code
    except ValidationError as e:
        logger.error("Invalid input: %s", e)
        exit_code = 2
    except CrossCheckError as e:
        logger.error("Cross-check failed: %s", e)
        exit_code = 3
    except Exception:
        logger.exception("Unknown exception or error")
        exit_code = 1
    end_time = time()

    time_diff = end_time - start_time
    logger.info("Run time: %.6f seconds", time_diff)

    if use_log:
        logger.info("%s%s", "-" * 60, "\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
