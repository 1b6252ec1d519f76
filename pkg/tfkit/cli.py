"""Exposes the `tfkit` command-line front end.

Subcommands:

    gen     writes a test signal
    tfd     writes the time-frequency distribution of a signal
    amb     writes the (filtered) ambiguity function of a signal
    report  writes the uncertainty report of a signal
    sl2     applies an SL(2, R) matrix or generator word to a signal

Exit codes: 0 on success, 2 on usage or validation errors, 3 on numerical
failures. The TFKIT_TOL environment variable overrides the inequality slack.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from ._shared.utils import format_float
from .ambiguity import ambiguity_from_wvd, apply_kernel
from .config import TfkitConfig
from .errors import NumericalError
from .io import (
    FORMATS,
    dump_json,
    format_ambgrid,
    format_signal,
    format_tfgrid,
    read_signal,
)
from .kernels import parse_kernel
from .moments import uncertainty_report
from .signal import SignalKind, SignalSpec, generate
from .symplectic import GeneratorWord, SL2Matrix, act_word, factor, verify_action
from .tfd import compute_tfd
from .wigner import wvd

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

_SPEC_PARAMETERS = (
    "width",
    "rate",
    "center_time",
    "center_frequency",
    "separation",
    "frequency_separation",
    "t0",
)


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser of the `tfkit` command."""
    parser = argparse.ArgumentParser(
        prog="tfkit",
        description="Time-frequency distributions, uncertainty checks and symplectic actions.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="write a test signal")
    gen.add_argument("--kind", required=True, choices=[kind.value for kind in SignalKind])
    gen.add_argument("--n", type=int, help="number of samples (even)")
    gen.add_argument("--fs", type=float, help="sample rate in Hz")
    gen.add_argument("--width", type=float, help="Gaussian width in s")
    gen.add_argument("--rate", type=float, help="chirp rate in Hz/s")
    gen.add_argument("--center-time", type=float, help="center time in s")
    gen.add_argument("--center-frequency", type=float, help="center frequency in Hz")
    gen.add_argument("--separation", type=float, help="component separation (s, or Hz for two_tone)")
    gen.add_argument("--frequency-separation", type=float, help="two_component frequency separation in Hz")
    gen.add_argument("--t0", type=float, help="time of the first sample (default: centered grid)")
    gen.add_argument("--path", help="signal file, for --kind from_file")
    _add_output(gen)
    gen.set_defaults(handler=cmd_gen)

    tfd = commands.add_parser("tfd", help="write the time-frequency distribution of a signal")
    tfd.add_argument("signal", help="signal file")
    tfd.add_argument("--kernel", default="wigner", help="name[:key=value,...]")
    tfd.add_argument("--f-start", type=float, help="first frequency of the band (default: centered)")
    _add_output(tfd)
    tfd.set_defaults(handler=cmd_tfd)

    amb = commands.add_parser("amb", help="write the ambiguity function of a signal")
    amb.add_argument("signal", help="signal file")
    amb.add_argument("--kernel", default="wigner", help="name[:key=value,...]")
    _add_output(amb)
    amb.set_defaults(handler=cmd_amb)

    report = commands.add_parser("report", help="write the uncertainty report of a signal")
    report.add_argument("signal", help="signal file")
    report.add_argument("--kernel", default="wigner", help="name[:key=value,...]")
    report.add_argument("--t0", type=float, help="reference time (default: the mean)")
    report.add_argument("--f0", type=float, help="reference frequency (default: the mean)")
    _add_output(report, default_format="json")
    report.set_defaults(handler=cmd_report)

    sl2 = commands.add_parser("sl2", help="apply an SL(2, R) action to a signal")
    sl2.add_argument("signal", help="signal file")
    action = sl2.add_mutually_exclusive_group(required=True)
    action.add_argument("--word", help='generator word e.g. "J,T(2.0),M(0.5)"')
    action.add_argument("--matrix", help="matrix entries a,b,c,d")
    sl2.add_argument("--verify", action="store_true", help="print the covariance verification as JSON")
    _add_output(sl2)
    sl2.set_defaults(handler=cmd_sl2)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Runs the `tfkit` command.

    Args:
        argv: the arguments, without the program name (default: sys.argv[1:])

    Returns:
        the exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        args.config = TfkitConfig.from_env()
        if args.command == "gen":
            _check_gen_args(parser, args)
        if args.command == "sl2" and args.verify and args.output in (None, "-"):
            parser.error("sl2 --verify needs -o for the transformed signal")
        return args.handler(args)
    except NumericalError as exp:
        logger.error("%s", exp)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exp:
        logger.error("%s", exp)
        return EXIT_INVALID


def cmd_gen(args: argparse.Namespace) -> int:
    """Writes a generated signal."""
    parameters = {key: getattr(args, key) for key in _SPEC_PARAMETERS if getattr(args, key) is not None}
    spec = SignalSpec(
        kind=args.kind,
        parameters=parameters,
        n=args.n,
        sample_rate=args.fs,
        path=args.path,
    )
    _emit(format_signal(generate(spec), args.format), args.output)
    return EXIT_OK


def cmd_tfd(args: argparse.Namespace) -> int:
    """Writes the distribution of a signal for the chosen kernel."""
    signal = read_signal(args.signal)
    kernel = parse_kernel(args.kernel, like=signal)
    grid = compute_tfd(signal, kernel, f_start=args.f_start, config=args.config)
    _emit(format_tfgrid(grid, args.format), args.output)
    return EXIT_OK


def cmd_amb(args: argparse.Namespace) -> int:
    """Writes the ambiguity function of a signal, filtered by the chosen kernel."""
    signal = read_signal(args.signal)
    kernel = parse_kernel(args.kernel, like=signal)
    grid = apply_kernel(ambiguity_from_wvd(wvd(signal)), kernel)
    _emit(format_ambgrid(grid, args.format), args.output)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    """Writes the uncertainty report of a signal."""
    signal = read_signal(args.signal)
    kernel = parse_kernel(args.kernel, like=signal)
    report = uncertainty_report(signal, kernel, t0=args.t0, f0=args.f0, config=args.config)
    if args.format == "json":
        _emit(dump_json(report), args.output)
    else:
        rows = _flatten(report.model_dump(mode="json", by_alias=True))
        _emit("".join(f"{key},{value}\n" for key, value in rows.items()), args.output)
    return EXIT_OK


def cmd_sl2(args: argparse.Namespace) -> int:
    """Applies a generator word or a matrix to a signal."""
    signal = read_signal(args.signal)
    if args.word is not None:
        word = GeneratorWord.parse(args.word)
    else:
        word = factor(SL2Matrix.from_array(_parse_matrix(args.matrix)))
    logger.info("applying the word %r", str(word))

    _emit(format_signal(act_word(signal, word, config=args.config), args.format), args.output)
    if args.verify:
        _emit(dump_json(verify_action(signal, word, config=args.config)), "-")
    return EXIT_OK


def _add_output(parser: argparse.ArgumentParser, default_format: str = "csv"):
    parser.add_argument("-o", "--output", help="output file (default: stdout)")
    parser.add_argument("--format", choices=FORMATS, default=default_format)


def _check_gen_args(parser: argparse.ArgumentParser, args: argparse.Namespace):
    if args.kind == SignalKind.FROM_FILE.value:
        if args.path is None:
            parser.error("--kind from_file needs --path")
        return
    missing = [flag for flag, value in (("--n", args.n), ("--fs", args.fs)) if value is None]
    if missing:
        parser.error(f"--kind {args.kind} needs {' and '.join(missing)}")


def _parse_matrix(text: str) -> List[float]:
    try:
        entries = [float(entry) for entry in text.split(",")]
    except ValueError:
        raise ValueError(f"matrix entries should be numbers, got {text!r}")
    if len(entries) != 4:
        raise ValueError(f"a matrix needs 4 entries a,b,c,d, got {len(entries)}")
    return entries


def _flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    rows = {}
    for key, value in data.items():
        if isinstance(value, dict):
            rows.update(_flatten(value, f"{prefix}{key}."))
        else:
            rows[f"{prefix}{key}"] = format_float(value) if isinstance(value, float) else value
    return rows


def _emit(text: str, output: Optional[str]):
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(output, "w") as file:
            file.write(text)


if __name__ == "__main__":
    sys.exit(main())
