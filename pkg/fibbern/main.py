"""
Main entry point for the identity verification system.
"""
import argparse
import sys
import os
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from fibbern.flow import create_ledger_flow, create_series_flow, create_verification_flow
from fibbern.nodes import resolve_ids
from fibbern.utils import (
    CliConfig,
    FunctionalEquation,
    ParameterError,
    akiyama_tanigawa,
    bernoulli_number,
    bernoulli_numbers,
    fib,
    fib_naive,
    get_run_setting,
    get_series_order,
    golden_value,
    load_grid_spec,
    lucas,
    lucas_naive,
    parse_quad,
    render_table,
    save_report,
)
from fibbern.utils import bernoulli as bernoulli_module
from fibbern.utils import sequences as sequences_module

from dotenv import load_dotenv
load_dotenv()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

TABLE_SEQUENCES = ("bernoulli", "fib", "lucas", "bernoulli-alpha", "akiyama")


class UsageError(Exception):
    """Invalid flag value detected after argparse accepted the syntax."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None) -> None:
    """
    Configure logging to the console and, optionally, a file.

    The console handler writes to stderr so that reports on stdout stay clean.

    Args:
        log_level: Level name (DEBUG, INFO, WARNING, ...)
        log_file: Optional path of a log file
    """
    level = getattr(logging, str(log_level).upper(), logging.INFO)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove any existing handlers to avoid duplicate logs
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(level)
        file_formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S"
        )
        file_handler.setFormatter(file_formatter)
        root_logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_formatter = logging.Formatter(
        "%(levelname)s - %(message)s"
    )
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)


def _setting(key: str, default: Any) -> Any:
    """[run] setting from the config file, or ``default`` when there is no file."""
    try:
        return get_run_setting(key, default)
    except FileNotFoundError:
        return default


def _resolve_jobs(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        jobs, flag = flag_value, "--jobs"
    elif os.getenv("FIBBERN_JOBS"):
        flag = "FIBBERN_JOBS"
        try:
            jobs = int(os.environ["FIBBERN_JOBS"])
        except ValueError:
            raise UsageError(flag, f"not an integer: {os.environ['FIBBERN_JOBS']!r}")
    else:
        jobs, flag = int(_setting("jobs", 1)), "[run] jobs"
    if jobs < 1:
        raise UsageError(flag, f"must be at least 1, got {jobs}")
    return jobs


def _parse_m_range(text: Optional[str]) -> Tuple[Optional[int], Optional[int]]:
    if text is None:
        return None, None
    try:
        low, high = (int(part) for part in text.split(":"))
    except ValueError:
        raise UsageError("--m-range", f"expected A:B with integers, got {text!r}")
    return low, high


def _emit(content: str, out: Optional[str]) -> None:
    if out:
        save_report(content, out)
    else:
        sys.stdout.write(content)


def run_verify(args: argparse.Namespace) -> int:
    """
    Run the grid verification flow.

    Returns:
        0 when every verdict is Equal or NotApplicable (and the oracle agrees), 1 otherwise
    """
    try:
        ids = resolve_ids(args.ids)
    except ParameterError as e:
        raise UsageError("--ids", str(e))

    m_min, m_max = _parse_m_range(args.m_range)
    overrides = {"n_max": args.n_max, "j_max": args.j_max, "m_min": m_min, "m_max": m_max, "q_max": args.q_max}
    try:
        grid = load_grid_spec(overrides)
    except ValidationError as e:
        raise UsageError("--n-max/--j-max/--m-range/--q-max", str(e.errors()[0]["msg"]))

    config = CliConfig(
        command="verify", ids=ids, grid=grid, format=args.format, out=args.out,
        jobs=_resolve_jobs(args.jobs), oracle=args.oracle,
    )
    shared: Dict[str, Any] = {
        "input": {
            "ids": args.ids,
            "grid": config.grid,
            "jobs": config.jobs,
            "oracle": config.oracle,
            "format": config.format,
            "out": config.out,
        }
    }
    create_verification_flow().run(shared)
    if not config.out:
        sys.stdout.write(shared["output"]["content"])
    return EXIT_FAILURE if shared["results"].has_failures() else EXIT_OK


def run_series(args: argparse.Namespace) -> int:
    """Check generating-function equations; exit 1 on any mismatch."""
    if args.eq.strip().lower() == "all":
        equations = list(FunctionalEquation)
    else:
        try:
            equations = [FunctionalEquation(e.strip().upper()) for e in args.eq.split(",") if e.strip()]
        except ValueError as e:
            raise UsageError("--eq", str(e))

    if args.j is not None:
        if args.j < 1:
            raise UsageError("--j", f"must be positive, got {args.j}")
        j_values = [args.j]
    else:
        if args.j_max < 1:
            raise UsageError("--j-max", f"must be positive, got {args.j_max}")
        j_values = list(range(1, args.j_max + 1))

    order = args.order if args.order is not None else _series_order()
    try:
        x = parse_quad(args.x)
        config = CliConfig(command="series", order=order, format=args.format, out=args.out)
    except ValueError as e:
        flag = "--x" if not isinstance(e, ValidationError) else "--order"
        raise UsageError(flag, str(e))

    shared: Dict[str, Any] = {
        "input": {
            "equations": equations,
            "j_values": j_values,
            "order": config.order,
            "x": x,
            "format": config.format,
            "out": config.out,
        }
    }
    create_series_flow().run(shared)
    if not config.out:
        sys.stdout.write(shared["output"]["content"])
    return EXIT_OK if all(v.confirmed for v in shared["series"]) else EXIT_FAILURE


def _series_order() -> int:
    try:
        return get_series_order()
    except FileNotFoundError:
        return 32


def table_rows(seq: str, low: int, high: int, j: int = 1) -> List[Tuple[int, Any]]:
    """
    Rows of a value table.

    Args:
        seq: One of "bernoulli", "fib", "lucas", "bernoulli-alpha", "akiyama"
        low: First index (may be negative for fib and lucas)
        high: Last index
        j: Multiplier for "bernoulli-alpha", which tabulates B_n(alpha**j / L_j)

    Raises:
        ValueError: For a negative index on a Bernoulli sequence or j < 1
    """
    if seq in ("fib", "lucas"):
        fn: Callable[[int], Any] = fib if seq == "fib" else lucas
        return [(n, fn(n)) for n in range(low, high + 1)]
    if low < 0:
        raise ValueError(f"{seq} needs a non-negative --min, got {low}")
    if seq == "bernoulli":
        return [(n, bernoulli_number(n)) for n in range(low, high + 1)]
    if seq == "akiyama":
        values = akiyama_tanigawa(high) if high >= 0 else []
        return [(n, values[n]) for n in range(low, high + 1)]
    if j < 1:
        raise ValueError(f"bernoulli-alpha needs j >= 1, got {j}")
    return [(n, golden_value(n, j)) for n in range(low, high + 1)]


def run_table(args: argparse.Namespace) -> int:
    try:
        rows = table_rows(args.seq, args.min, args.max, args.j)
    except ValueError as e:
        raise UsageError("--min" if args.min < 0 else "--j", str(e))
    _emit(render_table(rows, args.format), args.out)
    return EXIT_OK


def _timed(fn: Callable[[], Any]) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def run_bench(args: argparse.Namespace) -> int:
    """
    Cross-check the kernels exactly, then time them.

    Returns:
        1 if a cross-check fails, 0 otherwise
    """
    b_max, f_max = args.bernoulli_max, args.fib_max
    if b_max < 0:
        raise UsageError("--bernoulli-max", f"must be non-negative, got {b_max}")

    if bernoulli_numbers(b_max) != akiyama_tanigawa(b_max):
        logging.error(f"Recurrence and Akiyama-Tanigawa disagree below n={b_max}")
        return EXIT_FAILURE
    if fib(f_max) != fib_naive(f_max) or lucas(f_max) != lucas_naive(f_max):
        logging.error(f"Fast doubling and naive iteration disagree at n={f_max}")
        return EXIT_FAILURE
    logging.info("Exact cross-checks passed")

    bernoulli_module.reset_table()
    sequences_module.clear_cache()
    rows = [
        (f"bernoulli recurrence n<={b_max}", _timed(lambda: bernoulli_numbers(b_max))),
        (f"akiyama-tanigawa n<={b_max}", _timed(lambda: akiyama_tanigawa(b_max))),
        (f"fib fast doubling n={f_max}", _timed(lambda: fib(f_max))),
        (f"fib naive n={f_max}", _timed(lambda: fib_naive(f_max))),
    ]
    formatted = [(label, f"{seconds:.6f}") for label, seconds in rows]
    _emit(render_table(formatted, args.format, header=["kernel", "seconds"]), args.out)
    return EXIT_OK


def run_ledger(args: argparse.Namespace) -> int:
    """Rebuild the discrepancy ledger; exit 1 if any entry lacks evidence."""
    shared: Dict[str, Any] = {"input": {"format": args.format, "out": args.out}}
    create_ledger_flow().run(shared)
    if not args.out:
        sys.stdout.write(shared["output"]["content"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the five subcommands."""
    parser = argparse.ArgumentParser(
        prog="fibbern",
        description="Exact verification of Fibonacci-Lucas-Bernoulli identities",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s verify --ids 'L1*' --format json
  %(prog)s verify --n-max 12 --j-max 4 --oracle --jobs 4
  %(prog)s series --eq EGF_F_SQ --j 1 --order 32
  %(prog)s table --seq bernoulli --max 12
  %(prog)s table --seq bernoulli-alpha --j 2 --max 8
  %(prog)s bench --bernoulli-max 200 --fib-max 100000
  %(prog)s ledger --format csv --out output/ledger.csv
        """
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text",
                        help="Output format (default: text)")
    common.add_argument("--out", type=str, help="Write output to this file instead of stdout")
    common.add_argument("--log-level", type=str, default=None,
                        help="Logging level (default: FIBBERN_LOG_LEVEL, then [run] log_level, then INFO)")
    common.add_argument("--log-file", type=str, help="Also write logs to this file")

    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="Evaluate identities over a parameter grid")
    verify.add_argument("--ids", type=str, default="", help="Comma-separated tag globs (default: all)")
    verify.add_argument("--n-max", type=int, help="Largest n")
    verify.add_argument("--j-max", type=int, help="Largest j")
    verify.add_argument("--m-range", type=str, help="m range as A:B, e.g. --m-range -3:3")
    verify.add_argument("--q-max", type=int, help="Largest q")
    verify.add_argument("--jobs", type=int, help="Worker processes (default: FIBBERN_JOBS, then [run] jobs)")
    verify.add_argument("--oracle", action="store_true", help="Cross-check every point through its oracle path")

    series = sub.add_parser("series", parents=[common], help="Check generating-function equations")
    series.add_argument("--eq", type=str, default="all", help="Comma-separated equation ids or 'all'")
    series.add_argument("--j", type=int, help="Single j")
    series.add_argument("--j-max", type=int, default=6, help="Check j = 1..j_max (default: 6)")
    series.add_argument("--order", type=int, help="Truncation order N >= 4 (default: [series] order)")
    series.add_argument("--x", type=str, default="0", help="H_RELATION parameter (default: 0)")

    table = sub.add_parser("table", parents=[common], help="Print a table of exact values")
    table.add_argument("--seq", choices=TABLE_SEQUENCES, required=True, help="Sequence to tabulate")
    table.add_argument("--max", type=int, default=12, help="Last index (default: 12)")
    table.add_argument("--min", type=int, default=0, help="First index (default: 0)")
    table.add_argument("--j", type=int, default=1, help="j for bernoulli-alpha (default: 1)")

    bench = sub.add_parser("bench", parents=[common], help="Time the arithmetic kernels")
    bench.add_argument("--bernoulli-max", type=int, default=200, help="Largest Bernoulli index (default: 200)")
    bench.add_argument("--fib-max", type=int, default=100000, help="Fibonacci index (default: 100000)")

    sub.add_parser("ledger", parents=[common], help="Print the discrepancy ledger with fresh evidence")

    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "verify": run_verify,
    "series": run_series,
    "table": run_table,
    "bench": run_bench,
    "ledger": run_ledger,
}


# Options whose values may start with "-" without being plain numbers
SIGNED_VALUE_OPTIONS = ("--m-range", "--x")


def _attach_signed_values(argv: Sequence[str]) -> List[str]:
    """Join "--m-range -3:3" into "--m-range=-3:3"; argparse would take -3:3 for an option."""
    out: List[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        token = tokens[i]
        value = tokens[i + 1] if i + 1 < len(tokens) else ""
        if token in SIGNED_VALUE_OPTIONS and value.startswith("-") and not value.startswith("--"):
            out.append(f"{token}={value}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and return its exit code.

    Returns:
        0 on success, 1 on any Unequal verdict, oracle disagreement, failed
        series check or runtime failure, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_signed_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    log_level = args.log_level or os.getenv("FIBBERN_LOG_LEVEL") or _setting("log_level", "INFO")
    setup_logging(log_level, args.log_file)

    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog} {args.command}: error: {e}\n")
        return EXIT_USAGE
    except KeyboardInterrupt:
        logging.error("Interrupted by user")
        return EXIT_FAILURE
    except Exception as e:
        logging.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE


def main() -> None:
    """Command-line interface for the identity verification system."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
