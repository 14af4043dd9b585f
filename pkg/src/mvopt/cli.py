"""Command-line pipeline: fetch -> prices -> frontier -> cml -> report.

Exit codes
----------
0  success
2  unusable input (missing/empty symbol file, missing price file,
   malformed row, bad flags, nothing fetched)
3  insufficient price history for the requested trading days
4  degenerate numerics (covariance not positive definite, collapsed
   frontier, zero-variance asset, no tangency)
5  risk-free rate at or above the minimum-variance return
"""

import argparse
import sys
from pathlib import Path

from .exceptions import (
    DegenerateDataError,
    DegenerateFrontierError,
    EmptySymbolListError,
    InsufficientHistoryError,
    MalformedRowError,
    MissingFileError,
    NegativeExcessReturnError,
    NoConvergenceError,
    NoDominantPortfolioError,
    NoTangencyError,
    NotPositiveDefiniteError,
    RiskFreeTooHighError,
)
from .market_data import (
    compute_returns,
    estimate_moments,
    extract_prices,
    fetch_prices,
    read_price_table,
    read_symbol_list,
    write_price_table,
)
from .reports import (
    CML_SUBDIR,
    RISKY_SUBDIR,
    RunConfig,
    build_cml_report,
    build_frontier_report,
    cml_summary,
    frontier_summary,
    write_cml_report,
    write_frontier_report,
    write_manifest,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HISTORY = 3
EXIT_NUMERIC = 4
EXIT_RISK_FREE = 5

_INPUT_ERRORS = (
    EmptySymbolListError,
    MissingFileError,
    MalformedRowError,
    OSError,
    ValueError,
)
_NUMERIC_ERRORS = (
    NotPositiveDefiniteError,
    DegenerateFrontierError,
    DegenerateDataError,
    NoConvergenceError,
    NoDominantPortfolioError,
    NoTangencyError,
)
_RISK_FREE_ERRORS = (RiskFreeTooHighError, NegativeExcessReturnError)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvopt",
        description="Mean-variance portfolio analysis from daily price CSVs.",
        epilog="Exit codes: 2 bad input, 3 short history, 4 degenerate "
        "numerics, 5 risk-free rate too high.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symbols", default="stocks.txt",
                        help="comma-delimited ticker list file (default: %(default)s)")
    common.add_argument("--data-dir", default="data",
                        help="directory of per-symbol price files (default: %(default)s)")
    common.add_argument("--prices", default=None,
                        help="consolidated price file (default: <data-dir>/portfolio.txt)")
    common.add_argument("--days", type=int, default=250,
                        help="trading days of history to use (default: %(default)s)")
    common.add_argument("--points", type=int, default=100,
                        help="portfolios sampled per curve (default: %(default)s)")
    common.add_argument("--risk-free", type=float, default=0.0003,
                        help="daily risk-free rate (default: %(default)s)")
    common.add_argument("--rho-max", type=float, default=0.01,
                        help="largest daily target return sampled (default: %(default)s)")
    common.add_argument("--out", default=".",
                        help="output directory for result tables (default: %(default)s)")
    common.add_argument("--shrink-step", type=float, default=0.01,
                        help="shrinkage-intensity scan step (default: %(default)s)")
    common.add_argument("--url-template", default="",
                        help="download URL with a {symbol} placeholder")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fetch", parents=[common],
                   help="download per-symbol raw CSVs into the data directory")
    sub.add_parser("prices", parents=[common],
                   help="consolidate closing prices into one file")
    sub.add_parser("frontier", parents=[common],
                   help="risky-assets analysis (curve, MVP, TGP, DEP, eigen table)")
    sub.add_parser("cml", parents=[common],
                   help="risk-free analysis (capital market line, MP, MVP2)")
    report = sub.add_parser("report", parents=[common],
                            help="run prices, frontier and cml in sequence")
    report.add_argument("--fetch", action="store_true", dest="do_fetch",
                        help="download raw data first (requires --url-template)")
    return parser


def _config_from_args(args) -> RunConfig:
    data_dir = Path(args.data_dir)
    prices = Path(args.prices) if args.prices else data_dir / "portfolio.txt"
    return RunConfig(
        symbols_file=Path(args.symbols),
        data_dir=data_dir,
        prices_file=prices,
        output_dir=Path(args.out),
        trading_days=args.days,
        frontier_points=args.points,
        risk_free_rate=args.risk_free,
        rho_max=args.rho_max,
        shrink_step=args.shrink_step,
        url_template=args.url_template,
        do_fetch=getattr(args, "do_fetch", False),
    )


def cmd_fetch(config: RunConfig) -> int:
    if not config.symbols_file.is_file():
        print(f"error: symbols file not found: {config.symbols_file}", file=sys.stderr)
        return EXIT_INPUT
    if not config.url_template:
        print("error: fetch requires --url-template", file=sys.stderr)
        return EXIT_INPUT
    symbols = read_symbol_list(config.symbols_file)
    report = fetch_prices(symbols, config.url_template, config.data_dir)
    for symbol, path in report.saved:
        print(f"fetched {symbol} -> {path}")
    for error in report.failed:
        print(f"warning: {error}", file=sys.stderr)
    print(f"{len(report.saved)}/{len(symbols)} symbols fetched")
    return EXIT_OK if report.ok else EXIT_INPUT


def cmd_prices(config: RunConfig) -> int:
    if not config.symbols_file.is_file():
        print(f"error: symbols file not found: {config.symbols_file}", file=sys.stderr)
        return EXIT_INPUT
    symbols = read_symbol_list(config.symbols_file)
    table = extract_prices(config.data_dir, symbols, config.trading_days)
    config.prices_file.parent.mkdir(parents=True, exist_ok=True)
    write_price_table(table, config.prices_file)
    print(
        f"wrote {config.prices_file}: {table.n_days} days x "
        f"{table.n_assets} symbols"
    )
    return EXIT_OK


def cmd_frontier(config: RunConfig) -> int:
    prices = read_price_table(config.prices_file)
    moments = estimate_moments(compute_returns(prices))
    report = build_frontier_report(
        moments,
        points=config.frontier_points,
        rho_max=config.rho_max,
        shrink_step=config.shrink_step,
    )
    written = write_frontier_report(report, config.output_dir)
    print(frontier_summary(report))
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_cml(config: RunConfig) -> int:
    prices = read_price_table(config.prices_file)
    moments = estimate_moments(compute_returns(prices))
    report = build_cml_report(
        moments,
        points=config.frontier_points,
        risk_free_rate=config.risk_free_rate,
        rho_max=config.rho_max,
    )
    written = write_cml_report(report, config.output_dir)
    print(cml_summary(report))
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_report(config: RunConfig) -> int:
    stages = []
    if config.do_fetch:
        stages.append(cmd_fetch)
    stages.extend([cmd_prices, cmd_frontier, cmd_cml])
    for stage in stages:
        status = _run_stage(stage, config)
        if status != EXIT_OK:
            return status
    outputs = [config.prices_file]
    for subdir in (RISKY_SUBDIR, CML_SUBDIR):
        outputs.extend(sorted((config.output_dir / subdir).glob("*.csv")))
    manifest = write_manifest(outputs, config.output_dir)
    print(f"wrote {manifest} ({len(outputs)} files)")
    return EXIT_OK


def _run_stage(stage, config: RunConfig) -> int:
    try:
        return stage(config)
    except InsufficientHistoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HISTORY
    except _RISK_FREE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RISK_FREE
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


_COMMANDS = {
    "fetch": cmd_fetch,
    "prices": cmd_prices,
    "frontier": cmd_frontier,
    "cml": cmd_cml,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "report":
        return cmd_report(config)
    return _run_stage(_COMMANDS[args.command], config)


if __name__ == "__main__":
    raise SystemExit(main())
