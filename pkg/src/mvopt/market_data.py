"""Price ingestion, daily returns, and moment estimation.

The pipeline starts from per-symbol CSV files holding daily closing
prices with the most recent trading day first, consolidates them into a
single price table, and turns that into the mean-return vector and
sample covariance matrix every optimizer in this package consumes.

File conventions
----------------
* Symbol list: one UTF-8 line of comma-delimited tickers.
* Per-symbol file: CSV with a header row; the closing price is taken
  from the column named ``Close``, falling back to the fifth column.
  Files are named after the bare symbol, with ``<symbol>.csv`` accepted
  as an alternative.
* Consolidated price file: header of comma-separated tickers, then one
  row of prices per trading day, most recent first.
"""

import csv
import os
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    DegenerateDataError,
    EmptySymbolListError,
    HttpFetchError,
    InsufficientHistoryError,
    MalformedRowError,
    MissingFileError,
)
from .formatting import format_number
from .validation import as_float_matrix, symmetrize

CLOSE_COLUMN = "Close"
CLOSE_FALLBACK_INDEX = 4


@dataclass(frozen=True)
class PriceTable:
    """Closing prices, shape (days, symbols), row 0 = most recent day."""

    symbols: tuple
    prices: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))
        prices = as_float_matrix(self.prices, "prices")
        if prices.shape[0] < 2:
            raise ValueError("price table needs at least 2 rows")
        if prices.shape[1] != len(self.symbols):
            raise ValueError(
                f"price table has {prices.shape[1]} columns for "
                f"{len(self.symbols)} symbols"
            )
        if np.any(prices <= 0.0):
            raise ValueError("prices must be strictly positive")
        object.__setattr__(self, "prices", prices)

    @property
    def n_days(self) -> int:
        return self.prices.shape[0]

    @property
    def n_assets(self) -> int:
        return self.prices.shape[1]


@dataclass(frozen=True)
class ReturnTable:
    """Daily simple returns, shape (days - 1, symbols), most recent first."""

    symbols: tuple
    returns: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))
        returns = as_float_matrix(self.returns, "returns")
        if returns.shape[1] != len(self.symbols):
            raise ValueError(
                f"return table has {returns.shape[1]} columns for "
                f"{len(self.symbols)} symbols"
            )
        if np.any(returns <= -1.0):
            raise ValueError("simple returns must stay above -1")
        object.__setattr__(self, "returns", returns)

    @property
    def n_assets(self) -> int:
        return self.returns.shape[1]


@dataclass(frozen=True)
class MomentEstimates:
    """Per-day mean returns and sample covariance with symbol labels."""

    symbols: tuple
    mean_returns: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))
        mean = np.asarray(self.mean_returns, dtype=float)
        cov = np.asarray(self.covariance, dtype=float)
        n = len(self.symbols)
        if mean.shape != (n,):
            raise ValueError(f"mean_returns must have shape ({n},)")
        if cov.shape != (n, n):
            raise ValueError(f"covariance must have shape ({n}, {n})")
        if not np.array_equal(cov, cov.T):
            raise ValueError("covariance must be exactly symmetric")
        if np.any(np.diagonal(cov) < 0.0):
            raise ValueError("covariance diagonal must be non-negative")
        object.__setattr__(self, "mean_returns", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def n_assets(self) -> int:
        return len(self.symbols)

    @property
    def volatilities(self) -> np.ndarray:
        return np.sqrt(np.diagonal(self.covariance))


def read_symbol_list(path) -> list:
    """Read a comma-delimited ticker list.

    Tokens are whitespace-trimmed and deduplicated preserving order.
    Raises :class:`EmptySymbolListError` when nothing usable remains.
    """
    text = Path(path).read_text(encoding="utf-8")
    seen = set()
    symbols = []
    for token in text.split(","):
        symbol = token.strip()
        if symbol and symbol not in seen:
            seen.add(symbol)
            symbols.append(symbol)
    if not symbols:
        raise EmptySymbolListError(path)
    return symbols


def _symbol_file(data_dir: Path, symbol: str) -> Path:
    candidates = [data_dir / symbol, data_dir / f"{symbol}.csv"]
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    raise MissingFileError(symbol, candidates)


def _read_close_column(path: Path, days: int, symbol: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRowError(path, 1, "file is empty") from None
        names = [h.strip() for h in header]
        if CLOSE_COLUMN in names:
            close_idx = names.index(CLOSE_COLUMN)
        elif len(names) > CLOSE_FALLBACK_INDEX:
            close_idx = CLOSE_FALLBACK_INDEX
        else:
            raise MalformedRowError(
                path, 1, f"no {CLOSE_COLUMN!r} column and fewer than "
                f"{CLOSE_FALLBACK_INDEX + 1} columns"
            )
        closes = []
        for line_number, row in enumerate(reader, start=2):
            if len(closes) == days:
                break
            if len(row) <= close_idx:
                raise MalformedRowError(
                    path, line_number,
                    f"expected at least {close_idx + 1} fields, got {len(row)}",
                )
            field = row[close_idx].strip()
            try:
                price = float(field)
            except ValueError:
                raise MalformedRowError(
                    path, line_number, f"cannot parse price {field!r}"
                ) from None
            if not np.isfinite(price) or price <= 0.0:
                raise MalformedRowError(
                    path, line_number, f"price must be positive, got {field!r}"
                )
            closes.append(price)
    if len(closes) < days:
        raise InsufficientHistoryError(symbol, len(closes), days)
    return np.array(closes)


def extract_prices(data_dir, symbols, days: int) -> PriceTable:
    """Assemble a PriceTable from per-symbol CSV files.

    Takes the first ``days`` data rows of each file (most recent first),
    columns ordered as ``symbols``.
    """
    if days < 2:
        raise ValueError("days must be at least 2")
    data_dir = Path(data_dir)
    columns = [
        _read_close_column(_symbol_file(data_dir, symbol), days, symbol)
        for symbol in symbols
    ]
    return PriceTable(tuple(symbols), np.column_stack(columns))


def compute_returns(prices: PriceTable) -> ReturnTable:
    """Daily simple returns of each later day relative to the prior day.

    With rows most-recent-first, ``returns[t] = (prices[t] - prices[t+1])
    / prices[t+1]``.
    """
    p = prices.prices
    return ReturnTable(prices.symbols, (p[:-1] - p[1:]) / p[1:])


def estimate_moments(returns: ReturnTable) -> MomentEstimates:
    """Mean returns and sample covariance (divisor = rows - 1).

    Raises :class:`DegenerateDataError` when an asset has zero variance,
    which would make every volatility-normalized construction singular.
    """
    r = returns.returns
    if r.shape[0] < 2:
        raise ValueError("need at least 2 return rows to estimate moments")
    mean = r.mean(axis=0)
    cov = symmetrize(np.cov(r, rowvar=False, ddof=1).reshape(r.shape[1], -1))
    if np.any(np.diagonal(cov) <= 0.0):
        bad = [
            returns.symbols[i]
            for i in np.flatnonzero(np.diagonal(cov) <= 0.0)
        ]
        raise DegenerateDataError(f"zero-variance asset(s): {', '.join(bad)}")
    return MomentEstimates(returns.symbols, mean, cov)


def write_price_table(prices: PriceTable, path) -> None:
    """Write the consolidated price file (header of tickers, 12 significant
    digits, newline-terminated rows); byte-stable across runs."""
    lines = [",".join(prices.symbols)]
    for row in prices.prices:
        lines.append(",".join(format_number(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_price_table(path) -> PriceTable:
    """Parse a consolidated price file written by :func:`write_price_table`."""
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            symbols = [h.strip() for h in next(reader)]
        except StopIteration:
            raise MalformedRowError(path, 1, "file is empty") from None
        rows = []
        for line_number, row in enumerate(reader, start=2):
            if len(row) != len(symbols):
                raise MalformedRowError(
                    path, line_number,
                    f"expected {len(symbols)} fields, got {len(row)}",
                )
            try:
                rows.append([float(field) for field in row])
            except ValueError:
                raise MalformedRowError(
                    path, line_number, "cannot parse price row"
                ) from None
    if not rows:
        raise MalformedRowError(path, 2, "no price rows")
    return PriceTable(tuple(symbols), np.array(rows))


@dataclass(frozen=True)
class FetchReport:
    """Outcome of a bulk download, sorted by symbol."""

    saved: tuple
    failed: tuple

    @property
    def ok(self) -> bool:
        return len(self.saved) > 0


def fetch_prices(symbols, url_template: str, out_dir, timeout: float = 30.0) -> FetchReport:
    """Download one raw CSV per symbol into ``out_dir``.

    ``url_template`` must contain a ``{symbol}`` placeholder.  Individual
    failures are recorded in the report rather than raised, so one bad
    symbol does not abort the rest.  Files are written atomically and
    overwrite existing ones.
    """
    if "{symbol}" not in url_template:
        raise ValueError("url_template must contain a {symbol} placeholder")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    saved = []
    failed = []
    for symbol in symbols:
        url = url_template.format(symbol=symbol)
        try:
            with urllib.request.urlopen(url, timeout=timeout) as response:
                payload = response.read()
        except urllib.error.HTTPError as exc:
            failed.append(HttpFetchError(symbol, status=exc.code))
            continue
        except (urllib.error.URLError, OSError, ValueError) as exc:
            failed.append(HttpFetchError(symbol, reason=str(exc)))
            continue
        target = out_dir / symbol
        tmp = out_dir / f".{symbol}.part"
        tmp.write_bytes(payload)
        os.replace(tmp, target)
        saved.append((symbol, target))
    return FetchReport(
        tuple(sorted(saved, key=lambda item: item[0])),
        tuple(sorted(failed, key=lambda err: err.symbol)),
    )
