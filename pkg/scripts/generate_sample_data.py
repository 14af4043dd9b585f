#!/usr/bin/env python3
"""Regenerate the bundled synthetic price fixture under sample_data/.

Ten correlated geometric random walks, 250 trading days each, written in
the per-symbol CSV layout the CLI ingests (most recent day first).  The
seed is fixed and the generated data is verified to satisfy what the
test suite relies on: positive pairwise correlations, a positive
definite covariance, a minimum-variance return comfortably above the
default daily risk-free rate of 0.0003, and a long-only dominant
eigen-portfolio without shrinkage.
"""

import datetime as dt
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mvopt import (  # noqa: E402
    PriceTable,
    build_frontier,
    compute_returns,
    estimate_moments,
    find_dominant_portfolio,
)
from mvopt.eigen import correlation_from_covariance  # noqa: E402

SEED = 20210907
N_DAYS = 250
SYMBOLS = ["FB", "INT", "AAPL", "MSFT", "ORCL", "GOOG", "YHOO", "DELL", "IBM", "HPQ"]
OUT_DIR = Path(__file__).resolve().parents[1] / "sample_data"


def business_days_desc(n: int, last: dt.date) -> list:
    days = []
    day = last
    while len(days) < n:
        if day.weekday() < 5:
            days.append(day)
        day -= dt.timedelta(days=1)
    return days


def simulate_prices(rng: np.random.Generator) -> np.ndarray:
    n = len(SYMBOLS)
    drift = rng.uniform(0.0008, 0.0022, size=n)
    market_beta = rng.uniform(0.7, 1.3, size=n)
    idio_vol = rng.uniform(0.004, 0.009, size=n)
    market = rng.normal(0.0, 0.011, size=N_DAYS - 1)
    shocks = rng.normal(0.0, 1.0, size=(N_DAYS - 1, n)) * idio_vol
    returns = drift + market[:, None] * market_beta + shocks  # chronological
    start = rng.uniform(25.0, 420.0, size=n)
    prices = np.empty((N_DAYS, n))
    prices[0] = start
    for t in range(1, N_DAYS):
        prices[t] = prices[t - 1] * (1.0 + returns[t - 1])
    return np.round(prices[::-1], 2)  # most recent first, cents


def check_fixture(prices: np.ndarray) -> dict:
    table = PriceTable(tuple(SYMBOLS), prices)
    moments = estimate_moments(compute_returns(table))
    corr = correlation_from_covariance(moments.covariance)
    off = corr[~np.eye(len(SYMBOLS), dtype=bool)]
    model = build_frontier(moments)
    dominant = find_dominant_portfolio(moments)
    stats = {
        "min_corr": float(off.min()),
        "mvp_return": model.mvp_return,
        "cross_gram": model.cross_gram,
        "dep_gamma": dominant.shrinkage,
    }
    assert stats["min_corr"] > 0.05, stats
    assert 0.0006 < stats["mvp_return"] < 0.005, stats
    assert stats["cross_gram"] > 0.0, stats
    assert stats["dep_gamma"] == 0.0, stats
    assert np.all(prices > 1.0)
    return stats


def write_symbol_file(path: Path, dates, closes: np.ndarray, rng: np.random.Generator):
    lines = ["Date,Open,High,Low,Close,Volume,AdjClose"]
    for i, date in enumerate(dates):
        close = closes[i]
        prev_close = closes[i + 1] if i + 1 < len(closes) else close
        spread = abs(close - prev_close) + 0.01 * close * rng.uniform(0.2, 1.0)
        high = round(max(close, prev_close) + 0.3 * spread, 2)
        low = round(min(close, prev_close) - 0.3 * spread, 2)
        volume = int(rng.integers(200_000, 40_000_000))
        lines.append(
            f"{date.isoformat()},{prev_close:.2f},{high:.2f},{low:.2f},"
            f"{close:.2f},{volume},{close:.2f}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    rng = np.random.default_rng(SEED)
    prices = simulate_prices(rng)
    stats = check_fixture(prices)
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "stocks.txt").write_text(",".join(SYMBOLS) + "\n", encoding="utf-8")
    dates = business_days_desc(N_DAYS, dt.date(2013, 6, 21))
    for j, symbol in enumerate(SYMBOLS):
        write_symbol_file(OUT_DIR / symbol, dates, prices[:, j], rng)
    print(f"wrote {len(SYMBOLS)} symbol files + stocks.txt to {OUT_DIR}")
    for key, value in stats.items():
        print(f"  {key}: {value:.6g}")


if __name__ == "__main__":
    main()
