"""Plot-ready report tables and their deterministic CSV serialization.

Two reports cover the whole analysis: the risky-assets report (frontier
curve, weight paths, named portfolios, eigen-portfolio table, per-asset
stats) written under ``results1/``, and the risk-free report (capital
market line, weight paths with the trailing risk-free column, market and
minimum-risk portfolios) written under ``results2/``.  All numbers pass
through :func:`mvopt.formatting.format_number`, so reruns on the same
inputs are byte-identical.
"""

import hashlib
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cml import CmlModel, build_cml, sample_cml
from .eigen import EigenBasis, ShrinkageResult, build_eigen_portfolios, find_dominant_portfolio
from .formatting import format_number, write_csv
from .frontier import (
    FrontierModel,
    Portfolio,
    build_frontier,
    minimum_variance_portfolio,
    sample_frontier,
    tangency_portfolio,
)
from .market_data import MomentEstimates

RISKY_SUBDIR = "results1"
CML_SUBDIR = "results2"


@dataclass(frozen=True)
class RunConfig:
    """Paths and parameters of one end-to-end pipeline run."""

    symbols_file: Path
    data_dir: Path
    prices_file: Path
    output_dir: Path
    trading_days: int = 250
    frontier_points: int = 100
    risk_free_rate: float = 0.0003
    rho_max: float = 0.01
    shrink_step: float = 0.01
    url_template: str = ""
    do_fetch: bool = False

    def __post_init__(self):
        for name in ("symbols_file", "data_dir", "prices_file", "output_dir"):
            object.__setattr__(self, name, Path(getattr(self, name)))
        if self.trading_days < 2:
            raise ValueError("trading_days must be at least 2")
        if self.frontier_points < 1:
            raise ValueError("frontier_points must be at least 1")
        if self.risk_free_rate < 0.0:
            raise ValueError("risk_free_rate must be non-negative")
        if self.rho_max <= 0.0:
            raise ValueError("rho_max must be positive")
        if not 0.0 < self.shrink_step <= 1.0:
            raise ValueError("shrink_step must lie in (0, 1]")


@dataclass(frozen=True)
class FrontierReport:
    """Everything the risky-assets command emits."""

    moments: MomentEstimates
    model: FrontierModel
    curve: tuple  # (returns, risks), ascending return
    weight_paths: np.ndarray  # (points, assets)
    mvp: Portfolio
    tgp: Portfolio
    dominant: ShrinkageResult
    eigen: EigenBasis


@dataclass(frozen=True)
class CmlReport:
    """Everything the risk-free command emits."""

    moments: MomentEstimates
    cml: CmlModel
    curve: tuple  # (returns, risks), ascending return
    weight_paths: np.ndarray  # (points, assets + 1), last column risk-free
    market: Portfolio
    mvp2: Portfolio


def build_frontier_report(
    moments: MomentEstimates,
    points: int = 100,
    rho_max: float = 0.01,
    shrink_step: float = 0.01,
) -> FrontierReport:
    model = build_frontier(moments)
    samples = sample_frontier(model, points, rho_max)
    returns = np.array([p.expected_return for p in samples])
    risks = np.array([p.risk for p in samples])
    weights = np.vstack([p.weights for p in samples])
    return FrontierReport(
        moments=moments,
        model=model,
        curve=(returns, risks),
        weight_paths=weights,
        mvp=minimum_variance_portfolio(model),
        tgp=tangency_portfolio(model),
        dominant=find_dominant_portfolio(moments, step=shrink_step),
        eigen=build_eigen_portfolios(moments),
    )


def build_cml_report(
    moments: MomentEstimates,
    points: int = 100,
    risk_free_rate: float = 0.0003,
    rho_max: float = 0.01,
) -> CmlReport:
    model = build_frontier(moments)
    cml = build_cml(model, moments, risk_free_rate)
    samples = sample_cml(cml, points, rho_max)
    returns = np.array([p.expected_return for p in samples])
    risks = np.array([p.risk for p in samples])
    weights = np.vstack([p.weights for p in samples])
    return CmlReport(
        moments=moments,
        cml=cml,
        curve=(returns, risks),
        weight_paths=weights,
        market=cml.market,
        mvp2=cml.mvp2,
    )


def _curve_rows(returns, risks):
    return (
        (format_number(rho), format_number(risk))
        for rho, risk in zip(returns, risks)
    )


def _weight_rows(returns, weights):
    for rho, row in zip(returns, weights):
        yield (format_number(rho), *(format_number(w) for w in row))


def _portfolio_row(portfolio: Portfolio, extra=()):
    return (
        portfolio.label,
        format_number(portfolio.expected_return),
        format_number(portfolio.risk),
        format_number(portfolio.sharpe),
        *extra,
        *(format_number(w) for w in portfolio.weights),
    )


def write_frontier_report(report: FrontierReport, output_dir) -> list:
    """Write the risky-assets tables under ``output_dir/results1``."""
    out = Path(output_dir) / RISKY_SUBDIR
    out.mkdir(parents=True, exist_ok=True)
    symbols = report.moments.symbols
    returns, risks = report.curve
    written = [
        write_csv(
            out / "frontier_curve.csv",
            ("expected_return", "risk"),
            _curve_rows(returns, risks),
        ),
        write_csv(
            out / "frontier_weights.csv",
            ("expected_return", *symbols),
            _weight_rows(returns, report.weight_paths),
        ),
        write_csv(
            out / "portfolios.csv",
            ("portfolio", "expected_return", "risk", "sharpe", "shrinkage", *symbols),
            (
                _portfolio_row(report.mvp, extra=("",)),
                _portfolio_row(report.tgp, extra=("",)),
                _portfolio_row(
                    report.dominant.portfolio,
                    extra=(format_number(report.dominant.shrinkage),),
                ),
            ),
        ),
        write_csv(
            out / "eigen_table.csv",
            ("rank", "eigenvalue", "expected_return", "risk"),
            (
                (
                    str(k + 1),
                    format_number(report.eigen.eigenvalues[k]),
                    format_number(report.eigen.expected_returns[k]),
                    format_number(report.eigen.risks[k]),
                )
                for k in range(report.eigen.n_assets)
            ),
        ),
        write_csv(
            out / "asset_stats.csv",
            ("symbol", "mean_return", "volatility"),
            (
                (
                    symbol,
                    format_number(report.moments.mean_returns[i]),
                    format_number(report.moments.volatilities[i]),
                )
                for i, symbol in enumerate(symbols)
            ),
        ),
    ]
    return written


def write_cml_report(report: CmlReport, output_dir) -> list:
    """Write the risk-free tables under ``output_dir/results2``."""
    out = Path(output_dir) / CML_SUBDIR
    out.mkdir(parents=True, exist_ok=True)
    returns, risks = report.curve
    columns = report.cml.symbols  # risky symbols + trailing RFA
    written = [
        write_csv(
            out / "cml_curve.csv",
            ("expected_return", "risk"),
            _curve_rows(returns, risks),
        ),
        write_csv(
            out / "cml_weights.csv",
            ("expected_return", *columns),
            _weight_rows(returns, report.weight_paths),
        ),
        write_csv(
            out / "portfolios.csv",
            ("portfolio", "expected_return", "risk", "sharpe", *columns),
            (
                _portfolio_row(report.market),
                _portfolio_row(report.mvp2),
            ),
        ),
    ]
    return written


def _summary_line(name: str, portfolio: Portfolio, extra: str = "") -> str:
    return (
        f"{name:<28s} return/day={format_number(portfolio.expected_return):>18s} "
        f"risk/day={format_number(portfolio.risk):>18s} "
        f"sharpe={format_number(portfolio.sharpe):>18s}{extra}"
    )


def frontier_summary(report: FrontierReport) -> str:
    lines = [
        f"assets: {', '.join(report.moments.symbols)}",
        _summary_line("minimum variance (MVP)", report.mvp),
        _summary_line("tangency (TGP)", report.tgp),
        _summary_line(
            "dominant eigen (DEP)",
            report.dominant.portfolio,
            extra=f" shrinkage={format_number(report.dominant.shrinkage)}",
        ),
    ]
    return "\n".join(lines)


def cml_summary(report: CmlReport) -> str:
    lines = [
        f"risk-free rate/day: {format_number(report.cml.risk_free_rate)}",
        f"line slope (return per unit risk): {format_number(report.cml.slope)}",
        _summary_line("market portfolio (MP)", report.market),
        _summary_line("minimum risk mix (MVP2)", report.mvp2),
    ]
    return "\n".join(lines)


def write_manifest(paths, output_dir) -> Path:
    """Write ``manifest.txt``: one ``sha256  relative-path`` line per file."""
    output_dir = Path(output_dir)
    entries = []
    for path in paths:
        path = Path(path)
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        shown = os.path.relpath(path, start=output_dir)
        entries.append((shown, digest))
    entries.sort()
    manifest = output_dir / "manifest.txt"
    manifest.write_text(
        "".join(f"{digest}  {name}\n" for name, digest in entries),
        encoding="utf-8",
    )
    return manifest
