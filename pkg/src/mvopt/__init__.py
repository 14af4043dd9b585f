"""Closed-form mean-variance portfolio analysis.

From a matrix of daily returns (or the price CSVs they come from) this
package computes the efficient frontier of N risky assets in closed
form, the minimum-variance and tangency portfolios, a decorrelating
eigen-portfolio basis with covariance shrinkage and a long-only dominant
portfolio, and the capital market line with its market portfolio once a
risk-free asset is added.  A CLI (``mvopt``) mirrors the same pipeline
over CSV files and emits plot-ready tables.
"""

from .cml import (
    CapitalMarketLine,
    CmlModel,
    build_cml,
    cml_risk,
    cml_weights,
    sample_cml,
)
from .eigen import (
    DominantEigenPortfolio,
    EigenBasis,
    EigenPortfolios,
    ShrinkageResult,
    build_eigen_portfolios,
    correlation_from_covariance,
    find_dominant_portfolio,
    shrink_covariance,
)
from .exceptions import (
    DegenerateDataError,
    DegenerateFrontierError,
    EmptySymbolListError,
    HttpFetchError,
    InsufficientHistoryError,
    MalformedRowError,
    MissingFileError,
    NearZeroNormalizerWarning,
    NegativeExcessReturnError,
    NoConvergenceError,
    NoDominantPortfolioError,
    NoTangencyError,
    NotPositiveDefiniteError,
    PortfolioError,
    RiskFreeTooHighError,
)
from .frontier import (
    EfficientFrontier,
    FrontierModel,
    Portfolio,
    build_frontier,
    frontier_risk,
    frontier_weights,
    minimum_variance_portfolio,
    sample_frontier,
    tangency_portfolio,
)
from .linalg import EigenDecomposition, spd_inverse, spd_solve, sym_eigen
from .market_data import (
    FetchReport,
    MomentEstimates,
    PriceTable,
    ReturnTable,
    compute_returns,
    estimate_moments,
    extract_prices,
    fetch_prices,
    read_price_table,
    read_symbol_list,
    write_price_table,
)

__version__ = "0.1.0"

__all__ = [
    "CapitalMarketLine",
    "CmlModel",
    "DegenerateDataError",
    "DegenerateFrontierError",
    "DominantEigenPortfolio",
    "EfficientFrontier",
    "EigenBasis",
    "EigenDecomposition",
    "EigenPortfolios",
    "EmptySymbolListError",
    "FetchReport",
    "FrontierModel",
    "HttpFetchError",
    "InsufficientHistoryError",
    "MalformedRowError",
    "MissingFileError",
    "MomentEstimates",
    "NearZeroNormalizerWarning",
    "NegativeExcessReturnError",
    "NoConvergenceError",
    "NoDominantPortfolioError",
    "NoTangencyError",
    "NotPositiveDefiniteError",
    "Portfolio",
    "PortfolioError",
    "PriceTable",
    "ReturnTable",
    "RiskFreeTooHighError",
    "ShrinkageResult",
    "build_cml",
    "build_eigen_portfolios",
    "build_frontier",
    "cml_risk",
    "cml_weights",
    "compute_returns",
    "correlation_from_covariance",
    "estimate_moments",
    "extract_prices",
    "fetch_prices",
    "find_dominant_portfolio",
    "frontier_risk",
    "frontier_weights",
    "minimum_variance_portfolio",
    "read_price_table",
    "read_symbol_list",
    "sample_cml",
    "sample_frontier",
    "shrink_covariance",
    "spd_inverse",
    "spd_solve",
    "sym_eigen",
    "tangency_portfolio",
    "write_price_table",
]
