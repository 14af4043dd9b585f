"""Closed-form mean-variance frontier for N risky assets.

With short selling allowed, minimizing portfolio variance subject to a
unit budget and a target expected return is an equality-constrained
quadratic program with an analytical solution.  Writing ``u`` for the
all-ones vector, ``r`` for the mean-return vector and ``S`` for the
covariance matrix, the whole frontier is parameterized by the Gram
values of ``(u, r)`` under ``S^-1``::

    ones_gram    = u' S^-1 u
    cross_gram   = r' S^-1 u
    returns_gram = r' S^-1 r
    gram_det     = ones_gram * returns_gram - cross_gram**2

The minimizing weights at target return ``rho`` are affine in ``rho``
(two-fund separation)::

    w(rho) = base_weights + rho * return_slope

and the frontier curve is the hyperbola

    risk(rho)**2 = (ones_gram / gram_det)
                   * (rho - cross_gram / ones_gram)**2 + 1 / ones_gram.

All returns and risks here are per trading day; nothing is annualized.
"""

from dataclasses import dataclass, replace

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import DegenerateFrontierError, NoTangencyError
from .linalg import spd_solve
from .market_data import MomentEstimates, ReturnTable, compute_returns, estimate_moments
from .validation import as_float_matrix, column_labels, default_symbols

# gram_det below this fraction of ones_gram*returns_gram means all assets
# share one expected return and the frontier collapses to a point.
DEGENERATE_DET_RTOL = 1e-12


@dataclass(frozen=True)
class Portfolio:
    """A fully-invested portfolio with its per-day return and risk.

    ``weights`` sum to 1; for capital-market-line portfolios the last
    entry is the risk-free weight and ``symbols`` ends with ``"RFA"``.
    """

    label: str
    symbols: tuple
    weights: np.ndarray
    expected_return: float
    risk: float

    @property
    def sharpe(self) -> float:
        """Expected return per unit of risk."""
        return self.expected_return / self.risk


@dataclass(frozen=True)
class FrontierModel:
    """Immutable closed-form description of the risky frontier."""

    symbols: tuple
    ones_gram: float
    cross_gram: float
    returns_gram: float
    gram_det: float
    base_weights: np.ndarray
    return_slope: np.ndarray

    @property
    def mvp_return(self) -> float:
        """Target return at the frontier vertex."""
        return self.cross_gram / self.ones_gram

    @property
    def mvp_risk(self) -> float:
        """Lowest risk attainable on the frontier."""
        return np.sqrt(1.0 / self.ones_gram)


def build_frontier(moments: MomentEstimates) -> FrontierModel:
    """Solve the frontier's normal equations once.

    Requires a positive definite covariance, at least two assets, and
    expected returns not all equal (otherwise the Gram determinant
    vanishes and :class:`DegenerateFrontierError` is raised).
    """
    if moments.n_assets < 2:
        raise ValueError("a frontier needs at least 2 assets")
    cov = moments.covariance
    r = moments.mean_returns
    u = np.ones(moments.n_assets)
    solved_u = spd_solve(cov, u)
    solved_r = spd_solve(cov, r)
    ones_gram = float(u @ solved_u)
    cross_gram = float(r @ solved_u)
    returns_gram = float(r @ solved_r)
    det = ones_gram * returns_gram - cross_gram**2
    if det <= DEGENERATE_DET_RTOL * ones_gram * returns_gram:
        raise DegenerateFrontierError(
            "mean returns are (numerically) proportional to the ones vector; "
            "every portfolio shares one expected return"
        )
    base = (returns_gram * solved_u - cross_gram * solved_r) / det
    slope = (ones_gram * solved_r - cross_gram * solved_u) / det
    return FrontierModel(
        symbols=moments.symbols,
        ones_gram=ones_gram,
        cross_gram=cross_gram,
        returns_gram=returns_gram,
        gram_det=det,
        base_weights=base,
        return_slope=slope,
    )


def frontier_risk(model: FrontierModel, rho):
    """Risk (standard deviation per day) of the frontier portfolio at
    target return ``rho``; accepts scalars or arrays."""
    centered = np.asarray(rho, dtype=float) - model.mvp_return
    variance = (model.ones_gram / model.gram_det) * centered**2 + 1.0 / model.ones_gram
    risk = np.sqrt(variance)
    return float(risk) if centered.ndim == 0 else risk


def frontier_weights(model: FrontierModel, rho: float) -> Portfolio:
    """Minimum-variance weights at target return ``rho``."""
    rho = float(rho)
    return Portfolio(
        label="FRONTIER",
        symbols=model.symbols,
        weights=model.base_weights + rho * model.return_slope,
        expected_return=rho,
        risk=frontier_risk(model, rho),
    )


def minimum_variance_portfolio(model: FrontierModel) -> Portfolio:
    """The frontier vertex: lowest risk across all target returns."""
    return replace(frontier_weights(model, model.mvp_return), label="MVP")


def tangency_portfolio(model: FrontierModel) -> Portfolio:
    """The maximum-Sharpe portfolio, where a line through the origin is
    tangent to the frontier's upper branch.

    Exists only when ``cross_gram > 0`` (equivalently, the vertex return
    is positive); otherwise :class:`NoTangencyError` is raised.
    """
    if model.cross_gram <= 1e-12:
        raise NoTangencyError(
            "tangency through the origin requires a positive "
            "minimum-variance return"
        )
    rho = model.returns_gram / model.cross_gram
    portfolio = frontier_weights(model, rho)
    return replace(
        portfolio,
        label="TGP",
        risk=np.sqrt(model.returns_gram) / model.cross_gram,
    )


def sample_frontier(model: FrontierModel, count: int, rho_max: float) -> list:
    """``count`` frontier portfolios at rho = m * rho_max / count,
    m = 1..count (the zero-return point is excluded)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if rho_max <= 0.0:
        raise ValueError("rho_max must be positive")
    rhos = np.arange(1, count + 1) * (rho_max / count)
    return [frontier_weights(model, rho) for rho in rhos]


class EfficientFrontier(BaseEstimator):
    """Closed-form frontier solver with a scikit-learn estimator surface.

    Fit on a matrix of daily simple returns (rows = days, columns =
    assets); the estimator computes sample moments and the frontier
    parameterization, after which portfolios at any target return are
    available without further optimization.

    Attributes
    ----------
    moments_ : MomentEstimates
        Sample mean returns and covariance.
    frontier_ : FrontierModel
        The fitted closed-form frontier.
    mvp_ : Portfolio
        The minimum-variance portfolio.
    n_features_in_ : int
        Number of assets seen during fit.
    """

    def fit(self, X, y=None, *, symbols=None):
        X = as_float_matrix(X, "X")
        labels = tuple(symbols) if symbols is not None else column_labels(X, X.shape[1])
        if labels is None:
            labels = default_symbols(X.shape[1])
        table = ReturnTable(labels, X)
        self.moments_ = estimate_moments(table)
        self.frontier_ = build_frontier(self.moments_)
        self.mvp_ = minimum_variance_portfolio(self.frontier_)
        self.n_features_in_ = X.shape[1]
        if symbols is not None:
            self.feature_names_in_ = np.asarray(labels, dtype=object)
        return self

    def fit_prices(self, prices, *, symbols=None):
        """Convenience: fit from a most-recent-first price matrix."""
        prices = as_float_matrix(prices, "prices")
        labels = tuple(symbols) if symbols is not None else default_symbols(prices.shape[1])
        from .market_data import PriceTable

        table = compute_returns(PriceTable(labels, prices))
        return self.fit(table.returns, symbols=labels)

    def weights_at(self, rho: float) -> Portfolio:
        return frontier_weights(self.frontier_, rho)

    def risk_at(self, rho):
        return frontier_risk(self.frontier_, rho)

    def predict(self, rho):
        """Frontier risk at the given target return(s)."""
        return self.risk_at(rho)

    def minimum_variance(self) -> Portfolio:
        return self.mvp_

    def tangency(self) -> Portfolio:
        return tangency_portfolio(self.frontier_)

    def sample(self, count: int, rho_max: float) -> list:
        return sample_frontier(self.frontier_, count, rho_max)
