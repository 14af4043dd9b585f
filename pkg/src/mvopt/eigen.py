"""Eigen-portfolios, covariance shrinkage, and the dominant-portfolio search.

Eigen-portfolios are built from the eigenvectors of the correlation
matrix: each eigenvector is rescaled by the inverse volatilities and then
normalized to a unit budget.  The resulting N portfolios are pairwise
uncorrelated under the sample covariance and span the whole asset space,
so any portfolio decomposes into uncorrelated building blocks.

The first (largest-eigenvalue) portfolio is long-only whenever all
pairwise correlations are positive.  When it is not, blending the
covariance toward its own diagonal,

    shrunk(gamma) = (1 - gamma) * S + gamma * diag(S),

eventually produces a dominant portfolio with strictly positive weights;
:func:`find_dominant_portfolio` scans for the smallest such intensity.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import (
    DegenerateDataError,
    NearZeroNormalizerWarning,
    NoDominantPortfolioError,
)
from .frontier import Portfolio
from .linalg import sym_eigen
from .market_data import MomentEstimates, ReturnTable, estimate_moments
from .validation import as_float_matrix, check_symmetric, column_labels, default_symbols

# |weight sum of a rescaled eigenvector| below this fraction of its 1-norm
# cannot be budget-normalized; the portfolio is excluded.
NORMALIZER_RTOL = 1e-10

# Eigenvalues within this relative distance of the top one are treated as
# tied when selecting the dominant portfolio.
EIGENVALUE_TIE_RTOL = 1e-10

# An expected return this close to zero is a sign-convention coin toss.
RETURN_SIGN_ATOL = 1e-14


@dataclass(frozen=True)
class EigenBasis:
    """All N eigen-portfolios of a moment estimate.

    Row ``k`` of ``weights`` is the budget-normalized portfolio paired
    with ``eigenvalues[k]``.  Portfolios whose rescaled eigenvector sums
    to ~0 cannot be normalized; their index appears in ``excluded`` and
    their rows hold NaN.
    """

    symbols: tuple
    eigenvalues: np.ndarray
    weights: np.ndarray
    normalizers: np.ndarray
    expected_returns: np.ndarray
    risks: np.ndarray
    excluded: tuple

    @property
    def n_assets(self) -> int:
        return len(self.symbols)

    def kept(self) -> np.ndarray:
        """Indices of portfolios that survived normalization."""
        return np.array(
            [k for k in range(self.n_assets) if k not in self.excluded],
            dtype=int,
        )


def correlation_from_covariance(covariance: np.ndarray) -> np.ndarray:
    """Correlation matrix with an exactly-unit diagonal.

    Raises :class:`DegenerateDataError` if any variance is not positive.
    """
    cov = np.asarray(covariance, dtype=float)
    check_symmetric(cov, "covariance")
    variances = np.diagonal(cov)
    if np.any(variances <= 0.0):
        raise DegenerateDataError(
            "correlation is undefined for zero-variance assets"
        )
    inv_vol = 1.0 / np.sqrt(variances)
    corr = cov * np.outer(inv_vol, inv_vol)
    np.fill_diagonal(corr, 1.0)
    return corr


def shrink_covariance(covariance: np.ndarray, gamma: float) -> np.ndarray:
    """Blend a covariance toward its diagonal: off-diagonals scale by
    ``1 - gamma``, the diagonal is preserved exactly."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    cov = np.asarray(covariance, dtype=float)
    check_symmetric(cov, "covariance")
    shrunk = (1.0 - gamma) * cov
    np.fill_diagonal(shrunk, np.diagonal(cov))
    return shrunk


def _normalized_portfolio(scaled_vector: np.ndarray):
    """Budget-normalize an inverse-volatility-scaled eigenvector.

    Returns ``(weights, normalizer)`` or ``(None, normalizer)`` when the
    weight sum is too close to zero to divide by.
    """
    normalizer = float(np.sum(scaled_vector))
    if abs(normalizer) < NORMALIZER_RTOL * float(np.sum(np.abs(scaled_vector))):
        return None, normalizer
    return scaled_vector / normalizer, normalizer


def build_eigen_portfolios(moments: MomentEstimates) -> EigenBasis:
    """Construct every eigen-portfolio of the sample moments.

    The stored normalizer keeps the orientation under which the
    portfolio's expected return is non-negative (falling back, for a
    return within ``RETURN_SIGN_ATOL`` of zero, to making the largest
    rescaled-eigenvector entry positive).  The weights themselves are
    budget-normalized, so they are independent of that orientation.
    """
    cov = moments.covariance
    corr = correlation_from_covariance(cov)
    eigenvalues, vectors = sym_eigen(corr)
    inv_vol = 1.0 / np.sqrt(np.diagonal(cov))
    n = moments.n_assets

    weights = np.full((n, n), np.nan)
    normalizers = np.empty(n)
    expected_returns = np.full(n, np.nan)
    risks = np.full(n, np.nan)
    excluded = []
    for k in range(n):
        scaled = inv_vol * vectors[:, k]
        w, normalizer = _normalized_portfolio(scaled)
        if w is None:
            excluded.append(k)
            normalizers[k] = normalizer
            warnings.warn(
                f"eigen-portfolio {k + 1} has a near-zero weight sum and "
                "was excluded",
                NearZeroNormalizerWarning,
                stacklevel=2,
            )
            continue
        ret = float(moments.mean_returns @ w)
        if ret < -RETURN_SIGN_ATOL:
            flip = -1.0
        elif ret > RETURN_SIGN_ATOL:
            flip = 1.0
        else:
            flip = 1.0 if scaled[np.argmax(np.abs(scaled))] > 0.0 else -1.0
        weights[k] = w
        normalizers[k] = flip * normalizer
        expected_returns[k] = ret
        risks[k] = float(np.sqrt(w @ cov @ w))
    return EigenBasis(
        symbols=moments.symbols,
        eigenvalues=eigenvalues,
        weights=weights,
        normalizers=normalizers,
        expected_returns=expected_returns,
        risks=risks,
        excluded=tuple(excluded),
    )


def _inverse_volatility_weights(covariance: np.ndarray) -> np.ndarray:
    inv_vol = 1.0 / np.sqrt(np.diagonal(covariance))
    return inv_vol / float(np.sum(inv_vol))


def _dominant_candidate(shrunk: np.ndarray):
    """Best dominant-portfolio candidate of a (shrunk) covariance.

    Among eigenvectors whose eigenvalue ties the largest one (within
    ``EIGENVALUE_TIE_RTOL`` relative), picks the budget-normalized
    portfolio with the fewest non-positive weights, breaking remaining
    ties by the lexicographically smallest weight vector.  Returns None
    when no tied eigenvector can be normalized.
    """
    corr = correlation_from_covariance(shrunk)
    eigenvalues, vectors = sym_eigen(corr)
    top = eigenvalues[0]
    inv_vol = 1.0 / np.sqrt(np.diagonal(shrunk))
    best = None
    best_key = None
    for k in range(len(eigenvalues)):
        if top - eigenvalues[k] > EIGENVALUE_TIE_RTOL * abs(top):
            break
        w, _ = _normalized_portfolio(inv_vol * vectors[:, k])
        if w is None:
            continue
        key = (int(np.sum(w <= 0.0)), tuple(w))
        if best_key is None or key < best_key:
            best, best_key = w, key
    return best


@dataclass(frozen=True)
class ShrinkageResult:
    """Smallest shrinkage intensity with an all-positive dominant portfolio.

    The portfolio's return and risk are priced against the original
    covariance; the shrunk matrix only steers the weights.
    """

    shrinkage: float
    shrunk_covariance: np.ndarray
    portfolio: Portfolio


def find_dominant_portfolio(moments: MomentEstimates, step: float = 0.01) -> ShrinkageResult:
    """Scan shrinkage intensities 0, step, 2*step, ..., 1 for the first
    all-positive dominant eigen-portfolio.

    At intensity exactly 1 the correlation matrix is the identity and
    every eigenvector ties; the scan then accepts the inverse-volatility
    portfolio, which is the limiting dominant portfolio and always
    positive.  :class:`NoDominantPortfolioError` is therefore only
    reachable with invalid inputs, but is kept as a guard.
    """
    if not 0.0 < step <= 1.0:
        raise ValueError(f"step must lie in (0, 1], got {step}")
    cov = moments.covariance
    gammas = []
    k = 0
    while True:
        gamma = min(k * step, 1.0)
        gammas.append(gamma)
        if gamma >= 1.0:
            break
        k += 1
    for gamma in gammas:
        shrunk = shrink_covariance(cov, gamma)
        if gamma >= 1.0:
            candidate = _inverse_volatility_weights(shrunk)
        else:
            candidate = _dominant_candidate(shrunk)
        if candidate is None or np.any(candidate <= 0.0):
            continue
        portfolio = Portfolio(
            label="DEP",
            symbols=moments.symbols,
            weights=candidate,
            expected_return=float(moments.mean_returns @ candidate),
            risk=float(np.sqrt(candidate @ cov @ candidate)),
        )
        return ShrinkageResult(gamma, shrunk, portfolio)
    raise NoDominantPortfolioError(
        "no shrinkage intensity produced an all-positive dominant portfolio"
    )


class EigenPortfolios(BaseEstimator, TransformerMixin):
    """Decorrelating portfolio basis with a scikit-learn transformer surface.

    ``fit`` estimates moments from a daily-returns matrix and builds the
    eigen-portfolio basis; ``transform`` projects returns onto it,
    yielding one uncorrelated return stream per kept portfolio.

    Attributes
    ----------
    basis_ : EigenBasis
    eigenvalues_ : ndarray
    weights_ : ndarray of shape (n_assets, n_assets)
        Rows are budget-normalized portfolios (NaN rows were excluded).
    """

    def fit(self, X, y=None, *, symbols=None):
        X = as_float_matrix(X, "X")
        labels = tuple(symbols) if symbols is not None else column_labels(X, X.shape[1])
        if labels is None:
            labels = default_symbols(X.shape[1])
        self.moments_ = estimate_moments(ReturnTable(labels, X))
        self.basis_ = build_eigen_portfolios(self.moments_)
        self.eigenvalues_ = self.basis_.eigenvalues
        self.weights_ = self.basis_.weights
        self.n_features_in_ = X.shape[1]
        if symbols is not None:
            self.feature_names_in_ = np.asarray(labels, dtype=object)
        return self

    def transform(self, X):
        X = as_float_matrix(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} columns, expected {self.n_features_in_}"
            )
        kept = self.basis_.kept()
        return X @ self.weights_[kept].T


class DominantEigenPortfolio(BaseEstimator):
    """Long-only dominant-portfolio finder with an estimator surface.

    Parameters
    ----------
    step : float, default=0.01
        Granularity of the shrinkage-intensity scan.

    Attributes
    ----------
    shrinkage_ : float
        Smallest intensity that produced all-positive weights.
    weights_ : ndarray
    expected_return_, risk_ : float
        Priced against the unshrunk sample covariance.
    """

    def __init__(self, step: float = 0.01):
        self.step = step

    def fit(self, X, y=None, *, symbols=None):
        X = as_float_matrix(X, "X")
        labels = tuple(symbols) if symbols is not None else column_labels(X, X.shape[1])
        if labels is None:
            labels = default_symbols(X.shape[1])
        self.moments_ = estimate_moments(ReturnTable(labels, X))
        result = find_dominant_portfolio(self.moments_, step=self.step)
        self.result_ = result
        self.shrinkage_ = result.shrinkage
        self.shrunk_covariance_ = result.shrunk_covariance
        self.weights_ = result.portfolio.weights
        self.expected_return_ = result.portfolio.expected_return
        self.risk_ = result.portfolio.risk
        self.n_features_in_ = X.shape[1]
        if symbols is not None:
            self.feature_names_in_ = np.asarray(labels, dtype=object)
        return self
