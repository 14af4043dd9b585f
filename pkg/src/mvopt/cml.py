"""Frontier with a risk-free asset: the capital market line.

Adding an asset with return ``r_f`` and zero variance turns the
efficient frontier into a straight line in (risk, return) space,

    rho(s) = r_f + slope * s,

whose squared slope is the Gram norm of the excess-return vector under
the inverse covariance::

    excess_gram = (r - r_f u)' S^-1 (r - r_f u)
                = ones_gram * r_f**2 - 2 * cross_gram * r_f + returns_gram.

Every portfolio on the line splits its budget between one fixed risky
portfolio (the market portfolio, where the line touches the risky
frontier) and the risk-free asset.  Portfolios returned here carry the
risk-free weight as a trailing ``"RFA"`` component.
"""

from dataclasses import dataclass, replace

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import NegativeExcessReturnError, RiskFreeTooHighError
from .frontier import FrontierModel, Portfolio, build_frontier
from .linalg import spd_solve
from .market_data import MomentEstimates, ReturnTable, estimate_moments
from .validation import as_float_matrix, column_labels, default_symbols

RISK_FREE_LABEL = "RFA"


@dataclass(frozen=True)
class CmlModel:
    """Immutable description of the capital market line.

    ``risky_direction`` is ``S^-1 (r - r_f u)``; every portfolio on the
    line holds a multiple of it.
    """

    risk_free_rate: float
    excess_gram: float
    base: FrontierModel
    risky_direction: np.ndarray
    market: Portfolio
    mvp2: Portfolio

    @property
    def slope(self) -> float:
        """Return gained per unit of risk along the line."""
        return np.sqrt(self.excess_gram)

    @property
    def symbols(self) -> tuple:
        return self.base.symbols + (RISK_FREE_LABEL,)


def _line_portfolio(
    risk_free_rate: float,
    excess_gram: float,
    base: FrontierModel,
    direction: np.ndarray,
    rho: float,
) -> Portfolio:
    scale = (rho - risk_free_rate) / excess_gram
    excess = base.cross_gram - base.ones_gram * risk_free_rate
    risk_free_weight = 1.0 - (rho - risk_free_rate) * excess / excess_gram
    return Portfolio(
        label="CML",
        symbols=base.symbols + (RISK_FREE_LABEL,),
        weights=np.append(scale * direction, risk_free_weight),
        expected_return=rho,
        risk=abs(rho - risk_free_rate) / np.sqrt(excess_gram),
    )


def build_cml(model: FrontierModel, moments: MomentEstimates, risk_free_rate: float) -> CmlModel:
    """Derive the line, the market portfolio, and the minimum-risk mix.

    The market portfolio exists on the upper branch only when the
    risk-free rate is below the minimum-variance return; otherwise
    :class:`RiskFreeTooHighError` is raised.
    """
    risk_free_rate = float(risk_free_rate)
    excess = model.cross_gram - model.ones_gram * risk_free_rate
    if excess <= 1e-12:
        raise RiskFreeTooHighError(risk_free_rate, model.mvp_return)
    gram = (
        model.ones_gram * risk_free_rate**2
        - 2.0 * model.cross_gram * risk_free_rate
        + model.returns_gram
    )
    direction = spd_solve(
        moments.covariance,
        moments.mean_returns - risk_free_rate * np.ones(moments.n_assets),
    )
    market_weights = direction / excess
    market = Portfolio(
        label="MP",
        symbols=model.symbols + (RISK_FREE_LABEL,),
        weights=np.append(market_weights, 1.0 - float(np.sum(market_weights))),
        expected_return=(model.returns_gram - model.cross_gram * risk_free_rate) / excess,
        risk=np.sqrt(gram) / excess,
    )
    mvp2_return = risk_free_rate + np.sqrt(gram) * model.mvp_risk
    mvp2 = replace(
        _line_portfolio(risk_free_rate, gram, model, direction, mvp2_return),
        label="MVP2",
    )
    return CmlModel(
        risk_free_rate=risk_free_rate,
        excess_gram=gram,
        base=model,
        risky_direction=direction,
        market=market,
        mvp2=mvp2,
    )


def cml_risk(cm: CmlModel, rho: float) -> float:
    """Risk of the line's portfolio at target return ``rho``.

    Defined for ``rho >= risk_free_rate``; below it, lending beyond the
    full budget would be required and :class:`NegativeExcessReturnError`
    is raised.
    """
    rho = float(rho)
    if rho < cm.risk_free_rate:
        raise NegativeExcessReturnError(
            f"target return {rho:.6g} is below the risk-free rate "
            f"{cm.risk_free_rate:.6g}"
        )
    return (rho - cm.risk_free_rate) / cm.slope


def cml_weights(cm: CmlModel, rho: float) -> Portfolio:
    """Portfolio on the line at target return ``rho``.

    The risky part is ``((rho - r_f) / excess_gram) * risky_direction``
    and the trailing entry is the risk-free weight
    ``1 - (rho - r_f) * (cross_gram - ones_gram * r_f) / excess_gram``,
    so the total budget is 1.
    """
    return _line_portfolio(
        cm.risk_free_rate, cm.excess_gram, cm.base, cm.risky_direction, float(rho)
    )


def sample_cml(cm: CmlModel, count: int, rho_max: float) -> list:
    """``count`` portfolios with returns evenly spaced on
    [risk_free_rate, rho_max]; the first holds only the risk-free asset."""
    if count < 2:
        raise ValueError("count must be at least 2")
    if rho_max <= cm.risk_free_rate:
        raise ValueError("rho_max must exceed the risk-free rate")
    rhos = np.linspace(cm.risk_free_rate, rho_max, count)
    return [cml_weights(cm, rho) for rho in rhos]


class CapitalMarketLine(BaseEstimator):
    """Capital-market-line solver with a scikit-learn estimator surface.

    Parameters
    ----------
    risk_free_rate : float, default=0.0003
        Daily return of the risk-free asset.

    Attributes
    ----------
    frontier_ : FrontierModel
        The underlying risky frontier.
    cml_ : CmlModel
    market_ : Portfolio
        The tangency point with a zero risk-free weight.
    mvp2_ : Portfolio
        The line's portfolio at the risky frontier's minimum risk.
    """

    def __init__(self, risk_free_rate: float = 0.0003):
        self.risk_free_rate = risk_free_rate

    def fit(self, X, y=None, *, symbols=None):
        X = as_float_matrix(X, "X")
        labels = tuple(symbols) if symbols is not None else column_labels(X, X.shape[1])
        if labels is None:
            labels = default_symbols(X.shape[1])
        self.moments_ = estimate_moments(ReturnTable(labels, X))
        self.frontier_ = build_frontier(self.moments_)
        self.cml_ = build_cml(self.frontier_, self.moments_, self.risk_free_rate)
        self.market_ = self.cml_.market
        self.mvp2_ = self.cml_.mvp2
        self.n_features_in_ = X.shape[1]
        if symbols is not None:
            self.feature_names_in_ = np.asarray(labels, dtype=object)
        return self

    def weights_at(self, rho: float) -> Portfolio:
        return cml_weights(self.cml_, rho)

    def risk_at(self, rho: float) -> float:
        return cml_risk(self.cml_, rho)

    def predict(self, rho):
        """Line risk at the given target return(s)."""
        rhos = np.asarray(rho, dtype=float)
        if rhos.ndim == 0:
            return cml_risk(self.cml_, float(rhos))
        return np.array([cml_risk(self.cml_, value) for value in rhos])

    def sample(self, count: int, rho_max: float) -> list:
        return sample_cml(self.cml_, count, rho_max)
