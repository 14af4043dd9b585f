"""Exception and warning types shared across the package."""


class PortfolioError(Exception):
    """Base class for every error raised by this package."""


class NotPositiveDefiniteError(PortfolioError):
    """A matrix required to be positive definite failed its pivot test."""

    def __init__(self, pivot_index: int, pivot_value: float):
        self.pivot_index = pivot_index
        self.pivot_value = pivot_value
        super().__init__(
            f"matrix is not positive definite: pivot {pivot_index} "
            f"is {pivot_value:.6e}"
        )


class NoConvergenceError(PortfolioError):
    """The Jacobi eigensolver did not converge within its sweep budget."""

    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"eigendecomposition did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.6e})"
        )


class EmptySymbolListError(PortfolioError):
    """A symbol file contained no usable ticker symbols."""

    def __init__(self, path):
        self.path = path
        super().__init__(f"no ticker symbols found in {path}")


class MissingFileError(PortfolioError):
    """A per-symbol price file could not be located."""

    def __init__(self, symbol: str, searched):
        self.symbol = symbol
        self.searched = tuple(str(p) for p in searched)
        super().__init__(
            f"no price file for symbol {symbol!r} "
            f"(looked for {', '.join(self.searched)})"
        )


class InsufficientHistoryError(PortfolioError):
    """A price file holds fewer rows than the requested trading days."""

    def __init__(self, symbol: str, available: int, requested: int):
        self.symbol = symbol
        self.available = available
        self.requested = requested
        super().__init__(
            f"symbol {symbol!r} has {available} rows of history, "
            f"{requested} requested"
        )


class MalformedRowError(PortfolioError):
    """A price file row could not be parsed."""

    def __init__(self, path, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{path}:{line_number}: {reason}")


class HttpFetchError(PortfolioError):
    """A single symbol download failed; recorded in the fetch report."""

    def __init__(self, symbol: str, status=None, reason: str = ""):
        self.symbol = symbol
        self.status = status
        self.reason = reason
        detail = f"HTTP {status}" if status is not None else reason
        super().__init__(f"fetch failed for {symbol!r}: {detail}")


class DegenerateDataError(PortfolioError):
    """Return data is unusable, e.g. an asset with zero variance."""


class DegenerateFrontierError(PortfolioError):
    """All assets share one expected return; the frontier collapses."""


class NoTangencyError(PortfolioError):
    """A line through the origin never touches the frontier's upper branch."""


class RiskFreeTooHighError(PortfolioError):
    """The risk-free rate is at or above the minimum-variance return."""

    def __init__(self, risk_free_rate: float, mvp_return: float):
        self.risk_free_rate = risk_free_rate
        self.mvp_return = mvp_return
        super().__init__(
            f"risk-free rate {risk_free_rate:.6g} is not below the "
            f"minimum-variance return {mvp_return:.6g}; no market portfolio "
            "exists on the upper branch"
        )


class NegativeExcessReturnError(PortfolioError):
    """A capital-market-line query asked for a return below the risk-free rate."""


class NoDominantPortfolioError(PortfolioError):
    """No shrinkage intensity produced an all-positive dominant portfolio."""


class NearZeroNormalizerWarning(UserWarning):
    """An eigen-portfolio's weights sum to ~0 and cannot be budget-normalized."""
