"""Independent brute-force oracles used to check the closed-form code.

Everything here deliberately avoids the package's own linear algebra:
covariances come from explicit double loops and optimal portfolios from
exhaustive grid searches, so a bug in the implementation cannot hide in
its own verification.
"""

import numpy as np

GRID_LO = -2.0
GRID_HI = 3.0
GRID_STEP = 0.05
RETURN_TOL = 2.5e-3


def covariance_double_loop(returns):
    """Sample covariance via the definition, divisor rows - 1."""
    rows = len(returns)
    n = len(returns[0])
    means = [sum(returns[t][j] for t in range(rows)) / rows for j in range(n)]
    cov = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for t in range(rows):
                acc += (returns[t][i] - means[i]) * (returns[t][j] - means[j])
            cov[i][j] = acc / (rows - 1)
    return np.array(cov)


def grid_axis(lo=GRID_LO, hi=GRID_HI, step=GRID_STEP):
    """Exact-decimal grid values built from integers to avoid float drift."""
    scale = 100
    lo_i, hi_i, step_i = round(lo * scale), round(hi * scale), round(step * scale)
    return np.arange(lo_i, hi_i + 1, step_i, dtype=float) / scale


def budget_grid(n_assets, lo=GRID_LO, hi=GRID_HI, step=GRID_STEP):
    """Every grid weight vector whose coordinates sum to 1 within 1e-9.

    The last coordinate is solved from the budget and kept only when it
    lands on the grid, which enumerates exactly the feasible vectors.
    """
    axis = grid_axis(lo, hi, step)
    if n_assets == 1:
        return np.array([[1.0]])
    mesh = np.meshgrid(*([axis] * (n_assets - 1)), indexing="ij")
    head = np.stack([m.ravel() for m in mesh], axis=1)
    tail = 1.0 - head.sum(axis=1)
    idx = np.round((tail - axis[0]) / step).astype(int)
    in_range = (idx >= 0) & (idx < len(axis))
    snapped = axis[np.clip(idx, 0, len(axis) - 1)]
    keep = in_range & (np.abs(tail - snapped) < 1e-9)
    return np.column_stack([head[keep], snapped[keep]])


def min_variance_on_grid(cov, mean_returns, rho, return_tol=RETURN_TOL, grid=None):
    """Smallest variance among budget-feasible grid portfolios whose
    return is within ``return_tol`` of ``rho``; returns (variance, weights)."""
    if grid is None:
        grid = budget_grid(len(mean_returns))
    feasible = grid[np.abs(grid @ mean_returns - rho) < return_tol]
    assert feasible.size, "grid oracle found no candidate portfolios"
    variances = np.einsum("ij,jk,ik->i", feasible, cov, feasible)
    best = np.argmin(variances)
    return float(variances[best]), feasible[best]


def full_grid(n_assets, lo=GRID_LO, hi=GRID_HI, step=GRID_STEP):
    axis = grid_axis(lo, hi, step)
    mesh = np.meshgrid(*([axis] * n_assets), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def min_cml_variance_on_grid(cov, mean_returns, risk_free_rate, rho,
                             return_tol=RETURN_TOL, grid=None):
    """Grid search over risky weights with the remainder in the risk-free
    asset; the return constraint is w'(r - rf*u) + rf ~= rho."""
    if grid is None:
        grid = full_grid(len(mean_returns))
    total_return = grid @ (mean_returns - risk_free_rate) + risk_free_rate
    feasible = grid[np.abs(total_return - rho) < return_tol]
    assert feasible.size, "grid oracle found no candidate portfolios"
    variances = np.einsum("ij,jk,ik->i", feasible, cov, feasible)
    best = np.argmin(variances)
    return float(variances[best]), feasible[best]


def random_correlated_covariance(rng, n_assets, vol_lo=0.01, vol_hi=0.025):
    """Random SPD covariance at daily-return scale with exact symmetry."""
    raw = rng.normal(size=(n_assets, n_assets))
    base = raw @ raw.T + 0.5 * n_assets * np.eye(n_assets)
    scale = 1.0 / np.sqrt(np.diagonal(base))
    corr = base * np.outer(scale, scale)
    vols = rng.uniform(vol_lo, vol_hi, size=n_assets)
    cov = corr * np.outer(vols, vols)
    return (cov + cov.T) / 2.0


def random_instance(rng, n_assets, ret_lo=-0.01, ret_hi=0.02, min_spread=0.008):
    """Random (mean returns, covariance) pair with enough return spread
    for the grid oracle's tolerance analysis to hold."""
    cov = random_correlated_covariance(rng, n_assets)
    while True:
        mean = rng.uniform(ret_lo, ret_hi, size=n_assets)
        if mean.max() - mean.min() >= min_spread:
            return mean, cov
