"""Tail bounds and confidence intervals shared by the experiment suites."""

from __future__ import annotations

import math

from scipy.stats import beta as _beta

from .errors import InvalidArgumentError


def hypergeo_chernoff_bound(eps: float, t: float) -> float:
    """Chernoff-style tail bound 2 exp(-eps^2 t / 3) for hypergeometric deviations.

    Valid for eps in the open interval (0, 1) and deviation scale t >= 0;
    the bound controls P(|X - E X| >= t) for eps E(X) <= t <= E(X).
    """
    if not 0 < eps < 1:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps}")
    if t < 0:
        raise InvalidArgumentError(f"t must be nonnegative, got {t}")
    return 2.0 * math.exp(-eps * eps * t / 3.0)


def clopper_pearson(hits: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    """Exact binomial confidence interval for hits out of trials."""
    if trials < 0 or not 0 <= hits <= max(trials, 0):
        raise InvalidArgumentError(f"bad counts hits={hits} trials={trials}")
    if trials == 0:
        return 0.0, 1.0
    alpha = 1.0 - confidence
    lo = 0.0 if hits == 0 else float(_beta.ppf(alpha / 2, hits, trials - hits + 1))
    hi = 1.0 if hits == trials else float(_beta.ppf(1 - alpha / 2, hits + 1, trials - hits))
    return lo, hi


def confidence_radius(hits: int, trials: int, confidence: float = 0.99) -> float:
    """Worst-side distance from the point estimate to the exact binomial interval."""
    if trials == 0:
        return 1.0
    p = hits / trials
    lo, hi = clopper_pearson(hits, trials, confidence)
    return max(p - lo, hi - p)


def wilson_interval(hits: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    p = hits / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)
