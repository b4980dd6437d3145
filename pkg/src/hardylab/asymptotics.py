"""Boundary behaviour probes: growth rate of the mean derivative as r -> 1,
classical monotonicity and log-convexity of the unweighted means, and a
numerical membership scan.

The o(1/(1-r)) growth statement is unfalsifiable from finitely many radii,
so the probe tests a finite surrogate: |(1-r) D(r)| must decrease over the
tail of the schedule and end below half its starting value, and the fitted
log-log exponent of |D| must stay below 1 by more than twice its standard
error.  The verdict vocabulary is "consistent-with-theorem", never
"verified".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import MeanParams
from .functions import AnalyticFunction, MembershipHint, membership_hint
from .parsing import render_function
from .quadrature import QuadratureSpec, circle_mean, circle_mean_deriv

VERDICT_CONSISTENT = "consistent-with-theorem"
VERDICT_INCONSISTENT = "inconsistent"
VERDICT_INCONCLUSIVE = "inconclusive"

DEFAULT_RATE_SCHEDULE = tuple(1.0 - 2.0**-j for j in range(2, 11))
DEFAULT_SCAN_SCHEDULE = tuple(1.0 - 2.0**-j for j in range(1, 13))


class MembershipRequiredError(ValueError):
    """rate_probe is gated on membership_hint(f, p, q) = member."""


@dataclass(frozen=True)
class RateProbeResult:
    fn: str
    p: float
    q: float
    radii: tuple[float, ...]
    d_values: tuple[float, ...]
    products: tuple[float, ...]
    norm_d_values: tuple[float, ...]
    beta: float
    beta_stderr: float
    verdict: str

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly increasing")


def _slope_fit(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    """Least-squares slope and its standard error."""
    n = len(xs)
    xbar = xs.mean()
    sxx = float(np.sum((xs - xbar) ** 2))
    beta, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (beta * xs + intercept)
    if n > 2 and sxx > 0:
        sigma2 = float(np.sum(resid**2)) / (n - 2)
        stderr = math.sqrt(sigma2 / sxx)
    else:
        stderr = 0.0
    return float(beta), stderr


def rate_probe(
    f: AnalyticFunction,
    params: MeanParams,
    spec: QuadratureSpec,
    radii: tuple[float, ...] = DEFAULT_RATE_SCHEDULE,
) -> RateProbeResult:
    """Sample D(r) = d(mean^p)/dr along the schedule and judge whether
    (1-r) D(r) is consistent with decay."""
    if membership_hint(f, params.p, params.q) != MembershipHint.MEMBER:
        raise MembershipRequiredError(
            "rate probe requires membership_hint(f, p, q) = member"
        )
    used_r: list[float] = []
    d_vals: list[float] = []
    for r in radii:
        res = circle_mean_deriv(f, params, r, spec)
        if not res.converged:
            break  # truncate the schedule at the first unconverged radius
        used_r.append(r)
        d_vals.append(res.value)
    products = [(1.0 - r) * d for r, d in zip(used_r, d_vals)]
    norm_d = []
    for r, d in zip(used_r, d_vals):
        m = circle_mean(f, params, r, spec).value
        norm_d.append(d / params.p * m ** (1.0 / params.p - 1.0) if m > 0 else math.nan)

    def build(verdict: str, beta: float = math.nan, se: float = math.nan) -> RateProbeResult:
        return RateProbeResult(
            fn=render_function(f),
            p=params.p,
            q=params.q,
            radii=tuple(used_r),
            d_values=tuple(d_vals),
            products=tuple(products),
            norm_d_values=tuple(norm_d),
            beta=beta,
            beta_stderr=se,
            verdict=verdict,
        )

    if len(used_r) < 4:
        return build(VERDICT_INCONCLUSIVE)
    mags = [abs(x) for x in products]
    if max(mags) <= 1e-13:
        # derivative identically zero (constants at q = 0): trivially consistent
        return build(VERDICT_CONSISTENT, beta=0.0, se=0.0)
    tail = mags[-4:]
    decreasing = all(b < a for a, b in zip(tail, tail[1:]))
    # |(1-r) D| may pass through an early minimum where D changes sign; the
    # decay requirement applies to the eventually-decreasing suffix
    start = len(mags) - 1
    while start > 0 and mags[start - 1] > mags[start]:
        start -= 1
    halved = mags[-1] < 0.5 * mags[start]
    d_tail = [abs(d) for d in d_vals[-4:]]
    if min(d_tail) <= 0.0:
        return build(VERDICT_INCONCLUSIVE)
    xs = np.log([1.0 / (1.0 - r) for r in used_r[-4:]])
    ys = np.log(d_tail)
    beta, se = _slope_fit(xs, ys)
    if decreasing and halved and beta + 2.0 * se < 1.0:
        return build(VERDICT_CONSISTENT, beta, se)
    return build(VERDICT_INCONSISTENT, beta, se)


# --------------------------------------------------------------------------
# classical sanity checks (q = 0)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityResult:
    fn: str
    p: float
    radii: tuple[float, ...]
    values: tuple[float, ...]
    max_violation: float
    passed: bool


@dataclass(frozen=True)
class LogConvexityResult:
    fn: str
    p: float
    radii: tuple[float, ...]
    values: tuple[float, ...]
    min_second_difference: float
    passed: bool


def default_monotonicity_grid(n: int = 16) -> tuple[float, ...]:
    return tuple(0.08 + (0.93 - 0.08) * k / (n - 1) for k in range(n))


def default_geometric_grid(n: int = 16, lo: float = 0.12, hi: float = 0.93) -> tuple[float, ...]:
    ratio = (hi / lo) ** (1.0 / (n - 1))
    return tuple(lo * ratio**k for k in range(n))


def monotonicity_check(
    f: AnalyticFunction,
    p: float,
    spec: QuadratureSpec,
    radii: tuple[float, ...] | None = None,
) -> MonotonicityResult:
    """Unweighted means must be nondecreasing in r (slack 1e-10)."""
    radii = radii or default_monotonicity_grid()
    if len(radii) < 16:
        raise ValueError("monotonicity grid needs at least 16 radii")
    params = MeanParams(p, 0.0)
    vals = [circle_mean(f, params, r, spec).value ** (1.0 / p) for r in radii]
    worst = 0.0
    for a, b in zip(vals, vals[1:]):
        worst = max(worst, a - b)
    scale = max(1.0, max(vals))
    return MonotonicityResult(
        fn=render_function(f),
        p=float(p),
        radii=tuple(radii),
        values=tuple(vals),
        max_violation=float(worst),
        passed=bool(worst <= 1e-10 * scale),
    )


def logconvexity_check(
    f: AnalyticFunction,
    p: float,
    spec: QuadratureSpec,
    radii: tuple[float, ...] | None = None,
) -> LogConvexityResult:
    """log of the unweighted mean must be convex in log r: discrete second
    differences on a geometric grid stay above -1e-8."""
    radii = radii or default_geometric_grid()
    params = MeanParams(p, 0.0)
    vals = [circle_mean(f, params, r, spec).value ** (1.0 / p) for r in radii]
    if min(vals) <= 0.0:
        raise ValueError("log-convexity check needs strictly positive means on the grid")
    logs = [math.log(v) for v in vals]
    second = [logs[i + 1] - 2.0 * logs[i] + logs[i - 1] for i in range(1, len(logs) - 1)]
    worst = min(second)
    return LogConvexityResult(
        fn=render_function(f),
        p=float(p),
        radii=tuple(radii),
        values=tuple(vals),
        min_second_difference=float(worst),
        passed=bool(worst >= -1e-8),
    )


# --------------------------------------------------------------------------
# membership scan
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipScanResult:
    fn: str
    p: float
    q: float
    radii: tuple[float, ...]
    values: tuple[float, ...]
    classification: str
    sup_estimate: float


def membership_scan(
    f: AnalyticFunction,
    params: MeanParams,
    spec: QuadratureSpec,
    radii: tuple[float, ...] = DEFAULT_SCAN_SCHEDULE,
) -> MembershipScanResult:
    """Observe the weighted means along the schedule and classify the tail.

    Diverging: the last mean exceeds 10x the first.  Bounded: the running
    supremum moved by less than 1e-3 relative over the last step (covers
    means that decrease toward the boundary, where the sup is interior).
    """
    vals = [
        circle_mean(f, params, r, spec).value ** (1.0 / params.p) for r in radii
    ]
    sups = np.maximum.accumulate(vals)
    if vals[-1] > 10.0 * max(vals[0], 1e-300):
        cls = "diverging"
    elif abs(sups[-1] - sups[-2]) <= 1e-3 * max(sups[-1], 1e-300):
        cls = "bounded"
    else:
        cls = "inconclusive"
    return MembershipScanResult(
        fn=render_function(f),
        p=params.p,
        q=params.q,
        radii=tuple(radii),
        values=tuple(vals),
        classification=cls,
        sup_estimate=float(sups[-1]),
    )
